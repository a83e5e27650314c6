// Copyright 2026 The gsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gsim/noise.h"

#include <set>
#include <stdexcept>
#include <string>

namespace gsim {

NoiseOp NoiseOp::from_instruction(const Instruction &inst) {
    NoiseOp op;
    switch (inst.op) {
        case OpCode::DEPOLARIZE1:
            op.kind = NoiseKind::DEPOLARIZE1;
            break;
        case OpCode::DEPOLARIZE2:
            op.kind = NoiseKind::DEPOLARIZE2;
            break;
        case OpCode::X_ERROR:
            op.kind = NoiseKind::X_ERROR;
            break;
        case OpCode::Y_ERROR:
            op.kind = NoiseKind::Y_ERROR;
            break;
        case OpCode::Z_ERROR:
            op.kind = NoiseKind::Z_ERROR;
            break;
        default:
            throw std::invalid_argument("not a noise instruction: " + inst.str());
    }
    if (inst.args.size() != 1) {
        throw std::invalid_argument("noise instruction needs one probability: " + inst.str());
    }
    op.p = inst.args[0];
    for (const Target &t : inst.targets) {
        op.targets.push_back(t.value);
    }
    op.validate();
    return op;
}

void NoiseOp::validate() const {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("noise strength must be in [0, 1], got " + std::to_string(p));
    }
    if (kind == NoiseKind::DEPOLARIZE2) {
        if (targets.empty() || targets.size() % 2) {
            throw std::invalid_argument("DEPOLARIZE2 needs qubit pairs");
        }
        for (size_t k = 0; k < targets.size(); k += 2) {
            if (targets[k] == targets[k + 1]) {
                throw std::invalid_argument("DEPOLARIZE2 pair acts twice on one qubit");
            }
        }
    } else if (targets.empty()) {
        throw std::invalid_argument("noise op needs at least one target");
    }
}

size_t NoiseOp::draws() const {
    return kind == NoiseKind::DEPOLARIZE2 ? targets.size() / 2 : targets.size();
}

PauliRow sample_noise_row(const NoiseOp &op, std::span<const double> u) {
    if (u.size() < op.draws()) {
        throw std::invalid_argument("not enough random numbers for noise sample");
    }
    for (uint32_t q : op.targets) {
        if (q >= kMaxQubits) {
            throw std::invalid_argument("noise target out of range for single-word rows");
        }
    }
    PauliRow row;
    switch (op.kind) {
        case NoiseKind::DEPOLARIZE1:
            for (size_t k = 0; k < op.targets.size(); k++) {
                xor_letter_code(row, op.targets[k], depolarize1_letter(op.p, u[k]));
            }
            break;
        case NoiseKind::DEPOLARIZE2:
            for (size_t k = 0; k < op.targets.size(); k += 2) {
                int code = depolarize2_code(op.p, u[k / 2]);
                xor_letter_code(row, op.targets[k], code >> 2);
                xor_letter_code(row, op.targets[k + 1], code & 3);
            }
            break;
        case NoiseKind::X_ERROR:
        case NoiseKind::Y_ERROR:
        case NoiseKind::Z_ERROR: {
            int code = op.kind == NoiseKind::X_ERROR ? 1 : op.kind == NoiseKind::Y_ERROR ? 2 : 3;
            for (size_t k = 0; k < op.targets.size(); k++) {
                if (u[k] < op.p) {
                    xor_letter_code(row, op.targets[k], code);
                }
            }
            break;
        }
    }
    // Repeated targets can multiply letters; keep the Hermitian representative.
    row.phase = 0;
    return row;
}

PauliString sample_noise(const NoiseOp &op, std::span<const double> u, size_t num_qubits) {
    return sample_noise_row(op, u).to_pauli_string(num_qubits);
}

namespace {

struct NoiseModelBuilder {
    double p;
    std::set<uint32_t> declared;

    void collect(const std::vector<Instruction> &block) {
        for (const Instruction &inst : block) {
            if (inst.op == OpCode::REPEAT) {
                collect(inst.body);
                continue;
            }
            for (const Target &t : inst.targets) {
                if (t.kind == Target::Kind::QUBIT || t.kind == Target::Kind::PAULI) {
                    declared.insert(t.value);
                }
            }
        }
    }

    Instruction noise(OpCode op, std::vector<Target> targets) const {
        Instruction n;
        n.op = op;
        n.args = {p};
        for (Target &t : targets) {
            t.inverted = false;
        }
        n.targets = std::move(targets);
        return n;
    }

    static OpCode flip_for(OpCode op) {
        return basis_of(op) == 'X' ? OpCode::Z_ERROR : OpCode::X_ERROR;
    }

    void emit(const std::vector<Instruction> &in, std::vector<Instruction> &out) {
        std::set<uint32_t> active;
        bool layer_has_ops = false;
        for (const Instruction &inst : in) {
            switch (inst.op) {
                case OpCode::CLIFFORD: {
                    out.push_back(inst);
                    std::vector<Target> quantum;
                    if (is_two_qubit(inst.gate)) {
                        for (size_t k = 0; k < inst.targets.size(); k += 2) {
                            if (inst.targets[k].is_qubit() && inst.targets[k + 1].is_qubit()) {
                                quantum.push_back(inst.targets[k]);
                                quantum.push_back(inst.targets[k + 1]);
                            }
                        }
                    } else if (!inst.is_conditional()) {
                        quantum = inst.targets;
                    }
                    if (!quantum.empty()) {
                        for (const Target &t : quantum) {
                            active.insert(t.value);
                        }
                        layer_has_ops = true;
                        out.push_back(noise(is_two_qubit(inst.gate) ? OpCode::DEPOLARIZE2 : OpCode::DEPOLARIZE1, quantum));
                    }
                    break;
                }
                case OpCode::T:
                case OpCode::T_DAG:
                    out.push_back(inst);
                    if (!inst.targets.empty()) {
                        out.push_back(noise(OpCode::DEPOLARIZE1, inst.targets));
                    }
                    break;
                case OpCode::M:
                case OpCode::MX:
                case OpCode::MY:
                    if (!inst.targets.empty()) {
                        out.push_back(noise(flip_for(inst.op), inst.targets));
                    }
                    out.push_back(inst);
                    break;
                case OpCode::MR:
                case OpCode::MRX:
                case OpCode::MRY:
                    if (!inst.targets.empty()) {
                        out.push_back(noise(flip_for(inst.op), inst.targets));
                    }
                    out.push_back(inst);
                    if (!inst.targets.empty()) {
                        out.push_back(noise(flip_for(inst.op), inst.targets));
                    }
                    break;
                case OpCode::R:
                case OpCode::RX:
                case OpCode::RY:
                    out.push_back(inst);
                    if (!inst.targets.empty()) {
                        out.push_back(noise(flip_for(inst.op), inst.targets));
                    }
                    break;
                case OpCode::MPP: {
                    Instruction m = inst;
                    m.args = {p};
                    out.push_back(m);
                    break;
                }
                case OpCode::TICK:
                    if (layer_has_ops) {
                        std::vector<Target> idle;
                        for (uint32_t q : declared) {
                            if (!active.contains(q)) {
                                idle.push_back(Target::qubit(q));
                            }
                        }
                        if (!idle.empty()) {
                            out.push_back(noise(OpCode::DEPOLARIZE1, idle));
                        }
                    }
                    out.push_back(inst);
                    active.clear();
                    layer_has_ops = false;
                    break;
                case OpCode::REPEAT: {
                    Instruction r = inst;
                    r.body.clear();
                    emit(inst.body, r.body);
                    out.push_back(std::move(r));
                    break;
                }
                default:
                    out.push_back(inst);
                    break;
            }
            if (inst.op == OpCode::T || inst.op == OpCode::T_DAG || is_measurement(inst.op) || is_reset(inst.op)) {
                for (const Target &t : inst.targets) {
                    active.insert(t.value);
                }
                layer_has_ops |= !inst.targets.empty();
            }
        }
    }
};

}  // namespace

CircuitProgram apply_noise_model(const CircuitProgram &prog, double p) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("noise strength must be in [0, 1]");
    }
    if (prog.has_noise()) {
        throw std::invalid_argument("program already contains noise; refusing to add a second noise model");
    }
    if (p == 0) {
        return prog;
    }
    NoiseModelBuilder b{p, {}};
    b.collect(prog.instructions);
    CircuitProgram out;
    b.emit(prog.instructions, out.instructions);
    finalize_program(out);
    return out;
}

}  // namespace gsim
