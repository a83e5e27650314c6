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

#include "gsim/shot.h"

#include <algorithm>

#include "gsim/noise.h"

namespace gsim {

namespace {

PauliRow single(uint32_t q, char letter) {
    PauliRow r;
    uint64_t bit = uint64_t{1} << q;
    if (letter == 'X' || letter == 'Y') {
        r.x = bit;
    }
    if (letter == 'Z' || letter == 'Y') {
        r.z = bit;
    }
    return r;
}

// Pauli that flips the eigenvalue of a single-qubit measurement in `basis`.
char reset_correction(char basis) {
    return basis == 'X' ? 'Z' : 'X';
}

char conditional_pauli(Gate g) {
    switch (g) {
        case Gate::CX:
        case Gate::X:
            return 'X';
        case Gate::CY:
        case Gate::Y:
            return 'Y';
        default:
            return 'Z';
    }
}

struct Stop {};

struct Executor {
    const CircuitProgram &prog;
    ShotContext &ctx;
    bool postselect;
    ShotObserver *observer;
    ShotResult result;
    uint64_t ordinal = 0;
    uint64_t detector = 0;

    void note_size() {
        result.max_entries = std::max(result.max_entries, ctx.state.size());
    }

    void apply_pauli(const PauliRow &p) {
        if (p.x == 0 && p.z == 0) {
            return;
        }
        size_t before = ctx.state.size();
        ctx.state.apply_pauli(p);
        if (observer) {
            observer->on_primitive(Primitive::PAULI, before, ctx.state.size());
        }
    }

    /// Measures `obs`, then samples flip noise. Returns the raw sign.
    int measure(const PauliRow &obs, bool has_flip, double flip_p, bool &flipped) {
        double u = ctx.rng.uniform();
        size_t before = ctx.state.size();
        MeasurementOutcome m = ctx.state.measure_pauli(obs, u);
        flipped = has_flip && ctx.rng.uniform() < flip_p;
        if (observer) {
            observer->on_measurement(ordinal, m.sign, m.prob_plus, flipped);
            observer->on_primitive(Primitive::MEASURE, before, ctx.state.size());
        }
        return m.sign;
    }

    void run_clifford(const Instruction &inst) {
        if (!inst.is_conditional()) {
            size_t before = ctx.state.size();
            std::vector<uint32_t> &qs = ctx.scratch_targets;
            qs.clear();
            for (const Target &t : inst.targets) {
                qs.push_back(t.value);
            }
            ctx.state.apply_clifford(inst.gate, qs);
            if (observer) {
                observer->on_primitive(Primitive::CLIFFORD, before, ctx.state.size());
            }
            return;
        }
        // Feedback: pairs (rec, qubit), or CZ (qubit, rec), or plain pairs.
        for (size_t k = 0; k + 1 < inst.targets.size(); k += 2) {
            const Target &a = inst.targets[k];
            const Target &b = inst.targets[k + 1];
            if (a.is_qubit() && b.is_qubit()) {
                uint32_t pair[2] = {a.value, b.value};
                size_t before = ctx.state.size();
                ctx.state.apply_clifford(inst.gate, pair);
                if (observer) {
                    observer->on_primitive(Primitive::CLIFFORD, before, ctx.state.size());
                }
                continue;
            }
            const Target &rec = a.is_rec() ? a : b;
            const Target &q = a.is_rec() ? b : a;
            if (resolve_detector(std::span<const Target>(&rec, 1), ctx.record)) {
                apply_pauli(single(q.value, conditional_pauli(inst.gate)));
            }
        }
    }

    void run_t(const Instruction &inst) {
        for (const Target &t : inst.targets) {
            size_t before = ctx.state.size();
            try {
                ctx.state.apply_t(t.value, inst.op == OpCode::T_DAG);
            } catch (const CapacityExceeded &e) {
                result.status = ShotStatus::OVERFLOW;
                result.instruction_index = ordinal;
                result.diagnostic = e.what();
                throw Stop{};
            }
            if (observer) {
                observer->on_primitive(Primitive::T, before, ctx.state.size());
            }
            note_size();
        }
    }

    void run_noise(const Instruction &inst) {
        double p = inst.args[0];
        PauliRow err;
        if (inst.op == OpCode::DEPOLARIZE2) {
            for (size_t k = 0; k + 1 < inst.targets.size(); k += 2) {
                int code = depolarize2_code(p, ctx.rng.uniform());
                xor_letter_code(err, inst.targets[k].value, code >> 2);
                xor_letter_code(err, inst.targets[k + 1].value, code & 3);
            }
        } else {
            int code = inst.op == OpCode::X_ERROR ? 1 : inst.op == OpCode::Y_ERROR ? 2 : 3;
            for (const Target &t : inst.targets) {
                double u = ctx.rng.uniform();
                if (inst.op == OpCode::DEPOLARIZE1) {
                    xor_letter_code(err, t.value, depolarize1_letter(p, u));
                } else if (u < p) {
                    xor_letter_code(err, t.value, code);
                }
            }
        }
        err.phase = 0;
        if (observer) {
            observer->on_noise(ordinal, err);
        }
        apply_pauli(err);
    }

    void run_single_measurements(const Instruction &inst) {
        char basis = basis_of(inst.op);
        bool records = is_measurement(inst.op);
        bool resets = is_reset(inst.op);
        bool has_flip = !inst.args.empty();
        double flip_p = has_flip ? inst.args[0] : 0;
        for (const Target &t : inst.targets) {
            bool flipped = false;
            int sign = measure(single(t.value, basis), has_flip, flip_p, flipped);
            if (records) {
                ctx.record.push_back(static_cast<uint8_t>((sign < 0) ^ flipped ^ t.inverted));
            }
            if (resets && sign < 0) {
                apply_pauli(single(t.value, reset_correction(basis)));
            }
        }
    }

    void run_mpp(const Instruction &inst) {
        bool has_flip = !inst.args.empty();
        double flip_p = has_flip ? inst.args[0] : 0;
        for (const auto &product : inst.mpp_products()) {
            PauliRow obs;
            bool inverted = false;
            for (const Target &t : product) {
                obs.mul_right(single(t.value, t.pauli));
                inverted ^= t.inverted;
            }
            bool flipped = false;
            int sign = measure(obs, has_flip, flip_p, flipped);
            ctx.record.push_back(static_cast<uint8_t>((sign < 0) ^ flipped ^ inverted));
        }
    }

    void run_detector(const Instruction &inst) {
        bool parity = resolve_detector(inst.targets, ctx.record);
        uint64_t index = detector++;
        if (!parity) {
            return;
        }
        result.fired_detectors++;
        if (result.first_fired_detector < 0) {
            result.first_fired_detector = static_cast<int64_t>(index);
        }
        if (postselect) {
            result.status = ShotStatus::DISCARDED;
            result.detector_index = index;
            throw Stop{};
        }
    }

    void run_block(const std::vector<Instruction> &block) {
        for (const Instruction &inst : block) {
            if (inst.op == OpCode::REPEAT) {
                for (uint64_t k = 0; k < inst.repeat_count; k++) {
                    run_block(inst.body);
                }
                continue;
            }
            try {
                switch (inst.op) {
                    case OpCode::CLIFFORD:
                        run_clifford(inst);
                        break;
                    case OpCode::T:
                    case OpCode::T_DAG:
                        run_t(inst);
                        break;
                    case OpCode::MPP:
                        run_mpp(inst);
                        break;
                    case OpCode::DETECTOR:
                        run_detector(inst);
                        break;
                    case OpCode::OBSERVABLE_INCLUDE:
                        ctx.observables[static_cast<size_t>(inst.args[0])] ^= resolve_detector(inst.targets, ctx.record);
                        break;
                    case OpCode::TICK:
                    case OpCode::QUBIT_COORDS:
                    case OpCode::SHIFT_COORDS:
                        break;
                    default:
                        if (is_noise(inst.op)) {
                            run_noise(inst);
                        } else if (basis_of(inst.op)) {
                            run_single_measurements(inst);
                        }
                        break;
                }
            } catch (const CorruptStateError &e) {
                result.status = ShotStatus::ERROR;
                result.instruction_index = ordinal;
                result.diagnostic = e.what();
                throw Stop{};
            }
            if (observer) {
                observer->after_instruction(ordinal, inst, ctx);
            }
            ordinal++;
        }
    }
};

}  // namespace

std::string_view status_name(ShotStatus status) {
    switch (status) {
        case ShotStatus::RUNNING:
            return "RUNNING";
        case ShotStatus::PRESERVED:
            return "PRESERVED";
        case ShotStatus::DISCARDED:
            return "DISCARDED";
        case ShotStatus::OVERFLOW:
            return "OVERFLOW";
        case ShotStatus::ERROR:
            return "ERROR";
    }
    return "?";
}

ShotContext::ShotContext(const CircuitProgram &prog, size_t entry_capacity)
    : state(std::max<size_t>(prog.num_qubits, 1), entry_capacity), observables(prog.num_observables) {
    if (entry_capacity < 2) {
        throw std::invalid_argument("entry capacity must be at least 2");
    }
    record.reserve(static_cast<size_t>(std::min<uint64_t>(prog.num_measurements, uint64_t{1} << 20)));
}

void ShotContext::reset(uint64_t seed) {
    state.reset();
    record.clear();
    std::fill(observables.begin(), observables.end(), 0);
    rng.seed(seed);
    status = ShotStatus::RUNNING;
}

ShotResult run_shot(const CircuitProgram &prog, ShotContext &ctx, bool postselect, ShotObserver *observer) {
    Executor ex{prog, ctx, postselect, observer, {}};
    ctx.status = ShotStatus::RUNNING;
    try {
        ex.run_block(prog.instructions);
        ex.result.status = ShotStatus::PRESERVED;
    } catch (const Stop &) {
    }
    ex.note_size();
    ctx.status = ex.result.status;
    return ex.result;
}

}  // namespace gsim
