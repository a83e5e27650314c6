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

#include "gsim/oracle.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

#include "gsim/gen_stab_state.h"
#include "gsim/rng.h"
#include "gsim/shot.h"

namespace gsim {

namespace {

PauliString letter_on(size_t n, uint32_t q, char letter) {
    PauliString p(n);
    p.set_letter(q, letter);
    return p;
}

class TapeReader {
   public:
    explicit TapeReader(std::span<const TapeEntry> tape) : tape_(tape) {}

    const TapeEntry &next(TapeEntry::Kind kind) {
        if (pos_ >= tape_.size()) {
            throw InconsistencyError("tape ran out of recorded events");
        }
        const TapeEntry &e = tape_[pos_++];
        if (e.kind != kind) {
            throw InconsistencyError("tape event has the wrong kind");
        }
        return e;
    }

    bool exhausted() const { return pos_ == tape_.size(); }

   private:
    std::span<const TapeEntry> tape_;
    size_t pos_ = 0;
};

// Projects onto the forced outcome. Returns |P_dense(+1) - recorded P(+1)|.
double forced_measure(DenseState &ds, const PauliString &obs, const TapeEntry &e) {
    double plus = ds.outcome_probability(obs, +1);
    double forced = e.sign > 0 ? plus : 1 - plus;
    if (forced < 1e-12) {
        throw InconsistencyError("forced measurement outcome " + std::to_string(e.sign) + " of " + obs.str() +
                                 " has probability " + std::to_string(forced));
    }
    ds.project(obs, e.sign);
    return std::abs(plus - e.prob_plus);
}

bool record_bit(const std::vector<uint8_t> &record, const Target &rec) {
    if (rec.value == 0 || rec.value > record.size()) {
        throw InconsistencyError("feedback lookback out of range");
    }
    return record[record.size() - rec.value];
}

}  // namespace

double dense_step(DenseState &ds, const Instruction &inst, std::span<const TapeEntry> tape, std::vector<uint8_t> &record) {
    size_t n = ds.num_qubits();
    TapeReader reader(tape);
    double delta = 0;
    switch (inst.op) {
        case OpCode::CLIFFORD: {
            if (is_two_qubit(inst.gate)) {
                for (size_t k = 0; k < inst.targets.size(); k += 2) {
                    const Target &a = inst.targets[k];
                    const Target &b = inst.targets[k + 1];
                    if (a.is_qubit() && b.is_qubit()) {
                        uint32_t pair[2] = {a.value, b.value};
                        ds.apply_gate(inst.gate, pair);
                    } else {
                        const Target &rec = a.is_rec() ? a : b;
                        const Target &q = a.is_rec() ? b : a;
                        if (record_bit(record, rec)) {
                            char c = inst.gate == Gate::CX ? 'X' : inst.gate == Gate::CY ? 'Y' : 'Z';
                            ds.apply_pauli(letter_on(n, q.value, c));
                        }
                    }
                }
            } else if (inst.is_conditional()) {
                for (size_t k = 0; k < inst.targets.size(); k += 2) {
                    if (record_bit(record, inst.targets[k])) {
                        uint32_t q = inst.targets[k + 1].value;
                        ds.apply_gate(inst.gate, std::span<const uint32_t>(&q, 1));
                    }
                }
            } else {
                for (const Target &t : inst.targets) {
                    ds.apply_gate(inst.gate, std::span<const uint32_t>(&t.value, 1));
                }
            }
            break;
        }
        case OpCode::T:
        case OpCode::T_DAG:
            for (const Target &t : inst.targets) {
                ds.apply_t(t.value, inst.op == OpCode::T_DAG);
            }
            break;
        case OpCode::DEPOLARIZE1:
        case OpCode::DEPOLARIZE2:
        case OpCode::X_ERROR:
        case OpCode::Y_ERROR:
        case OpCode::Z_ERROR: {
            const TapeEntry &e = reader.next(TapeEntry::Kind::NOISE);
            PauliString err = e.error.to_pauli_string(n);
            for (size_t q = 0; q < n; q++) {
                if (err.letter(q) != '_' &&
                    std::none_of(inst.targets.begin(), inst.targets.end(), [&](const Target &t) { return t.value == q; })) {
                    throw InconsistencyError("recorded noise touches a qubit the instruction does not target");
                }
            }
            ds.apply_pauli(err);
            break;
        }
        case OpCode::M:
        case OpCode::MX:
        case OpCode::MY:
        case OpCode::MR:
        case OpCode::MRX:
        case OpCode::MRY:
        case OpCode::R:
        case OpCode::RX:
        case OpCode::RY: {
            char basis = basis_of(inst.op);
            bool records = inst.op != OpCode::R && inst.op != OpCode::RX && inst.op != OpCode::RY;
            bool resets = inst.op != OpCode::M && inst.op != OpCode::MX && inst.op != OpCode::MY;
            for (const Target &t : inst.targets) {
                const TapeEntry &e = reader.next(TapeEntry::Kind::MEASUREMENT);
                delta = std::max(delta, forced_measure(ds, letter_on(n, t.value, basis), e));
                if (records) {
                    record.push_back(static_cast<uint8_t>((e.sign < 0) != (e.flipped != t.inverted)));
                }
                if (resets && e.sign < 0) {
                    ds.apply_pauli(letter_on(n, t.value, basis == 'X' ? 'Z' : 'X'));
                }
            }
            break;
        }
        case OpCode::MPP:
            for (const auto &product : inst.mpp_products()) {
                PauliString obs(n);
                bool inverted = false;
                for (const Target &t : product) {
                    obs = pauli_mul(obs, letter_on(n, t.value, t.pauli));
                    inverted ^= t.inverted;
                }
                const TapeEntry &e = reader.next(TapeEntry::Kind::MEASUREMENT);
                delta = std::max(delta, forced_measure(ds, obs, e));
                record.push_back(static_cast<uint8_t>((e.sign < 0) != (e.flipped != inverted)));
            }
            break;
        case OpCode::REPEAT:
            throw std::invalid_argument("dense_step takes expanded instructions");
        default:
            break;
    }
    if (!reader.exhausted()) {
        throw InconsistencyError("instruction left recorded events unused");
    }
    return delta;
}

namespace {

class LockstepObserver : public ShotObserver {
   public:
    LockstepObserver(size_t n, uint64_t circuit, uint64_t shot, double tolerance, CrosscheckReport &report)
        : ds_(n), circuit_(circuit), shot_(shot), tolerance_(tolerance), report_(report) {}

    void on_noise(uint64_t ordinal, const PauliRow &error) override {
        TapeEntry e;
        e.kind = TapeEntry::Kind::NOISE;
        e.instruction = ordinal;
        e.error = error;
        tape_.push_back(e);
    }

    void on_measurement(uint64_t ordinal, int sign, double prob_plus, bool flipped) override {
        TapeEntry e;
        e.kind = TapeEntry::Kind::MEASUREMENT;
        e.instruction = ordinal;
        e.sign = sign;
        e.prob_plus = prob_plus;
        e.flipped = flipped;
        tape_.push_back(e);
    }

    void after_instruction(uint64_t ordinal, const Instruction &inst, const ShotContext &ctx) override {
        if (failed_) {
            tape_.clear();
            return;
        }
        try {
            double delta = dense_step(ds_, inst, tape_, record_);
            report_.max_prob_delta = std::max(report_.max_prob_delta, delta);
            if (delta > tolerance_) {
                fail(ordinal, "measurement probability differs by " + std::to_string(delta) + " at " + inst.str());
            }
        } catch (const std::exception &e) {
            fail(ordinal, std::string(e.what()) + " at " + inst.str());
        }
        tape_.clear();
        if (failed_) {
            return;
        }
        if (record_ != ctx.record) {
            fail(ordinal, "measurement records diverged at " + inst.str());
            return;
        }
        double overlap = overlap_magnitude(ctx.state.dense_statevector(), ds_.amplitudes());
        double infidelity = std::max(0.0, 1 - overlap);
        report_.max_infidelity = std::max(report_.max_infidelity, infidelity);
        report_.steps++;
        report_.max_entries = std::max(report_.max_entries, ctx.state.size());
        if (infidelity > tolerance_) {
            fail(ordinal, "state infidelity " + std::to_string(infidelity) + " after " + inst.str());
        }
    }

    void fail(uint64_t ordinal, std::string message) {
        failed_ = true;
        report_.failures.push_back({circuit_, shot_, ordinal, std::move(message)});
    }

    bool failed() const { return failed_; }
    uint64_t measurements() const { return record_.size(); }

   private:
    DenseState ds_;
    std::vector<TapeEntry> tape_;
    std::vector<uint8_t> record_;
    uint64_t circuit_;
    uint64_t shot_;
    double tolerance_;
    CrosscheckReport &report_;
    bool failed_ = false;
};

}  // namespace

bool CrosscheckReport::passed(double tolerance) const {
    return failures.empty() && max_infidelity <= tolerance && max_prob_delta <= tolerance;
}

void CrosscheckReport::merge(const CrosscheckReport &other) {
    for (CrosscheckFailure f : other.failures) {
        f.circuit += circuits;
        failures.push_back(std::move(f));
    }
    circuits += other.circuits;
    shots += other.shots;
    steps += other.steps;
    measurements += other.measurements;
    max_infidelity = std::max(max_infidelity, other.max_infidelity);
    max_prob_delta = std::max(max_prob_delta, other.max_prob_delta);
    max_entries = std::max(max_entries, other.max_entries);
}

std::string CrosscheckReport::to_json() const {
    nlohmann::ordered_json j;
    j["circuits"] = circuits;
    j["shots"] = shots;
    j["steps"] = steps;
    j["measurements"] = measurements;
    j["max_infidelity"] = max_infidelity;
    j["max_prob_delta"] = max_prob_delta;
    j["max_entries"] = max_entries;
    j["failures"] = nlohmann::json::array();
    for (const CrosscheckFailure &f : failures) {
        j["failures"].push_back(
            {{"circuit", f.circuit}, {"shot", f.shot}, {"instruction", f.instruction}, {"message", f.message}});
    }
    return j.dump();
}

CrosscheckReport crosscheck(const CircuitProgram &prog, uint64_t shots, uint64_t seed, double tolerance) {
    if (prog.num_qubits > kMaxDenseQubits) {
        throw std::invalid_argument("crosscheck supports at most " + std::to_string(kMaxDenseQubits) + " qubits");
    }
    CrosscheckReport report;
    report.circuits = 1;
    size_t n = std::max<size_t>(prog.num_qubits, 1);
    ShotContext ctx(prog, kDefaultEntryCapacity);
    for (uint64_t shot = 0; shot < shots; shot++) {
        ctx.reset(derive_seed(seed, shot));
        LockstepObserver obs(n, 0, shot, tolerance, report);
        ShotResult r = run_shot(prog, ctx, false, &obs);
        report.shots++;
        report.measurements += obs.measurements();
        if (!obs.failed() && r.status != ShotStatus::PRESERVED) {
            obs.fail(r.instruction_index, std::string("shot ended with status ") + std::string(status_name(r.status)) +
                                              ": " + r.diagnostic);
        }
    }
    return report;
}

std::string random_circuit_text(const RandomCircuitOptions &opts, std::mt19937_64 &rng) {
    if (opts.min_qubits < 1 || opts.max_qubits < opts.min_qubits || opts.max_qubits > kMaxQubits) {
        throw std::invalid_argument("bad random circuit qubit range");
    }
    size_t n = opts.min_qubits + rng() % (opts.max_qubits - opts.min_qubits + 1);
    std::vector<Gate> one;
    std::vector<Gate> two;
    for (Gate g : kAllGates) {
        (is_two_qubit(g) ? two : one).push_back(g);
    }
    auto qubit = [&]() { return static_cast<uint32_t>(rng() % n); };
    std::ostringstream out;
    size_t gates = opts.max_gates / 2 + rng() % (opts.max_gates / 2 + 1);
    size_t t_used = 0;
    uint64_t measured = 0;
    for (size_t k = 0; k < gates; k++) {
        int r = static_cast<int>(rng() % 100);
        if (r < 40) {
            out << gate_name(one[rng() % one.size()]) << ' ' << qubit() << '\n';
        } else if (r < 60 && n >= 2) {
            uint32_t a = qubit();
            uint32_t b = static_cast<uint32_t>((a + 1 + rng() % (n - 1)) % n);
            out << gate_name(two[rng() % two.size()]) << ' ' << a << ' ' << b << '\n';
        } else if (r < 75 && t_used < opts.max_t) {
            out << ((rng() & 1) ? "T_DAG " : "T ") << qubit() << '\n';
            t_used++;
        } else if (r < 88 && opts.measurements) {
            static constexpr const char *kMeasure[] = {"M", "MR", "MX", "MY", "R", "RX", "MPP"};
            std::string op = kMeasure[rng() % std::size(kMeasure)];
            if (op == "MPP") {
                std::vector<uint32_t> qs(n);
                for (size_t q = 0; q < n; q++) {
                    qs[q] = static_cast<uint32_t>(q);
                }
                std::shuffle(qs.begin(), qs.end(), rng);
                size_t w = 1 + rng() % std::min<size_t>(3, n);
                out << "MPP ";
                for (size_t j = 0; j < w; j++) {
                    out << (j ? "*" : "") << "XYZ"[rng() % 3] << qs[j];
                }
                out << '\n';
                measured++;
            } else {
                out << op << ' ' << ((op != "R" && op != "RX" && (rng() % 4 == 0)) ? "!" : "") << qubit() << '\n';
                measured += op[0] == 'M';
            }
        } else if (opts.feedback && measured > 0) {
            static constexpr const char *kFeedback[] = {"CX", "CY", "CZ", "X", "Z"};
            uint64_t back = 1 + rng() % std::min<uint64_t>(measured, 3);
            out << kFeedback[rng() % std::size(kFeedback)] << " rec[-" << back << "] " << qubit() << '\n';
        } else {
            out << "H " << qubit() << '\n';
        }
        if (rng() % 6 == 0) {
            out << "TICK\n";
        }
    }
    if (opts.measurements && measured > 0 && rng() % 2) {
        out << "DETECTOR rec[-1]\n";
        out << "OBSERVABLE_INCLUDE(0) rec[-1]\n";
    }
    return out.str();
}

}  // namespace gsim
