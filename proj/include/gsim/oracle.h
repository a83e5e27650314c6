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

#ifndef GSIM_ORACLE_H
#define GSIM_ORACLE_H

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsim/circuit.h"
#include "gsim/dense_state.h"
#include "gsim/tableau.h"

namespace gsim {

/// The dense replay could not follow the recorded randomness.
class InconsistencyError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// One forced random event, recorded by the generalized engine.
struct TapeEntry {
    enum class Kind : uint8_t { NOISE, MEASUREMENT };
    Kind kind = Kind::NOISE;
    uint64_t instruction = 0;
    PauliRow error;
    int sign = +1;
    double prob_plus = 1;
    bool flipped = false;
};

/// Applies one (non-REPEAT) instruction to `ds`, consuming `tape` entries in
/// order. Measurements are projected onto the forced outcome and their bits
/// appended to `record`. Returns the largest |P(+1) - tape.prob_plus|.
double dense_step(DenseState &ds, const Instruction &inst, std::span<const TapeEntry> tape, std::vector<uint8_t> &record);

struct CrosscheckFailure {
    uint64_t circuit = 0;
    uint64_t shot = 0;
    uint64_t instruction = 0;
    std::string message;
};

struct CrosscheckReport {
    uint64_t circuits = 0;
    uint64_t shots = 0;
    uint64_t steps = 0;
    uint64_t measurements = 0;
    double max_infidelity = 0;
    double max_prob_delta = 0;
    size_t max_entries = 0;
    std::vector<CrosscheckFailure> failures;

    bool passed(double tolerance = 1e-10) const;
    void merge(const CrosscheckReport &other);
    std::string to_json() const;
};

/// Runs every shot through the generalized engine and a lockstep dense replay,
/// comparing states after each instruction. Requires prog.num_qubits <= 14.
CrosscheckReport crosscheck(const CircuitProgram &prog, uint64_t shots, uint64_t seed, double tolerance = 1e-10);

struct RandomCircuitOptions {
    size_t min_qubits = 1;
    size_t max_qubits = 10;
    size_t max_gates = 40;
    size_t max_t = 8;
    bool measurements = true;
    bool feedback = true;
};

/// Noiseless random Clifford+T program text with mid-circuit M/MR/MX,
/// feedback gates and MPP.
std::string random_circuit_text(const RandomCircuitOptions &opts, std::mt19937_64 &rng);

}  // namespace gsim

#endif
