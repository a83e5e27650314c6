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

#ifndef GSIM_NOISE_H
#define GSIM_NOISE_H

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "gsim/circuit.h"
#include "gsim/pauli_string.h"
#include "gsim/tableau.h"

namespace gsim {

enum class NoiseKind : uint8_t { DEPOLARIZE1, DEPOLARIZE2, X_ERROR, Y_ERROR, Z_ERROR };

struct NoiseOp {
    NoiseKind kind = NoiseKind::DEPOLARIZE1;
    double p = 0;
    /// DEPOLARIZE2 takes consecutive pairs.
    std::vector<uint32_t> targets;

    /// Throws std::invalid_argument when `inst` is not a noise instruction.
    static NoiseOp from_instruction(const Instruction &inst);
    /// Throws std::invalid_argument on a bad strength or target list.
    void validate() const;
    /// Uniform draws consumed by one sample, whether or not an error fires.
    size_t draws() const;
};

/// Letter codes: 0 = I, 1 = X, 2 = Y, 3 = Z.
inline int depolarize1_letter(double p, double u) {
    if (!(u < p)) {
        return 0;
    }
    return 1 + std::min(static_cast<int>(u * 3 / p), 2);
}

/// 1..15 on a hit (first qubit letter in bits 2-3, second in bits 0-1), else 0.
inline int depolarize2_code(double p, double u) {
    if (!(u < p)) {
        return 0;
    }
    return 1 + std::min(static_cast<int>(u * 15 / p), 14);
}

inline void xor_letter_code(PauliRow &row, uint32_t q, int code) {
    uint64_t bit = uint64_t{1} << q;
    if (code == 1 || code == 2) {
        row.x ^= bit;
    }
    if (code == 2 || code == 3) {
        row.z ^= bit;
    }
}

/// Samples the Pauli error of `op` from op.draws() uniforms in [0, 1).
/// Requires targets < kMaxQubits.
PauliRow sample_noise_row(const NoiseOp &op, std::span<const double> u);
PauliString sample_noise(const NoiseOp &op, std::span<const double> u, size_t num_qubits);

/// Uniform depolarizing model of strength p. Throws std::invalid_argument if
/// prog already contains noise or p is outside [0, 1].
CircuitProgram apply_noise_model(const CircuitProgram &prog, double p);

}  // namespace gsim

#endif
