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

#ifndef GSIM_TABLEAU_H
#define GSIM_TABLEAU_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gsim/gates.h"
#include "gsim/pauli_string.h"

namespace gsim {

/// Largest register the engine supports. Basis indices are packed into one
/// 64-bit word, so every tableau row fits in a single word per component.
inline constexpr size_t kMaxQubits = 64;

/// Single-word Pauli used for tableau rows and hot-path operands.
struct PauliRow {
    uint64_t x = 0;
    uint64_t z = 0;
    uint8_t phase = 0;

    static PauliRow from(const PauliString &p);
    PauliString to_pauli_string(size_t num_qubits) const;

    /// this <- this * rhs, exact phase.
    void mul_right(const PauliRow &rhs) {
        phase = static_cast<uint8_t>((phase + rhs.phase + product_log_i(x, z, rhs.x, rhs.z)) & 3);
        x ^= rhs.x;
        z ^= rhs.z;
    }

    bool anticommutes(const PauliRow &other) const {
        return std::popcount((x & other.z) ^ (z & other.x)) & 1;
    }

    bool operator==(const PauliRow &) const = default;
};

struct IndexShift {
    /// Bit i set iff the queried Pauli anticommutes with stabilizer s_i.
    uint64_t beta = 0;

    bool is_zero() const { return beta == 0; }
    bool operator[](size_t i) const { return (beta >> i) & 1; }
};

/// Q = i^coef_log_i * d_beta * s_gamma, where d_beta and s_gamma are ordered
/// products of destabilizer and stabilizer rows.
struct PauliDecomposition {
    uint64_t beta = 0;
    uint64_t gamma = 0;
    uint8_t coef_log_i = 0;

    /// Phase xi_alpha(Q) in Q|b_alpha> = xi |b_{alpha ^ beta}>, as a power of i.
    uint8_t xi_log_i(uint64_t alpha) const {
        return static_cast<uint8_t>((coef_log_i + 2 * (std::popcount(gamma & alpha) & 1)) & 3);
    }
};

/// Stabilizer/destabilizer tableau. Row d_i anticommutes with s_i and commutes
/// with every other row; destabilizers also commute with each other, which
/// makes d_alpha independent of multiplication order.
class Tableau {
   public:
    /// Tableau of |0...0>: s_i = Z_i, d_i = X_i.
    explicit Tableau(size_t num_qubits);

    size_t num_qubits() const { return n_; }

    /// Returns to the |0...0> tableau without reallocating.
    void reset();

    const PauliRow &destab_row(size_t i) const { return rows_[i]; }
    const PauliRow &stab_row(size_t i) const { return rows_[n_ + i]; }
    PauliString destabilizer(size_t i) const { return rows_[i].to_pauli_string(n_); }
    PauliString stabilizer(size_t i) const { return rows_[n_ + i].to_pauli_string(n_); }

    /// U r U^dagger on every row. Two-qubit gates take consecutive target pairs.
    void conjugate(Gate gate, std::span<const uint32_t> targets);

    IndexShift index_shift(const PauliString &q) const;
    uint64_t beta(const PauliRow &q) const;
    PauliDecomposition decompose(const PauliRow &q) const;

    /// Non-deterministic measurement update. Requires beta(p) != 0; pivots on
    /// the lowest anticommuting stabilizer and returns its index.
    size_t pivot_measure(const PauliString &p, int outcome_sign);
    size_t pivot_measure(const PauliRow &p, int outcome_sign);

    /// Eigenvalue (+1 or -1) of p on |b_alpha>. Requires beta(p) == 0.
    int diagonal_eigenvalue(const PauliString &p, uint64_t alpha) const;

    /// Empty when every symplectic invariant holds, otherwise a description
    /// of the first violation found.
    std::string check_invariants() const;

    /// One row per line, destabilizers first.
    std::string str() const;

    bool operator==(const Tableau &) const = default;

   private:
    size_t n_;
    std::vector<PauliRow> rows_;  // [0, n) destabilizers, [n, 2n) stabilizers
};

}  // namespace gsim

#endif
