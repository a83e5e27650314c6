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

#ifndef GSIM_DENSE_STATE_H
#define GSIM_DENSE_STATE_H

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "gsim/gates.h"
#include "gsim/pauli_string.h"

namespace gsim {

using Complex = std::complex<double>;

/// Row-major 2x2 unitary of a single-qubit Clifford gate.
std::array<Complex, 4> single_qubit_matrix(Gate gate);
/// Row-major 4x4 unitary of a two-qubit gate on local index bit0 | bit1 << 1,
/// where bit0 belongs to the first target (the control).
std::array<Complex, 16> two_qubit_matrix(Gate gate);

/// Reference state-vector simulator. Qubit k is bit k of the amplitude index.
/// Everything here is computed from explicit matrices, independently of the
/// tableau machinery.
class DenseState {
   public:
    explicit DenseState(size_t num_qubits);
    explicit DenseState(std::vector<Complex> amplitudes);

    size_t num_qubits() const { return n_; }
    std::span<const Complex> amplitudes() const { return amps_; }
    double norm_squared() const;

    void apply_1q(uint32_t q, const std::array<Complex, 4> &m);
    void apply_2q(uint32_t a, uint32_t b, const std::array<Complex, 16> &m);
    void apply_gate(Gate gate, std::span<const uint32_t> targets);
    /// diag(1, e^{+-i pi/4}).
    void apply_t(uint32_t q, bool dagger);
    void apply_pauli(const PauliString &p);

    /// <psi|P|psi> for Hermitian P.
    double expectation(const PauliString &p) const;
    /// Probability that measuring P yields `sign`.
    double outcome_probability(const PauliString &p, int sign) const;
    /// Projects onto the `sign` eigenspace of P and renormalizes. Returns the
    /// pre-projection probability of that outcome.
    double project(const PauliString &p, int sign);

   private:
    std::vector<Complex> apply_pauli_copy(const PauliString &p) const;

    size_t n_;
    std::vector<Complex> amps_;
};

/// |<a|b>|.
double overlap_magnitude(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace gsim

#endif
