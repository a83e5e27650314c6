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

#include "gsim/dense_state.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gsim {

namespace {

constexpr Complex kI{0, 1};
const double kRt = 1 / std::numbers::sqrt2;

}  // namespace

std::array<Complex, 4> single_qubit_matrix(Gate gate) {
    switch (gate) {
        case Gate::I:
            return {1, 0, 0, 1};
        case Gate::X:
            return {0, 1, 1, 0};
        case Gate::Y:
            return {0, -kI, kI, 0};
        case Gate::Z:
            return {1, 0, 0, -1};
        case Gate::H:
            return {kRt, kRt, kRt, -kRt};
        case Gate::S:
            return {1, 0, 0, kI};
        case Gate::S_DAG:
            return {1, 0, 0, -kI};
        case Gate::H_XY:
            return {0, (1.0 - kI) * kRt, (1.0 + kI) * kRt, 0};
        case Gate::H_NXY:
            return {0, (1.0 + kI) * kRt, (1.0 - kI) * kRt, 0};
        case Gate::SQRT_X:
            return {(1.0 + kI) * 0.5, (1.0 - kI) * 0.5, (1.0 - kI) * 0.5, (1.0 + kI) * 0.5};
        case Gate::SQRT_X_DAG:
            return {(1.0 - kI) * 0.5, (1.0 + kI) * 0.5, (1.0 + kI) * 0.5, (1.0 - kI) * 0.5};
        default:
            throw std::invalid_argument(std::string(gate_name(gate)) + " is not a single-qubit gate");
    }
}

std::array<Complex, 16> two_qubit_matrix(Gate gate) {
    std::array<Complex, 16> m{};
    auto set = [&](int row, int col, Complex v) { m[row * 4 + col] = v; };
    switch (gate) {
        case Gate::CX:
            set(0, 0, 1);
            set(2, 2, 1);
            set(3, 1, 1);
            set(1, 3, 1);
            return m;
        case Gate::CY:
            set(0, 0, 1);
            set(2, 2, 1);
            set(3, 1, kI);
            set(1, 3, -kI);
            return m;
        case Gate::CZ:
            set(0, 0, 1);
            set(1, 1, 1);
            set(2, 2, 1);
            set(3, 3, -1);
            return m;
        case Gate::SWAP:
            set(0, 0, 1);
            set(1, 2, 1);
            set(2, 1, 1);
            set(3, 3, 1);
            return m;
        default:
            throw std::invalid_argument(std::string(gate_name(gate)) + " is not a two-qubit gate");
    }
}

DenseState::DenseState(size_t num_qubits) : n_(num_qubits), amps_(size_t{1} << num_qubits) {
    amps_[0] = 1;
}

DenseState::DenseState(std::vector<Complex> amplitudes) : n_(0), amps_(std::move(amplitudes)) {
    while ((size_t{1} << n_) < amps_.size()) {
        n_++;
    }
    if ((size_t{1} << n_) != amps_.size()) {
        throw std::invalid_argument("amplitude vector length is not a power of two");
    }
}

double DenseState::norm_squared() const {
    double t = 0;
    for (const Complex &c : amps_) {
        t += std::norm(c);
    }
    return t;
}

void DenseState::apply_1q(uint32_t q, const std::array<Complex, 4> &m) {
    size_t bit = size_t{1} << q;
    for (size_t j = 0; j < amps_.size(); j++) {
        if (j & bit) {
            continue;
        }
        Complex a0 = amps_[j];
        Complex a1 = amps_[j | bit];
        amps_[j] = m[0] * a0 + m[1] * a1;
        amps_[j | bit] = m[2] * a0 + m[3] * a1;
    }
}

void DenseState::apply_2q(uint32_t a, uint32_t b, const std::array<Complex, 16> &m) {
    size_t ba = size_t{1} << a;
    size_t bb = size_t{1} << b;
    for (size_t j = 0; j < amps_.size(); j++) {
        if (j & (ba | bb)) {
            continue;
        }
        size_t idx[4] = {j, j | ba, j | bb, j | ba | bb};
        Complex in[4];
        for (int k = 0; k < 4; k++) {
            in[k] = amps_[idx[k]];
        }
        for (int r = 0; r < 4; r++) {
            Complex acc = 0;
            for (int c = 0; c < 4; c++) {
                acc += m[r * 4 + c] * in[c];
            }
            amps_[idx[r]] = acc;
        }
    }
}

void DenseState::apply_gate(Gate gate, std::span<const uint32_t> targets) {
    for (uint32_t t : targets) {
        if (t >= n_) {
            throw std::invalid_argument("dense gate target out of range");
        }
    }
    if (is_two_qubit(gate)) {
        auto m = two_qubit_matrix(gate);
        for (size_t k = 0; k + 1 < targets.size(); k += 2) {
            apply_2q(targets[k], targets[k + 1], m);
        }
    } else {
        auto m = single_qubit_matrix(gate);
        for (uint32_t t : targets) {
            apply_1q(t, m);
        }
    }
}

void DenseState::apply_t(uint32_t q, bool dagger) {
    apply_1q(q, {1, 0, 0, std::polar(1.0, (dagger ? -1 : 1) * std::numbers::pi / 4)});
}

std::vector<Complex> DenseState::apply_pauli_copy(const PauliString &p) const {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("dense Pauli length does not match the state");
    }
    DenseState copy(amps_);
    for (size_t q = 0; q < n_; q++) {
        char c = p.letter(q);
        if (c != '_') {
            copy.apply_gate(*gate_from_name(std::string(1, c)), std::array<uint32_t, 1>{static_cast<uint32_t>(q)});
        }
    }
    Complex phase = std::pow(kI, static_cast<int>(p.phase_exp()));
    for (Complex &c : copy.amps_) {
        c *= phase;
    }
    return std::move(copy.amps_);
}

void DenseState::apply_pauli(const PauliString &p) {
    amps_ = apply_pauli_copy(p);
}

double DenseState::expectation(const PauliString &p) const {
    std::vector<Complex> moved = apply_pauli_copy(p);
    Complex acc = 0;
    for (size_t j = 0; j < amps_.size(); j++) {
        acc += std::conj(amps_[j]) * moved[j];
    }
    return acc.real();
}

double DenseState::outcome_probability(const PauliString &p, int sign) const {
    return (1 + sign * expectation(p)) / 2 / norm_squared();
}

double DenseState::project(const PauliString &p, int sign) {
    std::vector<Complex> moved = apply_pauli_copy(p);
    double before = norm_squared();
    for (size_t j = 0; j < amps_.size(); j++) {
        amps_[j] = (amps_[j] + double(sign) * moved[j]) * 0.5;
    }
    double after = norm_squared();
    double prob = after / before;
    if (after > 0) {
        double inv = 1 / std::sqrt(after);
        for (Complex &c : amps_) {
            c *= inv;
        }
    }
    return prob;
}

double overlap_magnitude(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("overlap of vectors with different lengths");
    }
    Complex acc = 0;
    for (size_t j = 0; j < a.size(); j++) {
        acc += std::conj(a[j]) * b[j];
    }
    return std::abs(acc);
}

}  // namespace gsim
