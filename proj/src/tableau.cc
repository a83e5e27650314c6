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

#include "gsim/tableau.h"

#include <stdexcept>

namespace gsim {

PauliRow PauliRow::from(const PauliString &p) {
    if (p.num_qubits() > kMaxQubits) {
        throw std::invalid_argument("Pauli string longer than " + std::to_string(kMaxQubits) + " qubits");
    }
    PauliRow row;
    if (p.num_words() > 0) {
        row.x = p.xs()[0];
        row.z = p.zs()[0];
    }
    row.phase = p.phase_exp();
    return row;
}

PauliString PauliRow::to_pauli_string(size_t num_qubits) const {
    PauliString result(num_qubits);
    if (num_qubits > 0) {
        result.xs_mut()[0] = x;
        result.zs_mut()[0] = z;
    }
    result.set_phase_exp(phase);
    return result;
}

Tableau::Tableau(size_t num_qubits) : n_(num_qubits), rows_(2 * num_qubits) {
    if (num_qubits > kMaxQubits) {
        throw std::invalid_argument(
            "tableau of " + std::to_string(num_qubits) + " qubits exceeds the maximum of " +
            std::to_string(kMaxQubits));
    }
    reset();
}

void Tableau::reset() {
    for (PauliRow &r : rows_) {
        r = PauliRow{};
    }
    for (size_t i = 0; i < n_; i++) {
        rows_[i].x = uint64_t{1} << i;
        rows_[n_ + i].z = uint64_t{1} << i;
    }
}

namespace {

// Per-row single-qubit update on bit q. Returns true when the row sign flips.
template <typename F>
void for_each_bit(std::vector<PauliRow> &rows, uint32_t q, F &&update) {
    uint64_t m = uint64_t{1} << q;
    for (PauliRow &r : rows) {
        bool x = r.x & m;
        bool z = r.z & m;
        bool flip = update(x, z);
        r.x = (r.x & ~m) | (x ? m : 0);
        r.z = (r.z & ~m) | (z ? m : 0);
        r.phase ^= flip ? 2 : 0;
    }
}

void conjugate_single(std::vector<PauliRow> &rows, Gate gate, uint32_t q) {
    switch (gate) {
        case Gate::I:
            return;
        case Gate::X:
            for_each_bit(rows, q, [](bool &, bool &z) { return z; });
            return;
        case Gate::Y:
            for_each_bit(rows, q, [](bool &x, bool &z) { return x != z; });
            return;
        case Gate::Z:
            for_each_bit(rows, q, [](bool &x, bool &) { return x; });
            return;
        case Gate::H:
            for_each_bit(rows, q, [](bool &x, bool &z) {
                bool flip = x && z;
                std::swap(x, z);
                return flip;
            });
            return;
        case Gate::S:
            for_each_bit(rows, q, [](bool &x, bool &z) {
                bool flip = x && z;
                z ^= x;
                return flip;
            });
            return;
        case Gate::S_DAG:
            for_each_bit(rows, q, [](bool &x, bool &z) {
                bool flip = x && !z;
                z ^= x;
                return flip;
            });
            return;
        case Gate::H_XY:
            for_each_bit(rows, q, [](bool &x, bool &z) {
                bool flip = z && !x;
                z ^= x;
                return flip;
            });
            return;
        case Gate::H_NXY:
            for_each_bit(rows, q, [](bool &x, bool &z) {
                bool flip = x || z;
                z ^= x;
                return flip;
            });
            return;
        case Gate::SQRT_X:
            for_each_bit(rows, q, [](bool &x, bool &z) {
                bool flip = z && !x;
                x ^= z;
                return flip;
            });
            return;
        case Gate::SQRT_X_DAG:
            for_each_bit(rows, q, [](bool &x, bool &z) {
                bool flip = x && z;
                x ^= z;
                return flip;
            });
            return;
        default:
            throw std::logic_error("conjugate_single called with a two-qubit gate");
    }
}

void conjugate_pair(std::vector<PauliRow> &rows, Gate gate, uint32_t a, uint32_t b) {
    uint64_t ma = uint64_t{1} << a;
    uint64_t mb = uint64_t{1} << b;
    switch (gate) {
        case Gate::CX:
            for (PauliRow &r : rows) {
                bool xc = r.x & ma, zc = r.z & ma, xt = r.x & mb, zt = r.z & mb;
                if (xc && zt && (xt == zc)) {
                    r.phase ^= 2;
                }
                if (xc) {
                    r.x ^= mb;
                }
                if (zt) {
                    r.z ^= ma;
                }
            }
            return;
        case Gate::CZ:
            for (PauliRow &r : rows) {
                bool xc = r.x & ma, zc = r.z & ma, xt = r.x & mb, zt = r.z & mb;
                if (xc && xt && (zc != zt)) {
                    r.phase ^= 2;
                }
                if (xt) {
                    r.z ^= ma;
                }
                if (xc) {
                    r.z ^= mb;
                }
            }
            return;
        case Gate::CY:
            // CY = S_t CX S_t^dagger.
            conjugate_single(rows, Gate::S_DAG, b);
            conjugate_pair(rows, Gate::CX, a, b);
            conjugate_single(rows, Gate::S, b);
            return;
        case Gate::SWAP:
            for (PauliRow &r : rows) {
                bool xa = r.x & ma, za = r.z & ma, xb = r.x & mb, zb = r.z & mb;
                r.x = (r.x & ~(ma | mb)) | (xa ? mb : 0) | (xb ? ma : 0);
                r.z = (r.z & ~(ma | mb)) | (za ? mb : 0) | (zb ? ma : 0);
            }
            return;
        default:
            throw std::logic_error("conjugate_pair called with a single-qubit gate");
    }
}

}  // namespace

void Tableau::conjugate(Gate gate, std::span<const uint32_t> targets) {
    for (uint32_t t : targets) {
        if (t >= n_) {
            throw std::invalid_argument(
                std::string(gate_name(gate)) + ": target " + std::to_string(t) + " out of range for " +
                std::to_string(n_) + " qubits");
        }
    }
    if (is_two_qubit(gate)) {
        if (targets.size() % 2 != 0) {
            throw std::invalid_argument(std::string(gate_name(gate)) + " needs an even number of targets");
        }
        for (size_t k = 0; k < targets.size(); k += 2) {
            if (targets[k] == targets[k + 1]) {
                throw std::invalid_argument(
                    std::string(gate_name(gate)) + ": duplicate target " + std::to_string(targets[k]) +
                    " in a target pair");
            }
        }
        for (size_t k = 0; k < targets.size(); k += 2) {
            conjugate_pair(rows_, gate, targets[k], targets[k + 1]);
        }
    } else {
        for (uint32_t t : targets) {
            conjugate_single(rows_, gate, t);
        }
    }
}

uint64_t Tableau::beta(const PauliRow &q) const {
    uint64_t result = 0;
    for (size_t i = 0; i < n_; i++) {
        result |= uint64_t{rows_[n_ + i].anticommutes(q)} << i;
    }
    return result;
}

IndexShift Tableau::index_shift(const PauliString &q) const {
    if (q.num_qubits() != n_) {
        throw std::invalid_argument("index_shift: Pauli string length does not match the tableau");
    }
    return IndexShift{beta(PauliRow::from(q))};
}

PauliDecomposition Tableau::decompose(const PauliRow &q) const {
    PauliDecomposition d;
    PauliRow product;
    for (size_t i = 0; i < n_; i++) {
        if (rows_[n_ + i].anticommutes(q)) {
            d.beta |= uint64_t{1} << i;
        }
        if (rows_[i].anticommutes(q)) {
            d.gamma |= uint64_t{1} << i;
        }
    }
    for (size_t i = 0; i < n_; i++) {
        if ((d.beta >> i) & 1) {
            product.mul_right(rows_[i]);
        }
    }
    for (size_t i = 0; i < n_; i++) {
        if ((d.gamma >> i) & 1) {
            product.mul_right(rows_[n_ + i]);
        }
    }
    // Letters of q and of d_beta s_gamma agree because the rows span the
    // symplectic space; only the phase is left to reconcile.
    d.coef_log_i = static_cast<uint8_t>((q.phase - product.phase) & 3);
    return d;
}

size_t Tableau::pivot_measure(const PauliString &p, int outcome_sign) {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("pivot_measure: Pauli string length does not match the tableau");
    }
    return pivot_measure(PauliRow::from(p), outcome_sign);
}

size_t Tableau::pivot_measure(const PauliRow &p, int outcome_sign) {
    if (p.phase & 1) {
        throw std::invalid_argument("pivot_measure: observable is not Hermitian");
    }
    uint64_t b = beta(p);
    if (b == 0) {
        throw std::logic_error("pivot_measure called on an observable with a deterministic stabilizer outcome");
    }
    size_t pivot = static_cast<size_t>(std::countr_zero(b));
    PauliRow old_stab = rows_[n_ + pivot];
    for (size_t i = 0; i < 2 * n_; i++) {
        if (i == pivot || i == n_ + pivot) {
            continue;
        }
        if (rows_[i].anticommutes(p)) {
            rows_[i].mul_right(old_stab);
        }
    }
    rows_[pivot] = old_stab;
    PauliRow new_stab = p;
    if (outcome_sign < 0) {
        new_stab.phase ^= 2;
    }
    rows_[n_ + pivot] = new_stab;
    return pivot;
}

int Tableau::diagonal_eigenvalue(const PauliString &p, uint64_t alpha) const {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("diagonal_eigenvalue: Pauli string length does not match the tableau");
    }
    PauliDecomposition d = decompose(PauliRow::from(p));
    if (d.beta != 0) {
        throw std::invalid_argument("diagonal_eigenvalue: observable is not in the stabilizer group");
    }
    if (d.coef_log_i & 1) {
        throw std::invalid_argument("diagonal_eigenvalue: observable is not Hermitian");
    }
    return d.xi_log_i(alpha) == 0 ? +1 : -1;
}

std::string Tableau::check_invariants() const {
    for (size_t i = 0; i < 2 * n_; i++) {
        if (rows_[i].phase & 1) {
            return "row " + std::to_string(i) + " has an imaginary phase";
        }
        uint64_t mask = n_ == 64 ? ~uint64_t{0} : (uint64_t{1} << n_) - 1;
        if ((rows_[i].x | rows_[i].z) & ~mask) {
            return "row " + std::to_string(i) + " has bits outside the register";
        }
    }
    for (size_t i = 0; i < n_; i++) {
        for (size_t j = 0; j < n_; j++) {
            if (rows_[n_ + i].anticommutes(rows_[n_ + j])) {
                return "stabilizers " + std::to_string(i) + " and " + std::to_string(j) + " anticommute";
            }
            if (rows_[i].anticommutes(rows_[j])) {
                return "destabilizers " + std::to_string(i) + " and " + std::to_string(j) + " anticommute";
            }
            bool expected = i == j;
            if (rows_[i].anticommutes(rows_[n_ + j]) != expected) {
                return "destabilizer " + std::to_string(i) + " and stabilizer " + std::to_string(j) +
                       (expected ? " commute" : " anticommute");
            }
        }
    }
    return {};
}

std::string Tableau::str() const {
    std::string out;
    for (size_t i = 0; i < 2 * n_; i++) {
        out += rows_[i].to_pauli_string(n_).str();
        out += '\n';
    }
    return out;
}

}  // namespace gsim
