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

#include "gsim/gen_stab_state.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

namespace gsim {

namespace {

#ifdef GSIM_MUTATE_T_PHASE
// Fault injection for the mutation test build: corrupts the branch phase of T.
constexpr unsigned kTPhaseFault = 2;
#else
constexpr unsigned kTPhaseFault = 0;
#endif

Complex times_i_pow(Complex c, unsigned k) {
    switch (k & 3) {
        case 0:
            return c;
        case 1:
            return {-c.imag(), c.real()};
        case 2:
            return -c;
        default:
            return {c.imag(), -c.real()};
    }
}

// Applies the Pauli row to a dense vector in place (through a temporary).
void apply_row_dense(const PauliRow &row, std::vector<Complex> &vec) {
    std::vector<Complex> out(vec.size());
    unsigned base = static_cast<unsigned>(row.phase + std::popcount(row.x & row.z));
    for (uint64_t j = 0; j < vec.size(); j++) {
        unsigned k = base + 2 * (std::popcount(j & row.z) & 1);
        out[j ^ row.x] = times_i_pow(vec[j], k);
    }
    vec.swap(out);
}

}  // namespace

void AmplitudeAccumulator::reserve(size_t max_entries) {
    size_t slots = 4;
    while (slots < 2 * max_entries) {
        slots <<= 1;
    }
    keys_.reserve(max_entries);
    lane_a_.reserve(max_entries);
    lane_b_.reserve(max_entries);
    table_pos_.reserve(max_entries);
    table_.assign(slots, 0);
    mask_ = slots - 1;
    shift_ = 64 - static_cast<unsigned>(std::countr_zero(slots));
}

void AmplitudeAccumulator::clear() {
    for (uint32_t pos : table_pos_) {
        table_[pos] = 0;
    }
    keys_.clear();
    lane_a_.clear();
    lane_b_.clear();
    table_pos_.clear();
}

size_t AmplitudeAccumulator::locate(uint64_t key) {
    uint64_t slot = (key * 0x9E3779B97F4A7C15ULL) >> shift_;
    while (true) {
        uint32_t v = table_[slot];
        if (v == 0) {
            table_[slot] = static_cast<uint32_t>(keys_.size() + 1);
            table_pos_.push_back(static_cast<uint32_t>(slot));
            keys_.push_back(key);
            lane_a_.emplace_back();
            lane_b_.emplace_back();
            return keys_.size() - 1;
        }
        if (keys_[v - 1] == key) {
            return v - 1;
        }
        slot = (slot + 1) & mask_;
    }
}

GenStabState::GenStabState(size_t num_qubits, size_t capacity) : tableau_(num_qubits), capacity_(capacity) {
    if (num_qubits == 0) {
        throw std::invalid_argument("a state needs at least one qubit");
    }
    if (capacity < 2) {
        throw std::invalid_argument("entry capacity must be at least 2");
    }
    entries_.reserve(capacity);
    scratch_.reserve(2 * capacity);
    entries_.push_back({0, 1.0});
}

void GenStabState::reset() {
    tableau_.reset();
    entries_.clear();
    entries_.push_back({0, 1.0});
}

std::vector<Amplitude> GenStabState::sorted_entries() const {
    std::vector<Amplitude> result(entries_.begin(), entries_.end());
    std::sort(result.begin(), result.end(), [](const Amplitude &a, const Amplitude &b) { return a.index < b.index; });
    return result;
}

double GenStabState::norm_squared() const {
    double total = 0;
    for (const Amplitude &e : entries_) {
        total += std::norm(e.value);
    }
    return total;
}

void GenStabState::apply_clifford(Gate gate, std::span<const uint32_t> targets) {
    tableau_.conjugate(gate, targets);
}

void GenStabState::apply_pauli(const PauliString &e) {
    if (e.num_qubits() != num_qubits()) {
        throw std::invalid_argument("apply_pauli: Pauli string length does not match the state");
    }
    apply_pauli(PauliRow::from(e));
}

void GenStabState::apply_pauli(const PauliRow &e) {
    if (e.phase & 1) {
        throw std::invalid_argument("apply_pauli: Pauli is not Hermitian");
    }
    PauliDecomposition d = tableau_.decompose(e);
    for (Amplitude &a : entries_) {
        a.value = times_i_pow(a.value, d.xi_log_i(a.index));
        a.index ^= d.beta;
    }
}

MeasurementOutcome GenStabState::measure_pauli(const PauliString &p, double u) {
    if (p.num_qubits() != num_qubits()) {
        throw std::invalid_argument("measure_pauli: Pauli string length does not match the state");
    }
    return measure_pauli(PauliRow::from(p), u);
}

MeasurementOutcome GenStabState::measure_pauli(const PauliRow &p, double u) {
    if (p.phase & 1) {
        throw std::invalid_argument("measure_pauli: observable is not Hermitian");
    }
    PauliDecomposition d = tableau_.decompose(p);
    MeasurementOutcome result;

    if (d.beta == 0) {
        // The observable is diagonal in the current basis.
        double plus = 0;
        double minus = 0;
        for (const Amplitude &a : entries_) {
            if (d.xi_log_i(a.index) == 0) {
                plus += std::norm(a.value);
            } else {
                minus += std::norm(a.value);
            }
        }
        double total = plus + minus;
        if (plus < 1e-12 && minus < 1e-12) {
            throw CorruptStateError("measure_pauli: both outcomes have vanishing probability");
        }
        result.prob_plus = plus / total;
        result.sign = u < result.prob_plus ? +1 : -1;
        result.probability = result.sign > 0 ? result.prob_plus : 1 - result.prob_plus;
        uint8_t keep = result.sign > 0 ? 0 : 2;
        double scale = 1 / std::sqrt(result.sign > 0 ? plus : minus);
        size_t w = 0;
        for (const Amplitude &a : entries_) {
            if (d.xi_log_i(a.index) == keep) {
                Complex v = a.value * scale;
                if (std::abs(v) >= kPruneThreshold) {
                    entries_[w++] = {a.index, v};
                }
            }
        }
        entries_.resize(w);
        return result;
    }

    // Pivot case. Each pair {alpha, alpha ^ beta} projects onto the single
    // post-pivot basis vector indexed by the member whose pivot bit is clear.
    size_t pivot = static_cast<size_t>(std::countr_zero(d.beta));
    uint64_t pivot_bit = uint64_t{1} << pivot;
    const double inv_sqrt2 = 1 / std::numbers::sqrt2;
    scratch_.clear();
    auto &lane_plus = scratch_.lane_a();
    auto &lane_minus = scratch_.lane_b();
    for (const Amplitude &a : entries_) {
        if (a.index & pivot_bit) {
            size_t k = scratch_.locate(a.index ^ d.beta);
            Complex shifted = times_i_pow(a.value, d.xi_log_i(a.index)) * inv_sqrt2;
            lane_plus[k] += shifted;
            lane_minus[k] -= shifted;
        } else {
            size_t k = scratch_.locate(a.index);
            lane_plus[k] += a.value * inv_sqrt2;
            lane_minus[k] += a.value * inv_sqrt2;
        }
    }
    double plus = 0;
    double minus = 0;
    for (size_t k = 0; k < scratch_.size(); k++) {
        plus += std::norm(lane_plus[k]);
        minus += std::norm(lane_minus[k]);
    }
    if (plus < 1e-12 && minus < 1e-12) {
        throw CorruptStateError("measure_pauli: both outcomes have vanishing probability");
    }
    double total = plus + minus;
    result.pivoted = true;
    result.prob_plus = plus / total;
    result.sign = u < result.prob_plus ? +1 : -1;
    result.probability = result.sign > 0 ? result.prob_plus : 1 - result.prob_plus;
    commit(result.sign > 0 ? lane_plus : lane_minus, 1 / std::sqrt(result.sign > 0 ? plus : minus));
    tableau_.pivot_measure(p, result.sign);
    return result;
}

void GenStabState::apply_t(uint32_t q, bool dagger) {
    if (q >= num_qubits()) {
        throw std::invalid_argument("T: qubit " + std::to_string(q) + " out of range");
    }
    // T = e^{i pi/8} (cos(pi/8) I - i sin(pi/8) Z); T^dagger is the conjugate.
    constexpr double kAngle = std::numbers::pi / 8;
    Complex global = std::polar(1.0, dagger ? -kAngle : kAngle);
    Complex a = global * std::cos(kAngle);
    Complex b = global * Complex(0, dagger ? std::sin(kAngle) : -std::sin(kAngle));

    PauliRow zq{0, uint64_t{1} << q, 0};
    PauliDecomposition d = tableau_.decompose(zq);
    if (d.beta == 0) {
        for (Amplitude &e : entries_) {
            e.value *= d.xi_log_i(e.index) == 0 ? a + b : a - b;
        }
        return;
    }
    scratch_.clear();
    auto &lane = scratch_.lane_a();
    for (const Amplitude &e : entries_) {
        size_t k = scratch_.locate(e.index);
        lane[k] += a * e.value;
        size_t k2 = scratch_.locate(e.index ^ d.beta);
        lane[k2] += b * times_i_pow(e.value, d.xi_log_i(e.index) + kTPhaseFault);
    }
    size_t survivors = 0;
    for (size_t k = 0; k < scratch_.size(); k++) {
        survivors += std::abs(lane[k]) >= kPruneThreshold;
    }
    if (survivors > capacity_) {
        throw CapacityExceeded(
            "T on qubit " + std::to_string(q) + " needs " + std::to_string(survivors) + " entries; capacity is " +
            std::to_string(capacity_));
    }
    commit(lane, 1);
}

void GenStabState::commit(std::vector<Complex> &lane, double scale) {
    entries_.clear();
    auto &keys = scratch_.keys();
    for (size_t k = 0; k < keys.size(); k++) {
        Complex v = lane[k] * scale;
        if (std::abs(v) >= kPruneThreshold) {
            entries_.push_back({keys[k], v});
        }
    }
    if (entries_.empty()) {
        throw CorruptStateError("every amplitude cancelled");
    }
}

CosetAnalysis GenStabState::coset_bound(std::span<const uint32_t> support) const {
    size_t n = num_qubits();
    if (support.empty()) {
        throw std::invalid_argument("coset_bound: support must be non-empty");
    }
    uint64_t in_q = 0;
    for (uint32_t q : support) {
        if (q >= n) {
            throw std::invalid_argument("coset_bound: qubit " + std::to_string(q) + " out of range");
        }
        in_q |= uint64_t{1} << q;
    }
    CosetAnalysis result;
    for (size_t q = 0; q < n; q++) {
        if ((in_q >> q) & 1) {
            result.support.push_back(static_cast<uint32_t>(q));
        }
    }

    // Stabilizer products that are Z-type and vanish outside Q form the kernel
    // of c -> (x(c), z(c) restricted to the complement of Q). Generators are
    // independent, so r_Q = n - rank of that map.
    struct Row {
        uint64_t x;
        uint64_t z_out;
    };
    std::vector<Row> rows;
    for (size_t i = 0; i < n; i++) {
        const PauliRow &s = tableau_.stab_row(i);
        rows.push_back({s.x, s.z & ~in_q});
    }
    size_t rank = 0;
    for (int word = 0; word < 2; word++) {
        for (size_t bit = 0; bit < 64; bit++) {
            uint64_t m = uint64_t{1} << bit;
            auto has = [&](const Row &r) { return ((word == 0 ? r.x : r.z_out) & m) != 0; };
            size_t p = rank;
            while (p < rows.size() && !has(rows[p])) {
                p++;
            }
            if (p == rows.size()) {
                continue;
            }
            std::swap(rows[rank], rows[p]);
            for (size_t r = 0; r < rows.size(); r++) {
                if (r != rank && has(rows[r])) {
                    rows[r].x ^= rows[rank].x;
                    rows[r].z_out ^= rows[rank].z_out;
                }
            }
            rank++;
        }
    }
    result.r_q = n - rank;
    result.log2_bound = result.support.size() - result.r_q;
    return result;
}

std::vector<Complex> GenStabState::dense_statevector() const {
    size_t n = num_qubits();
    if (n > kMaxDenseQubits) {
        throw std::invalid_argument(
            "dense_statevector: " + std::to_string(n) + " qubits exceeds the limit of " +
            std::to_string(kMaxDenseQubits));
    }
    size_t dim = size_t{1} << n;

    // Project a generic vector onto the stabilizer state. Quasi-random phases
    // make an exactly vanishing overlap implausible; basis vectors are the
    // fallback.
    auto project = [&](std::vector<Complex> vec) {
        for (size_t i = 0; i < n; i++) {
            std::vector<Complex> moved = vec;
            apply_row_dense(tableau_.stab_row(i), moved);
            for (size_t j = 0; j < dim; j++) {
                vec[j] = (vec[j] + moved[j]) * 0.5;
            }
        }
        return vec;
    };
    auto norm2 = [](const std::vector<Complex> &v) {
        double t = 0;
        for (const Complex &c : v) {
            t += std::norm(c);
        }
        return t;
    };
    std::vector<Complex> start(dim);
    for (size_t j = 0; j < dim; j++) {
        start[j] = std::polar(1.0, 2 * std::numbers::pi * std::fmod(0.6180339887498949 * double(j + 1), 1.0));
    }
    std::vector<Complex> psi = project(start);
    double nn = norm2(psi);
    for (size_t j = 0; nn < 1e-3 / double(dim) && j < dim; j++) {
        std::vector<Complex> basis(dim);
        basis[j] = 1;
        psi = project(basis);
        nn = norm2(psi);
    }
    double inv = 1 / std::sqrt(nn);
    for (Complex &c : psi) {
        c *= inv;
    }

    std::vector<Complex> result(dim);
    for (const Amplitude &e : entries_) {
        PauliRow d_alpha;
        for (size_t k = 0; k < n; k++) {
            if ((e.index >> k) & 1) {
                d_alpha.mul_right(tableau_.destab_row(k));
            }
        }
        std::vector<Complex> term = psi;
        apply_row_dense(d_alpha, term);
        for (size_t j = 0; j < dim; j++) {
            result[j] += e.value * term[j];
        }
    }
    return result;
}

std::string GenStabState::str() const {
    std::ostringstream out;
    out << tableau_.str();
    for (const Amplitude &e : sorted_entries()) {
        out << e.index << ": " << e.value.real() << (e.value.imag() < 0 ? "" : "+") << e.value.imag() << "i\n";
    }
    return out.str();
}

}  // namespace gsim
