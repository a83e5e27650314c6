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

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "gsim/dense_state.h"
#include "test_util.h"

using namespace gsim;
using namespace gsim::testing;

namespace {

void h(GenStabState &s, uint32_t q) {
    s.apply_clifford(Gate::H, std::span<const uint32_t>(&q, 1));
}

void cx(GenStabState &s, uint32_t a, uint32_t b) {
    uint32_t t[2] = {a, b};
    s.apply_clifford(Gate::CX, t);
}

// |+_L> of a CSS code whose X and Z checks share the same supports, with
// logical X on every qubit.
void encode_plus(GenStabState &s, const std::vector<std::vector<uint32_t>> &faces) {
    size_t n = s.num_qubits();
    std::vector<std::vector<uint8_t>> rows;
    for (const auto &f : faces) {
        std::vector<uint8_t> r(n);
        for (uint32_t q : f) {
            r[q] = 1;
        }
        rows.push_back(r);
    }
    rows.push_back(std::vector<uint8_t>(n, 1));
    size_t rank = 0;
    std::vector<size_t> pivots;
    for (size_t c = 0; c < n && rank < rows.size(); c++) {
        size_t k = rank;
        while (k < rows.size() && !rows[k][c]) {
            k++;
        }
        if (k == rows.size()) {
            continue;
        }
        std::swap(rows[k], rows[rank]);
        for (size_t j = 0; j < rows.size(); j++) {
            if (j != rank && rows[j][c]) {
                for (size_t q = 0; q < n; q++) {
                    rows[j][q] ^= rows[rank][q];
                }
            }
        }
        pivots.push_back(c);
        rank++;
    }
    for (size_t k = 0; k < rank; k++) {
        h(s, pivots[k]);
    }
    for (size_t k = 0; k < rank; k++) {
        for (size_t q = 0; q < n; q++) {
            if (q != pivots[k] && rows[k][q]) {
                cx(s, pivots[k], q);
            }
        }
    }
}

const std::vector<std::vector<uint32_t>> kSteaneFaces{{1, 2, 3, 4}, {0, 1, 3, 5}, {3, 4, 5, 6}};
const std::vector<std::vector<uint32_t>> kColorD5Faces{
    {1, 2, 5, 6},         {3, 4, 7, 8},         {0, 1, 5, 9},     {2, 3, 6, 7, 10, 11}, {5, 6, 9, 10, 12, 13},
    {7, 8, 11, 14}, {10, 11, 13, 14, 15, 16}, {12, 13, 15, 17}, {15, 16, 17, 18}};

PauliString face_check(size_t n, const std::vector<uint32_t> &face, char letter) {
    PauliString p(n);
    for (uint32_t q : face) {
        p.set_letter(q, letter);
    }
    return p;
}

std::vector<uint32_t> all_qubits(size_t n) {
    std::vector<uint32_t> r(n);
    for (size_t k = 0; k < n; k++) {
        r[k] = k;
    }
    return r;
}

}  // namespace

TEST(GenStabState, init_zero) {
    GenStabState s(3);
    ASSERT_EQ(s.size(), 1u);
    ASSERT_EQ(s.entries()[0].index, 0u);
    ASSERT_NEAR(std::abs(s.entries()[0].value - Complex(1)), 0, 1e-15);
    auto dense = s.dense_statevector();
    ASSERT_NEAR(std::abs(dense[0]), 1, 1e-12);
    ASSERT_NEAR(s.norm_squared(), 1, 1e-15);
}

TEST(GenStabState, bell_state_expansion) {
    GenStabState s(2);
    h(s, 0);
    cx(s, 0, 1);
    ASSERT_EQ(s.size(), 1u);
    auto dense = s.dense_statevector();
    std::vector<Complex> expected{std::sqrt(0.5), 0, 0, std::sqrt(0.5)};
    ASSERT_NEAR(overlap_magnitude(dense, expected), 1, 1e-12);
}

TEST(GenStabState, hadamard_twice_is_identity) {
    GenStabState s(1);
    Tableau before = s.tableau();
    h(s, 0);
    h(s, 0);
    ASSERT_EQ(s.tableau(), before);
}

TEST(GenStabState, t_on_plus_makes_two_branches) {
    GenStabState s(1);
    h(s, 0);
    s.apply_t(0, false);
    ASSERT_EQ(s.size(), 2u);
    auto e = s.sorted_entries();
    ASSERT_NEAR(std::abs(e[0].value), std::cos(std::numbers::pi / 8), 1e-12);
    ASSERT_NEAR(std::abs(e[1].value), std::sin(std::numbers::pi / 8), 1e-12);
    ASSERT_NEAR(s.norm_squared(), 1, 1e-12);
}

TEST(GenStabState, four_t_gates_on_plus_give_minus) {
    GenStabState s(1);
    h(s, 0);
    for (int k = 0; k < 4; k++) {
        s.apply_t(0, false);
    }
    std::vector<Complex> minus{std::sqrt(0.5), -std::sqrt(0.5)};
    ASSERT_NEAR(overlap_magnitude(s.dense_statevector(), minus), 1, 1e-12);
    ASSERT_EQ(s.size(), 1u);
}

TEST(GenStabState, t_then_t_dagger_is_identity) {
    GenStabState s(2);
    h(s, 0);
    cx(s, 0, 1);
    s.apply_t(1, false);
    s.apply_t(1, true);
    ASSERT_EQ(s.size(), 1u);
    std::vector<Complex> bell{std::sqrt(0.5), 0, 0, std::sqrt(0.5)};
    ASSERT_NEAR(overlap_magnitude(s.dense_statevector(), bell), 1, 1e-12);
}

TEST(GenStabState, t_on_zero_stays_single_entry) {
    GenStabState s(2);
    s.apply_t(0, false);
    s.apply_t(1, true);
    ASSERT_EQ(s.size(), 1u);
}

TEST(GenStabState, measure_x_after_t_on_plus) {
    GenStabState s(1);
    h(s, 0);
    s.apply_t(0, false);
    MeasurementOutcome m = s.measure_pauli(PauliString::from_str("X"), 0.0);
    double expected = std::pow(std::cos(std::numbers::pi / 8), 2);
    ASSERT_NEAR(m.prob_plus, expected, 1e-12);
    ASSERT_NEAR(m.prob_plus, 0.853553, 1e-6);
    ASSERT_EQ(m.sign, +1);
    ASSERT_FALSE(m.pivoted);
    ASSERT_EQ(s.size(), 1u);
    ASSERT_NEAR(s.norm_squared(), 1, 1e-12);
    std::vector<Complex> plus{std::sqrt(0.5), std::sqrt(0.5)};
    ASSERT_NEAR(overlap_magnitude(s.dense_statevector(), plus), 1, 1e-12);
}

TEST(GenStabState, deterministic_measurement) {
    GenStabState s(2);
    h(s, 0);
    cx(s, 0, 1);
    MeasurementOutcome m = s.measure_pauli(PauliString::from_str("ZZ"), 0.999);
    ASSERT_FALSE(m.pivoted);
    ASSERT_EQ(m.sign, +1);
    ASSERT_NEAR(m.probability, 1, 1e-12);
    m = s.measure_pauli(PauliString::from_str("-XX"), 0.0);
    ASSERT_EQ(m.sign, -1);
}

TEST(GenStabState, apply_pauli_examples) {
    GenStabState s(2);
    s.apply_pauli(PauliString::from_str("X_"));
    ASSERT_EQ(s.size(), 1u);
    ASSERT_EQ(s.entries()[0].index, 1u);
    std::vector<Complex> expected{0, 1, 0, 0};
    ASSERT_NEAR(overlap_magnitude(s.dense_statevector(), expected), 1, 1e-12);
    ASSERT_THROW(s.apply_pauli(PauliString::from_str("iX_")), std::invalid_argument);
    ASSERT_THROW(s.apply_pauli(PauliString::from_str("X")), std::invalid_argument);
}

TEST(GenStabState, random_circuits_match_dense_oracle) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> uni(0, 1);
    for (int trial = 0; trial < 150; trial++) {
        size_t n = 1 + rng() % 6;
        GenStabState s(n);
        DenseState d(n);
        for (int step = 0; step < 40; step++) {
            int kind = rng() % 10;
            if (kind < 5) {
                Gate g = kAllGates[rng() % std::size(kAllGates)];
                std::vector<uint32_t> t{static_cast<uint32_t>(rng() % n)};
                if (is_two_qubit(g)) {
                    if (n < 2) {
                        continue;
                    }
                    t.push_back((t[0] + 1 + rng() % (n - 1)) % n);
                }
                s.apply_clifford(g, t);
                d.apply_gate(g, t);
            } else if (kind < 8) {
                uint32_t q = rng() % n;
                bool dag = rng() & 1;
                s.apply_t(q, dag);
                d.apply_t(q, dag);
            } else if (kind < 9) {
                PauliString p = random_pauli(n, rng);
                if (p.is_identity_letters()) {
                    continue;
                }
                s.apply_pauli(p);
                d.apply_pauli(p);
            } else {
                PauliString p = random_pauli(n, rng);
                if (p.is_identity_letters()) {
                    continue;
                }
                double expected_plus = d.outcome_probability(p, +1);
                MeasurementOutcome m = s.measure_pauli(p, uni(rng));
                ASSERT_NEAR(m.prob_plus, expected_plus, 1e-10);
                double pre = d.project(p, m.sign);
                ASSERT_NEAR(pre, m.probability, 1e-10);
            }
            ASSERT_NEAR(s.norm_squared(), 1, 1e-9);
            ASSERT_NEAR(overlap_magnitude(s.dense_statevector(), d.amplitudes()), 1, 1e-10)
                << "trial " << trial << " step " << step << "\n"
                << s.str();
        }
    }
}

TEST(GenStabState, coset_bound_zero_state) {
    GenStabState s(4);
    auto q = all_qubits(4);
    CosetAnalysis c = s.coset_bound(q);
    ASSERT_EQ(c.r_q, 4u);
    ASSERT_EQ(c.bound(), 1u);
}

TEST(GenStabState, coset_bound_plus_state) {
    GenStabState s(3);
    for (uint32_t k = 0; k < 3; k++) {
        h(s, k);
    }
    auto q = all_qubits(3);
    CosetAnalysis c = s.coset_bound(q);
    ASSERT_EQ(c.r_q, 0u);
    ASSERT_EQ(c.bound(), 8u);
    uint32_t one = 1;
    ASSERT_EQ(s.coset_bound(std::span<const uint32_t>(&one, 1)).bound(), 2u);
}

TEST(GenStabState, steane_plus_logical_bound_and_t_layer) {
    GenStabState s(7);
    encode_plus(s, kSteaneFaces);
    DenseState dense(s.dense_statevector());
    for (const auto &f : kSteaneFaces) {
        ASSERT_NEAR(dense.expectation(face_check(7, f, 'X')), 1, 1e-10);
        ASSERT_NEAR(dense.expectation(face_check(7, f, 'Z')), 1, 1e-10);
    }
    ASSERT_NEAR(dense.expectation(PauliString::from_str("XXXXXXX")), 1, 1e-10);

    auto q = all_qubits(7);
    CosetAnalysis c = s.coset_bound(q);
    ASSERT_EQ(c.r_q, 3u);
    ASSERT_EQ(c.bound(), 16u);
    for (uint32_t k = 0; k < 7; k++) {
        s.apply_t(k, false);
        dense.apply_t(k, false);
    }
    ASSERT_LE(s.size(), 16u);
    ASSERT_NEAR(overlap_magnitude(s.dense_statevector(), dense.amplitudes()), 1, 1e-10);
}

TEST(GenStabState, color_code_d5_bound) {
    GenStabState s(19);
    encode_plus(s, kColorD5Faces);
    auto q = all_qubits(19);
    CosetAnalysis c = s.coset_bound(q);
    ASSERT_EQ(c.r_q, 9u);
    ASSERT_EQ(c.bound(), 1024u);
    for (uint32_t k = 0; k < 19; k++) {
        s.apply_t(k, false);
    }
    ASSERT_LE(s.size(), 1024u);
    ASSERT_NEAR(s.norm_squared(), 1, 1e-9);
}

TEST(GenStabState, capacity_overflow_leaves_state_unchanged) {
    GenStabState s(2, 2);
    h(s, 0);
    h(s, 1);
    s.apply_t(0, false);
    ASSERT_EQ(s.size(), 2u);
    auto before = s.sorted_entries();
    ASSERT_THROW(s.apply_t(1, false), CapacityExceeded);
    auto after = s.sorted_entries();
    ASSERT_EQ(after.size(), before.size());
    for (size_t k = 0; k < after.size(); k++) {
        ASSERT_EQ(after[k].index, before[k].index);
        ASSERT_EQ(after[k].value, before[k].value);
    }
}

TEST(GenStabState, pivoted_measure_y_after_t_on_plus) {
    GenStabState s(1);
    h(s, 0);
    s.apply_t(0, false);
    MeasurementOutcome m = s.measure_pauli(PauliString::from_str("Y"), 0.99);
    ASSERT_TRUE(m.pivoted);
    ASSERT_NEAR(m.prob_plus, (1 + std::sqrt(0.5)) / 2, 1e-12);
    ASSERT_EQ(m.sign, -1);
    ASSERT_EQ(s.size(), 1u);
    std::vector<Complex> minus_i{std::sqrt(0.5), Complex(0, -std::sqrt(0.5))};
    ASSERT_NEAR(overlap_magnitude(s.dense_statevector(), minus_i), 1, 1e-12);
}
