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

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "gsim/noise.h"

using namespace gsim;

namespace {

Instruction single(std::string_view text) {
    return parse_circuit(text).instructions.at(0);
}

}  // namespace

TEST(oracle, dense_step_hadamard) {
    DenseState ds(1);
    std::vector<uint8_t> record;
    dense_step(ds, single("H 0"), {}, record);
    double s = std::sqrt(0.5);
    ASSERT_NEAR(std::abs(ds.amplitudes()[0] - Complex(s, 0)), 0, 1e-12);
    ASSERT_NEAR(std::abs(ds.amplitudes()[1] - Complex(s, 0)), 0, 1e-12);
}

TEST(oracle, dense_step_t_on_plus) {
    DenseState ds(1);
    std::vector<uint8_t> record;
    dense_step(ds, single("H 0"), {}, record);
    dense_step(ds, single("T 0"), {}, record);
    double s = std::sqrt(0.5);
    ASSERT_NEAR(std::abs(ds.amplitudes()[0] - Complex(s, 0)), 0, 1e-12);
    ASSERT_NEAR(std::abs(ds.amplitudes()[1] - std::polar(s, std::numbers::pi / 4)), 0, 1e-12);
}

TEST(oracle, dense_step_forced_measurement) {
    DenseState ds(1);
    std::vector<uint8_t> record;
    dense_step(ds, single("H 0"), {}, record);
    TapeEntry e;
    e.kind = TapeEntry::Kind::MEASUREMENT;
    e.sign = -1;
    e.prob_plus = 0.5;
    double delta = dense_step(ds, single("M 0"), std::span<const TapeEntry>(&e, 1), record);
    ASSERT_NEAR(delta, 0, 1e-12);
    ASSERT_EQ(record, std::vector<uint8_t>{1});
    ASSERT_NEAR(std::abs(ds.amplitudes()[1]), 1, 1e-12);
}

TEST(oracle, impossible_outcome_is_inconsistent) {
    DenseState ds(1);
    std::vector<uint8_t> record;
    TapeEntry e;
    e.kind = TapeEntry::Kind::MEASUREMENT;
    e.sign = -1;
    e.prob_plus = 0;
    ASSERT_THROW(dense_step(ds, single("M 0"), std::span<const TapeEntry>(&e, 1), record), InconsistencyError);
}

TEST(oracle, missing_or_extra_tape_is_inconsistent) {
    DenseState ds(2);
    std::vector<uint8_t> record;
    ASSERT_THROW(dense_step(ds, single("M 0"), {}, record), InconsistencyError);
    TapeEntry e;
    ASSERT_THROW(dense_step(ds, single("H 0"), std::span<const TapeEntry>(&e, 1), record), InconsistencyError);
    e.error.x = 2;
    ASSERT_THROW(dense_step(ds, single("X_ERROR(0.1) 0"), std::span<const TapeEntry>(&e, 1), record), InconsistencyError);
}

TEST(oracle, bell_crosscheck) {
    CircuitProgram p = parse_circuit("H 0\nCX 0 1\nM 0 1\nDETECTOR rec[-1] rec[-2]");
    CrosscheckReport r = crosscheck(p, 200, 1);
    ASSERT_TRUE(r.passed(1e-12)) << r.to_json();
    ASSERT_EQ(r.shots, 200u);
    ASSERT_EQ(r.measurements, 400u);
    ASSERT_LE(r.max_infidelity, 1e-12);
    ASSERT_EQ(r.max_entries, 1u);
}

TEST(oracle, t_free_circuits_keep_one_entry) {
    std::mt19937_64 rng(8);
    for (int k = 0; k < 20; k++) {
        RandomCircuitOptions opts;
        opts.max_t = 0;
        CircuitProgram p = apply_noise_model(parse_circuit(random_circuit_text(opts, rng)), 0.05);
        CrosscheckReport r = crosscheck(p, 5, k);
        ASSERT_TRUE(r.passed()) << r.to_json();
        ASSERT_EQ(r.max_entries, 1u);
    }
}

TEST(oracle, random_noisy_circuits_agree) {
    std::mt19937_64 rng(21);
    CrosscheckReport total;
    for (int k = 0; k < 100; k++) {
        RandomCircuitOptions opts;
        opts.max_qubits = 8;
        CircuitProgram p = apply_noise_model(parse_circuit(random_circuit_text(opts, rng)), 0.05);
        CrosscheckReport r = crosscheck(p, 3, 1000 + k);
        for (auto &f : r.failures) {
            f.circuit = k;
        }
        total.merge(r);
    }
    ASSERT_TRUE(total.passed(1e-10)) << total.to_json();
    ASSERT_EQ(total.circuits, 100u);
    ASSERT_LE(total.max_infidelity, 1e-10);
    ASSERT_GT(total.max_entries, 1u);
    ASSERT_GT(total.measurements, 0u);
}

TEST(oracle, repeat_blocks_are_expanded) {
    CircuitProgram p = parse_circuit("H 0\nREPEAT 3 {\nT 0\nCX 0 1\nMR 1\nDETECTOR rec[-1]\n}\nMX 0");
    CrosscheckReport r = crosscheck(apply_noise_model(p, 0.02), 20, 3);
    ASSERT_TRUE(r.passed()) << r.to_json();
    ASSERT_EQ(r.measurements, 20u * 4);
}

TEST(oracle, too_many_qubits_rejected) {
    ASSERT_THROW(crosscheck(parse_circuit("H 14"), 1, 0), std::invalid_argument);
}

TEST(oracle, report_json_fields) {
    CrosscheckReport r;
    r.failures.push_back({2, 3, 4, "bad"});
    std::string js = r.to_json();
    for (const char *key : {"\"circuits\"", "\"shots\"", "\"max_infidelity\"", "\"max_prob_delta\"", "\"failures\""}) {
        ASSERT_NE(js.find(key), std::string::npos) << key;
    }
    ASSERT_FALSE(r.passed());
}
