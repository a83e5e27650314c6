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

#include "gsim/circuit.h"

#include <random>

#include "gtest/gtest.h"

#include "gsim/noise.h"
#include "gsim/oracle.h"

using namespace gsim;

namespace {

std::string parse_error_of(std::string_view text) {
    try {
        parse_circuit(text);
    } catch (const ParseError &e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(circuit, simple_counts) {
    CircuitProgram p = parse_circuit("H 0\nCX 0 1\nM 0 1");
    ASSERT_EQ(p.num_qubits, 2u);
    ASSERT_EQ(p.num_measurements, 2u);
    CircuitStats s = compute_stats(p);
    ASSERT_EQ(s.total_gates, 2u);
    ASSERT_EQ(s.two_qubit_gates, 1u);
    ASSERT_EQ(s.measurements, 2u);
    ASSERT_EQ(s.depth, 1u);
}

TEST(circuit, repeat_and_lookbacks) {
    CircuitProgram p = parse_circuit("REPEAT 3 { M 0 }\nDETECTOR rec[-1] rec[-2]");
    ASSERT_EQ(p.num_measurements, 3u);
    ASSERT_EQ(p.num_detectors, 1u);
    ASSERT_EQ(p.instructions.size(), 2u);
    ASSERT_EQ(p.instructions[0].op, OpCode::REPEAT);
    ASSERT_EQ(p.instructions[0].repeat_count, 3u);
    ASSERT_EQ(p.instructions[0].body.size(), 1u);
    const Instruction &det = p.instructions[1];
    ASSERT_EQ(det.targets.size(), 2u);
    ASSERT_EQ(det.targets[0], Target::rec(1));
    ASSERT_EQ(det.targets[1], Target::rec(2));
    // Last two of three record bits.
    std::vector<uint8_t> record{1, 0, 1};
    ASSERT_TRUE(resolve_detector(det.targets, record));
}

TEST(circuit, t_stats) {
    CircuitStats s = compute_stats(parse_circuit("T 0\nTICK\nT_DAG 0"));
    ASSERT_EQ(s.t_count, 2u);
    ASSERT_EQ(s.t_support_size, 1u);
    ASSERT_EQ(s.t_depth, 2u);
    ASSERT_EQ(s.depth, 2u);
    ASSERT_EQ(s.total_gates, 2u);
}

TEST(circuit, stats_expand_repeats_and_skip_annotations) {
    CircuitProgram p = parse_circuit(R"(
QUBIT_COORDS(0, 0) 0
R 0 1 2
TICK
REPEAT 4 {
    T 0 1
    CX 0 2 1 2
    DEPOLARIZE1(0.1) 0
    TICK
    MR 2
    DETECTOR rec[-1]
    TICK
}
X rec[-1] 0
TICK
TICK
)");
    CircuitStats s = compute_stats(p);
    ASSERT_EQ(s.total_qubits, 3u);
    ASSERT_EQ(s.t_count, 8u);
    ASSERT_EQ(s.t_support_size, 2u);
    ASSERT_EQ(s.two_qubit_gates, 8u);
    ASSERT_EQ(s.total_gates, 16u);
    ASSERT_EQ(s.measurements, 4u);
    // One reset layer, then two layers per iteration; the feedback-only and
    // empty layers do not count.
    ASSERT_EQ(s.depth, 9u);
    ASSERT_EQ(s.t_depth, 4u);
    ASSERT_EQ(p.num_detectors, 4u);
}

TEST(circuit, single_gate_file) {
    CircuitStats s = compute_stats(parse_circuit("T 0\n"));
    ASSERT_EQ(s.total_qubits, 1u);
    ASSERT_EQ(s.total_gates, 1u);
    ASSERT_EQ(s.depth, 1u);
    ASSERT_EQ(s.t_count, 1u);
    ASSERT_EQ(s.t_support_size, 1u);
    ASSERT_EQ(s.t_depth, 1u);
}

TEST(circuit, resolve_detector_examples) {
    std::vector<uint8_t> one{1};
    ASSERT_FALSE(resolve_detector({}, one));
    std::vector<Target> last{Target::rec(1)};
    ASSERT_TRUE(resolve_detector(last, one));
    std::vector<uint8_t> rec{1, 0, 1};
    std::vector<Target> pair{Target::rec(1), Target::rec(3)};
    ASSERT_FALSE(resolve_detector(pair, rec));
    std::vector<Target> far{Target::rec(4)};
    ASSERT_THROW(resolve_detector(far, rec), std::out_of_range);
}

TEST(circuit, aliases_case_and_separators) {
    CircuitProgram a = parse_circuit("cnot 0 1; h_xz 2\nzcz 0 1 # trailing comment\n");
    CircuitProgram b = parse_circuit("CX 0 1\nH 2\nCZ 0 1\n");
    ASSERT_EQ(a, b);
}

TEST(circuit, parse_errors_carry_line_numbers) {
    ASSERT_EQ(parse_error_of("H 0\nFOO 1"), "line 2: unknown opcode 'FOO'");
    ASSERT_NE(parse_error_of("H 0\n\nCX 0"), "");
    ASSERT_TRUE(parse_error_of("H 0\n\nCX 0").starts_with("line 3:"));
    ASSERT_TRUE(parse_error_of("M 0\nDETECTOR rec[-2]").starts_with("line 2:"));
    ASSERT_TRUE(parse_error_of("M 0\nDETECTOR rec[1]").starts_with("line 2:"));
    ASSERT_TRUE(parse_error_of("REPEAT 2 {\nM 0\n").starts_with("line 1:"));
    ASSERT_TRUE(parse_error_of("M 0\n}\n").starts_with("line 2:"));
    ASSERT_TRUE(parse_error_of("H 0 x").starts_with("line 1:"));
    ASSERT_TRUE(parse_error_of("CX 0 0").starts_with("line 1:"));
    ASSERT_TRUE(parse_error_of("M 0\nCX 0 rec[-1]").starts_with("line 2:"));
    ASSERT_TRUE(parse_error_of("MPP X0*Z0").starts_with("line 1:"));
    ASSERT_TRUE(parse_error_of("MPP X0*").starts_with("line 1:"));
    ASSERT_TRUE(parse_error_of("DEPOLARIZE1(1.5) 0").starts_with("line 1:"));
    ASSERT_TRUE(parse_error_of("REPEAT 0 {\n}").starts_with("line 1:"));
    ASSERT_TRUE(parse_error_of("REPEAT 2\nM 0").starts_with("line 1:"));
    ASSERT_TRUE(parse_error_of("H(0.1) 0").starts_with("line 1:"));
}

TEST(circuit, lookbacks_inside_repeat_use_first_iteration) {
    ASSERT_NO_THROW(parse_circuit("M 0\nREPEAT 3 {\nM 0\nDETECTOR rec[-1] rec[-2]\n}"));
    ASSERT_THROW(parse_circuit("REPEAT 3 {\nM 0\nDETECTOR rec[-1] rec[-2]\n}"), ParseError);
}

TEST(circuit, mpp_products) {
    CircuitProgram p = parse_circuit("MPP X0*Z1 !Y2 Z0*Z1*X2*X2");
    ASSERT_EQ(p.num_measurements, 3u);
    auto products = p.instructions[0].mpp_products();
    ASSERT_EQ(products.size(), 3u);
    ASSERT_EQ(products[0].size(), 2u);
    ASSERT_TRUE(products[1][0].inverted);
    ASSERT_EQ(products[2].size(), 4u);
    ASSERT_EQ(p.instructions[0].str(), "MPP X0*Z1 !Y2 Z0*Z1*X2*X2");
}

TEST(circuit, conditional_forms) {
    CircuitProgram p = parse_circuit("M 0\nCX rec[-1] 1\nCZ 2 rec[-1]\nX rec[-1] 3 rec[-1] 2\nCY rec[-1] 0");
    ASSERT_TRUE(p.instructions[1].is_conditional());
    ASSERT_TRUE(p.instructions[3].is_conditional());
    ASSERT_EQ(compute_stats(p).total_gates, 0u);
    ASSERT_THROW(parse_circuit("M 0\nH rec[-1] 0"), ParseError);
    ASSERT_THROW(parse_circuit("M 0\nX 0 rec[-1]"), ParseError);
    ASSERT_THROW(parse_circuit("M 0\nSWAP rec[-1] 0"), ParseError);
}

TEST(circuit, serialization_examples) {
    CircuitProgram p = parse_circuit("REPEAT 2 {\n  M(0.25) !0 1\n  DETECTOR(1, 2.5) rec[-1]\n}\nOBSERVABLE_INCLUDE(0) rec[-2]\n");
    ASSERT_EQ(p.str(),
              "REPEAT 2 {\n"
              "    M(0.25) !0 1\n"
              "    DETECTOR(1, 2.5) rec[-1]\n"
              "}\n"
              "OBSERVABLE_INCLUDE(0) rec[-2]\n");
    ASSERT_EQ(p.num_observables, 1u);
    ASSERT_TRUE(p.has_noise());
}

TEST(circuit, round_trip_random_programs) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; trial++) {
        RandomCircuitOptions opts;
        opts.max_qubits = 6;
        std::string text = random_circuit_text(opts, rng);
        CircuitProgram p = parse_circuit(text);
        if (trial % 3 == 0) {
            p = apply_noise_model(p, 0.001 * (1 + trial % 7));
        }
        if (trial % 5 == 0) {
            Instruction rep;
            rep.op = OpCode::REPEAT;
            rep.repeat_count = 1 + trial % 4;
            rep.body = p.instructions;
            p.instructions.insert(p.instructions.begin(), rep);
            finalize_program(p);
        }
        CircuitProgram back = parse_circuit(p.str());
        ASSERT_EQ(back, p) << p.str();
        ASSERT_EQ(back.str(), p.str());
    }
}

TEST(circuit, finalize_rejects_bad_hand_built_programs) {
    CircuitProgram p;
    Instruction det;
    det.op = OpCode::DETECTOR;
    det.targets = {Target::rec(1)};
    p.instructions.push_back(det);
    ASSERT_THROW(finalize_program(p), ParseError);
}
