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

#ifndef GSIM_CIRCUIT_H
#define GSIM_CIRCUIT_H

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gsim/gates.h"

namespace gsim {

/// Raised for malformed circuit text. The message starts with "line N: ".
class ParseError : public std::runtime_error {
   public:
    ParseError(size_t line, const std::string &message);
    size_t line() const { return line_; }

   private:
    size_t line_;
};

enum class OpCode : uint8_t {
    CLIFFORD,
    T,
    T_DAG,
    M,
    MX,
    MY,
    MR,
    MRX,
    MRY,
    R,
    RX,
    RY,
    MPP,
    DEPOLARIZE1,
    DEPOLARIZE2,
    X_ERROR,
    Y_ERROR,
    Z_ERROR,
    DETECTOR,
    OBSERVABLE_INCLUDE,
    TICK,
    QUBIT_COORDS,
    SHIFT_COORDS,
    REPEAT,
};

std::string_view opcode_name(OpCode op);
bool is_noise(OpCode op);
bool is_measurement(OpCode op);
bool is_reset(OpCode op);
/// 'X', 'Y' or 'Z' for single-qubit measurements and resets, 0 otherwise.
char basis_of(OpCode op);

struct Target {
    enum class Kind : uint8_t { QUBIT, REC, PAULI, COMBINER };

    Kind kind = Kind::QUBIT;
    /// Qubit index, or the lookback distance k of rec[-k].
    uint32_t value = 0;
    char pauli = 0;
    bool inverted = false;

    static Target qubit(uint32_t q, bool inverted = false) { return {Kind::QUBIT, q, 0, inverted}; }
    static Target rec(uint32_t k) { return {Kind::REC, k, 0, false}; }
    static Target pauli_term(char p, uint32_t q, bool inverted = false) { return {Kind::PAULI, q, p, inverted}; }
    static Target combiner() { return {Kind::COMBINER, 0, 0, false}; }

    bool is_qubit() const { return kind == Kind::QUBIT; }
    bool is_rec() const { return kind == Kind::REC; }
    std::string str() const;
    bool operator==(const Target &) const = default;
};

struct Instruction {
    OpCode op = OpCode::TICK;
    /// Only meaningful for OpCode::CLIFFORD.
    Gate gate = Gate::I;
    std::vector<double> args;
    std::vector<Target> targets;
    uint64_t repeat_count = 0;
    std::vector<Instruction> body;

    /// Number of record bits one execution of this instruction appends
    /// (REPEAT blocks included).
    uint64_t measurement_count() const;
    /// Target groups of an MPP instruction, one per measured product.
    std::vector<std::vector<Target>> mpp_products() const;
    /// True for classically controlled Paulis (gates with rec targets).
    bool is_conditional() const;
    std::string str() const;
    bool operator==(const Instruction &) const = default;
};

struct CircuitProgram {
    std::vector<Instruction> instructions;
    size_t num_qubits = 0;
    uint64_t num_measurements = 0;
    uint64_t num_detectors = 0;
    uint64_t num_observables = 0;

    bool has_noise() const;
    /// Circuit text that parses back to an equal program.
    std::string str() const;
    bool operator==(const CircuitProgram &) const = default;
};

struct CircuitStats {
    size_t total_qubits = 0;
    uint64_t total_gates = 0;
    uint64_t depth = 0;
    uint64_t two_qubit_gates = 0;
    uint64_t measurements = 0;
    uint64_t t_count = 0;
    size_t t_support_size = 0;
    uint64_t t_depth = 0;

    bool operator==(const CircuitStats &) const = default;
};

/// Line-oriented parse of the circuit text format (see docs/circuit_format.md).
CircuitProgram parse_circuit(std::string_view text);
CircuitProgram parse_circuit_file(const std::string &path);

/// Recomputes the derived counts of a hand-built program and validates
/// lookbacks. Throws ParseError with line 0 on invalid structure.
void finalize_program(CircuitProgram &prog);

CircuitStats compute_stats(const CircuitProgram &prog);

/// XOR of the referenced bits of `record` (bit 1 means outcome -1), where each
/// lookback k refers to record[record.size() - k]. Throws std::out_of_range.
bool resolve_detector(std::span<const Target> lookbacks, std::span<const uint8_t> record);

}  // namespace gsim

#endif
