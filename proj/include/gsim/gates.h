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

#ifndef GSIM_GATES_H
#define GSIM_GATES_H

#include <optional>
#include <string_view>

namespace gsim {

/// Clifford gates understood by the tableau.
enum class Gate {
    I,
    X,
    Y,
    Z,
    H,
    S,
    S_DAG,
    H_XY,
    H_NXY,
    SQRT_X,
    SQRT_X_DAG,
    CX,
    CY,
    CZ,
    SWAP,
};

inline constexpr Gate kAllGates[] = {
    Gate::I,      Gate::X,          Gate::Y,  Gate::Z,  Gate::H,  Gate::S,   Gate::S_DAG,
    Gate::H_XY,   Gate::H_NXY,      Gate::SQRT_X, Gate::SQRT_X_DAG, Gate::CX, Gate::CY, Gate::CZ,
    Gate::SWAP,
};

std::string_view gate_name(Gate gate);

/// Canonical name or alias (CNOT, ZCX, SQRT_Z, ...), case-insensitive.
std::optional<Gate> gate_from_name(std::string_view name);

inline bool is_two_qubit(Gate gate) {
    return gate == Gate::CX || gate == Gate::CY || gate == Gate::CZ || gate == Gate::SWAP;
}

inline bool is_pauli_gate(Gate gate) {
    return gate == Gate::X || gate == Gate::Y || gate == Gate::Z;
}

}  // namespace gsim

#endif
