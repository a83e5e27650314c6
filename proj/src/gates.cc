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

#include "gsim/gates.h"

#include <array>
#include <cctype>
#include <string>
#include <utility>

namespace gsim {

std::string_view gate_name(Gate gate) {
    switch (gate) {
        case Gate::I:
            return "I";
        case Gate::X:
            return "X";
        case Gate::Y:
            return "Y";
        case Gate::Z:
            return "Z";
        case Gate::H:
            return "H";
        case Gate::S:
            return "S";
        case Gate::S_DAG:
            return "S_DAG";
        case Gate::H_XY:
            return "H_XY";
        case Gate::H_NXY:
            return "H_NXY";
        case Gate::SQRT_X:
            return "SQRT_X";
        case Gate::SQRT_X_DAG:
            return "SQRT_X_DAG";
        case Gate::CX:
            return "CX";
        case Gate::CY:
            return "CY";
        case Gate::CZ:
            return "CZ";
        case Gate::SWAP:
            return "SWAP";
    }
    return "?";
}

std::optional<Gate> gate_from_name(std::string_view name) {
    std::string upper(name);
    for (char &c : upper) {
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    for (Gate g : kAllGates) {
        if (upper == gate_name(g)) {
            return g;
        }
    }
    static const std::array<std::pair<std::string_view, Gate>, 7> kAliases{{
        {"CNOT", Gate::CX},
        {"ZCX", Gate::CX},
        {"ZCY", Gate::CY},
        {"ZCZ", Gate::CZ},
        {"H_XZ", Gate::H},
        {"SQRT_Z", Gate::S},
        {"SQRT_Z_DAG", Gate::S_DAG},
    }};
    for (const auto &[alias, g] : kAliases) {
        if (upper == alias) {
            return g;
        }
    }
    return std::nullopt;
}

}  // namespace gsim
