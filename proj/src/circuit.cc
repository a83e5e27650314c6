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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace gsim {

namespace {

struct OpName {
    std::string_view name;
    OpCode op;
};

constexpr OpName kOpNames[] = {
    {"T", OpCode::T},
    {"T_DAG", OpCode::T_DAG},
    {"M", OpCode::M},
    {"MZ", OpCode::M},
    {"MX", OpCode::MX},
    {"MY", OpCode::MY},
    {"MR", OpCode::MR},
    {"MRZ", OpCode::MR},
    {"MRX", OpCode::MRX},
    {"MRY", OpCode::MRY},
    {"R", OpCode::R},
    {"RZ", OpCode::R},
    {"RX", OpCode::RX},
    {"RY", OpCode::RY},
    {"MPP", OpCode::MPP},
    {"DEPOLARIZE1", OpCode::DEPOLARIZE1},
    {"DEPOLARIZE2", OpCode::DEPOLARIZE2},
    {"X_ERROR", OpCode::X_ERROR},
    {"Y_ERROR", OpCode::Y_ERROR},
    {"Z_ERROR", OpCode::Z_ERROR},
    {"DETECTOR", OpCode::DETECTOR},
    {"OBSERVABLE_INCLUDE", OpCode::OBSERVABLE_INCLUDE},
    {"TICK", OpCode::TICK},
    {"QUBIT_COORDS", OpCode::QUBIT_COORDS},
    {"SHIFT_COORDS", OpCode::SHIFT_COORDS},
    {"REPEAT", OpCode::REPEAT},
};

std::string upper(std::string_view s) {
    std::string r(s);
    for (char &c : r) {
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return r;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

bool is_probability(double p) {
    return p >= 0 && p <= 1;
}

// Empty when the instruction's arguments and targets have a legal shape.
std::string check_shape(const Instruction &inst) {
    auto all_of_kind = [&](Target::Kind k) {
        return std::all_of(inst.targets.begin(), inst.targets.end(), [&](const Target &t) { return t.kind == k; });
    };
    auto no_inversions = [&]() {
        return std::none_of(inst.targets.begin(), inst.targets.end(), [](const Target &t) { return t.inverted; });
    };
    std::string name(opcode_name(inst.op));
    if (inst.op == OpCode::CLIFFORD) {
        name = gate_name(inst.gate);
    }
    switch (inst.op) {
        case OpCode::CLIFFORD: {
            if (!inst.args.empty()) {
                return name + " takes no arguments";
            }
            if (!no_inversions()) {
                return name + " targets cannot be inverted";
            }
            if (is_two_qubit(inst.gate)) {
                if (inst.targets.size() % 2) {
                    return name + " needs an even number of targets";
                }
                for (size_t k = 0; k < inst.targets.size(); k += 2) {
                    const Target &a = inst.targets[k];
                    const Target &b = inst.targets[k + 1];
                    if (a.is_qubit() && b.is_qubit()) {
                        if (a.value == b.value) {
                            return name + " pair acts twice on qubit " + std::to_string(a.value);
                        }
                    } else if (a.is_rec() && b.is_qubit()) {
                        if (inst.gate == Gate::SWAP) {
                            return "SWAP cannot be classically controlled";
                        }
                    } else if (a.is_qubit() && b.is_rec()) {
                        if (inst.gate != Gate::CZ) {
                            return name + " cannot target a measurement record";
                        }
                    } else {
                        return name + " has malformed targets";
                    }
                }
                return "";
            }
            bool any_rec = std::any_of(inst.targets.begin(), inst.targets.end(), [](const Target &t) { return t.is_rec(); });
            if (any_rec) {
                if (!is_pauli_gate(inst.gate)) {
                    return name + " cannot be classically controlled";
                }
                if (inst.targets.size() % 2) {
                    return name + " conditional form needs (rec, qubit) pairs";
                }
                for (size_t k = 0; k < inst.targets.size(); k += 2) {
                    if (!inst.targets[k].is_rec() || !inst.targets[k + 1].is_qubit()) {
                        return name + " conditional form needs (rec, qubit) pairs";
                    }
                }
                return "";
            }
            return all_of_kind(Target::Kind::QUBIT) ? "" : name + " takes qubit targets";
        }
        case OpCode::T:
        case OpCode::T_DAG:
        case OpCode::R:
        case OpCode::RX:
        case OpCode::RY:
            if (!inst.args.empty()) {
                return name + " takes no arguments";
            }
            if (!all_of_kind(Target::Kind::QUBIT) || !no_inversions()) {
                return name + " takes plain qubit targets";
            }
            return "";
        case OpCode::M:
        case OpCode::MX:
        case OpCode::MY:
        case OpCode::MR:
        case OpCode::MRX:
        case OpCode::MRY:
            if (inst.args.size() > 1 || (inst.args.size() == 1 && !is_probability(inst.args[0]))) {
                return name + " takes at most one flip probability";
            }
            return all_of_kind(Target::Kind::QUBIT) ? "" : name + " takes qubit targets";
        case OpCode::MPP: {
            if (inst.args.size() > 1 || (inst.args.size() == 1 && !is_probability(inst.args[0]))) {
                return "MPP takes at most one flip probability";
            }
            bool expect_term = true;
            for (const Target &t : inst.targets) {
                if (t.kind == Target::Kind::COMBINER) {
                    if (expect_term) {
                        return "MPP has a dangling '*'";
                    }
                    expect_term = true;
                } else if (t.kind == Target::Kind::PAULI) {
                    expect_term = false;
                } else {
                    return "MPP takes Pauli terms like X0*Z1";
                }
            }
            if (!inst.targets.empty() && expect_term) {
                return "MPP has a dangling '*'";
            }
            for (const auto &product : inst.mpp_products()) {
                // Anticommuting factors on one qubit give an anti-Hermitian product.
                int anti = 0;
                for (size_t a = 0; a < product.size(); a++) {
                    for (size_t b = a + 1; b < product.size(); b++) {
                        if (product[a].value == product[b].value && product[a].pauli != product[b].pauli) {
                            anti++;
                        }
                    }
                }
                if (anti % 2) {
                    return "MPP product is not Hermitian";
                }
            }
            return "";
        }
        case OpCode::DEPOLARIZE1:
        case OpCode::DEPOLARIZE2:
        case OpCode::X_ERROR:
        case OpCode::Y_ERROR:
        case OpCode::Z_ERROR:
            if (inst.args.size() != 1 || !is_probability(inst.args[0])) {
                return name + " takes one probability in [0, 1]";
            }
            if (!all_of_kind(Target::Kind::QUBIT) || !no_inversions()) {
                return name + " takes plain qubit targets";
            }
            if (inst.op == OpCode::DEPOLARIZE2) {
                if (inst.targets.size() % 2) {
                    return "DEPOLARIZE2 needs an even number of targets";
                }
                for (size_t k = 0; k < inst.targets.size(); k += 2) {
                    if (inst.targets[k].value == inst.targets[k + 1].value) {
                        return "DEPOLARIZE2 pair acts twice on one qubit";
                    }
                }
            }
            return "";
        case OpCode::DETECTOR:
            return all_of_kind(Target::Kind::REC) ? "" : "DETECTOR takes rec[-k] targets";
        case OpCode::OBSERVABLE_INCLUDE:
            if (inst.args.size() != 1 || inst.args[0] < 0 || inst.args[0] != std::floor(inst.args[0]) ||
                inst.args[0] > 1e9) {
                return "OBSERVABLE_INCLUDE takes one non-negative integer index";
            }
            return all_of_kind(Target::Kind::REC) ? "" : "OBSERVABLE_INCLUDE takes rec[-k] targets";
        case OpCode::TICK:
            return inst.args.empty() && inst.targets.empty() ? "" : "TICK takes nothing";
        case OpCode::QUBIT_COORDS:
            return all_of_kind(Target::Kind::QUBIT) && no_inversions() ? "" : "QUBIT_COORDS takes qubit targets";
        case OpCode::SHIFT_COORDS:
            return inst.targets.empty() ? "" : "SHIFT_COORDS takes no targets";
        case OpCode::REPEAT:
            if (inst.repeat_count < 1) {
                return "REPEAT count must be at least 1";
            }
            return "";
    }
    return "unknown instruction";
}

// Empty when every lookback of `inst` refers to an existing measurement, given
// `measured` bits already recorded.
std::string check_lookbacks(const Instruction &inst, uint64_t measured) {
    uint64_t before = measured;
    for (size_t k = 0; k < inst.targets.size(); k++) {
        const Target &t = inst.targets[k];
        if (!t.is_rec()) {
            continue;
        }
        if (t.value == 0) {
            return "lookbacks must be strictly negative";
        }
        if (t.value > before) {
            return "rec[-" + std::to_string(t.value) + "] refers to a measurement that does not exist (only " +
                   std::to_string(before) + " so far)";
        }
    }
    return "";
}

struct ProgramScan {
    size_t num_qubits = 0;
    uint64_t num_measurements = 0;
    uint64_t num_detectors = 0;
    uint64_t num_observables = 0;
};

void note_targets(const Instruction &inst, ProgramScan &scan) {
    for (const Target &t : inst.targets) {
        if (t.kind == Target::Kind::QUBIT || t.kind == Target::Kind::PAULI) {
            scan.num_qubits = std::max<size_t>(scan.num_qubits, size_t{t.value} + 1);
        }
    }
    if (inst.op == OpCode::OBSERVABLE_INCLUDE) {
        scan.num_observables = std::max<uint64_t>(scan.num_observables, static_cast<uint64_t>(inst.args[0]) + 1);
    }
}

uint64_t saturating_mul(uint64_t a, uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) {
        return UINT64_MAX;
    }
    return a * b;
}

uint64_t count_detectors(const std::vector<Instruction> &block) {
    uint64_t n = 0;
    for (const Instruction &inst : block) {
        if (inst.op == OpCode::DETECTOR) {
            n++;
        } else if (inst.op == OpCode::REPEAT) {
            n += saturating_mul(inst.repeat_count, count_detectors(inst.body));
        }
    }
    return n;
}

// Validation walk for programs built in code.
void scan_block(const std::vector<Instruction> &block, ProgramScan &scan, uint64_t &measured) {
    for (const Instruction &inst : block) {
        std::string err = check_shape(inst);
        if (err.empty()) {
            err = check_lookbacks(inst, measured);
        }
        if (!err.empty()) {
            throw ParseError(0, err);
        }
        note_targets(inst, scan);
        if (inst.op == OpCode::REPEAT) {
            uint64_t start = measured;
            scan_block(inst.body, scan, measured);
            measured = start + inst.measurement_count();
        } else {
            measured += inst.measurement_count();
        }
    }
}

struct Item {
    enum class Kind { STATEMENT, OPEN, CLOSE };
    Kind kind;
    std::string text;
    size_t line;
};

std::vector<Item> split_items(std::string_view text) {
    std::vector<Item> items;
    size_t line = 1;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view raw = text.substr(pos, end - pos);
        size_t hash = raw.find('#');
        if (hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        std::string cur;
        auto flush = [&]() {
            size_t a = cur.find_first_not_of(" \t\r");
            if (a != std::string::npos) {
                size_t b = cur.find_last_not_of(" \t\r");
                items.push_back({Item::Kind::STATEMENT, cur.substr(a, b - a + 1), line});
            }
            cur.clear();
        };
        for (char c : raw) {
            if (c == '{' || c == '}' || c == ';') {
                flush();
                if (c == '{') {
                    items.push_back({Item::Kind::OPEN, "", line});
                } else if (c == '}') {
                    items.push_back({Item::Kind::CLOSE, "", line});
                }
            } else {
                cur.push_back(c);
            }
        }
        flush();
        line++;
        pos = end + 1;
    }
    return items;
}

template <typename T>
bool parse_int(std::string_view s, T &out) {
    if (s.empty()) {
        return false;
    }
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

double parse_arg(std::string_view s, size_t line) {
    size_t a = s.find_first_not_of(" \t");
    size_t b = s.find_last_not_of(" \t");
    if (a == std::string_view::npos) {
        throw ParseError(line, "empty argument");
    }
    s = s.substr(a, b - a + 1);
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ParseError(line, "bad argument '" + std::string(s) + "'");
    }
    return v;
}

Target parse_target(std::string_view tok, size_t line) {
    if (tok == "*") {
        return Target::combiner();
    }
    std::string up = upper(tok);
    if (up.starts_with("REC[")) {
        if (!up.ends_with("]")) {
            throw ParseError(line, "malformed record target '" + std::string(tok) + "'");
        }
        std::string_view inner = std::string_view(tok).substr(4, tok.size() - 5);
        int64_t k = 0;
        if (!parse_int(inner, k)) {
            throw ParseError(line, "malformed record target '" + std::string(tok) + "'");
        }
        if (k >= 0) {
            throw ParseError(line, "lookbacks must be strictly negative, got '" + std::string(tok) + "'");
        }
        if (k < -int64_t{UINT32_MAX}) {
            throw ParseError(line, "lookback too large");
        }
        return Target::rec(static_cast<uint32_t>(-k));
    }
    bool inverted = false;
    std::string_view rest = tok;
    if (rest.starts_with('!')) {
        inverted = true;
        rest.remove_prefix(1);
    }
    char pauli = 0;
    if (!rest.empty() && std::isalpha(static_cast<unsigned char>(rest[0]))) {
        pauli = static_cast<char>(std::toupper(static_cast<unsigned char>(rest[0])));
        if (pauli != 'X' && pauli != 'Y' && pauli != 'Z') {
            throw ParseError(line, "bad target '" + std::string(tok) + "'");
        }
        rest.remove_prefix(1);
    }
    uint32_t q = 0;
    if (!parse_int(rest, q) || q >= (uint32_t{1} << 24)) {
        throw ParseError(line, "bad target '" + std::string(tok) + "'");
    }
    if (pauli) {
        return Target::pauli_term(pauli, q, inverted);
    }
    return Target::qubit(q, inverted);
}

struct Parser {
    std::vector<Item> items;
    size_t pos = 0;
    uint64_t measured = 0;

    Instruction parse_statement(const Item &item, uint64_t &repeat_out) {
        std::string_view s = item.text;
        size_t name_end = 0;
        while (name_end < s.size() && s[name_end] != '(' && !std::isspace(static_cast<unsigned char>(s[name_end]))) {
            name_end++;
        }
        std::string name = upper(s.substr(0, name_end));
        std::string_view rest = s.substr(name_end);
        Instruction inst;
        bool found = false;
        for (const OpName &n : kOpNames) {
            if (n.name == name) {
                inst.op = n.op;
                found = true;
                break;
            }
        }
        if (!found) {
            auto g = gate_from_name(name);
            if (!g) {
                throw ParseError(item.line, "unknown opcode '" + std::string(s.substr(0, name_end)) + "'");
            }
            inst.op = OpCode::CLIFFORD;
            inst.gate = *g;
        }
        size_t first = rest.find_first_not_of(" \t");
        if (first != std::string_view::npos && rest[first] == '(') {
            if (first != 0) {
                throw ParseError(item.line, "space before '('");
            }
            size_t close = rest.find(')');
            if (close == std::string_view::npos) {
                throw ParseError(item.line, "unclosed '('");
            }
            std::string_view inner = rest.substr(1, close - 1);
            size_t p = 0;
            while (true) {
                size_t comma = inner.find(',', p);
                std::string_view piece = inner.substr(p, comma == std::string_view::npos ? std::string_view::npos : comma - p);
                inst.args.push_back(parse_arg(piece, item.line));
                if (comma == std::string_view::npos) {
                    break;
                }
                p = comma + 1;
            }
            rest = rest.substr(close + 1);
        }
        std::string spaced;
        for (char c : rest) {
            if (c == '*') {
                spaced += " * ";
            } else {
                spaced.push_back(c);
            }
        }
        std::istringstream in(spaced);
        std::string tok;
        std::vector<std::string> toks;
        while (in >> tok) {
            toks.push_back(tok);
        }
        if (inst.op == OpCode::REPEAT) {
            if (!inst.args.empty() || toks.size() != 1 || !parse_int(std::string_view(toks[0]), repeat_out) ||
                repeat_out < 1) {
                throw ParseError(item.line, "REPEAT needs a positive integer count");
            }
            inst.repeat_count = repeat_out;
            return inst;
        }
        for (const std::string &t : toks) {
            Target target = parse_target(t, item.line);
            if (target.kind == Target::Kind::PAULI && inst.op != OpCode::MPP) {
                throw ParseError(item.line, "Pauli targets are only allowed in MPP");
            }
            inst.targets.push_back(target);
        }
        std::string err = check_shape(inst);
        if (err.empty()) {
            err = check_lookbacks(inst, measured);
        }
        if (!err.empty()) {
            throw ParseError(item.line, err);
        }
        return inst;
    }

    std::vector<Instruction> parse_block(size_t depth, size_t open_line) {
        std::vector<Instruction> out;
        while (pos < items.size()) {
            const Item &item = items[pos];
            if (item.kind == Item::Kind::CLOSE) {
                if (depth == 0) {
                    throw ParseError(item.line, "unbalanced '}'");
                }
                pos++;
                return out;
            }
            if (item.kind == Item::Kind::OPEN) {
                throw ParseError(item.line, "unexpected '{'");
            }
            pos++;
            uint64_t count = 0;
            Instruction inst = parse_statement(item, count);
            if (inst.op == OpCode::REPEAT) {
                if (pos >= items.size() || items[pos].kind != Item::Kind::OPEN) {
                    throw ParseError(item.line, "REPEAT must be followed by '{'");
                }
                pos++;
                uint64_t start = measured;
                inst.body = parse_block(depth + 1, item.line);
                measured = start + inst.measurement_count();
            } else {
                measured += inst.measurement_count();
            }
            out.push_back(std::move(inst));
        }
        if (depth > 0) {
            throw ParseError(open_line, "unbalanced braces: REPEAT block is never closed");
        }
        return out;
    }
};

struct StatsWalker {
    CircuitStats stats;
    std::set<uint32_t> t_support;
    bool layer_nonempty = false;
    bool layer_has_t = false;

    void close_layer() {
        if (layer_nonempty) {
            stats.depth++;
        }
        if (layer_has_t) {
            stats.t_depth++;
        }
        layer_nonempty = false;
        layer_has_t = false;
    }

    void walk(const std::vector<Instruction> &block) {
        for (const Instruction &inst : block) {
            switch (inst.op) {
                case OpCode::CLIFFORD: {
                    uint64_t applied = 0;
                    if (is_two_qubit(inst.gate)) {
                        for (size_t k = 0; k < inst.targets.size(); k += 2) {
                            if (inst.targets[k].is_qubit() && inst.targets[k + 1].is_qubit()) {
                                applied++;
                            }
                        }
                        stats.two_qubit_gates += applied;
                    } else if (!inst.is_conditional()) {
                        applied = inst.targets.size();
                    }
                    stats.total_gates += applied;
                    layer_nonempty |= applied > 0;
                    break;
                }
                case OpCode::T:
                case OpCode::T_DAG:
                    stats.t_count += inst.targets.size();
                    stats.total_gates += inst.targets.size();
                    for (const Target &t : inst.targets) {
                        t_support.insert(t.value);
                    }
                    layer_nonempty |= !inst.targets.empty();
                    layer_has_t |= !inst.targets.empty();
                    break;
                case OpCode::TICK:
                    close_layer();
                    break;
                case OpCode::REPEAT:
                    for (uint64_t k = 0; k < inst.repeat_count; k++) {
                        walk(inst.body);
                    }
                    break;
                default:
                    if (is_measurement(inst.op) || is_reset(inst.op)) {
                        stats.measurements += inst.measurement_count();
                        layer_nonempty |= !inst.targets.empty();
                    }
                    break;
            }
        }
    }
};

void append_instruction(std::string &out, const Instruction &inst, size_t indent) {
    out.append(indent, ' ');
    if (inst.op == OpCode::REPEAT) {
        out += "REPEAT " + std::to_string(inst.repeat_count) + " {\n";
        for (const Instruction &b : inst.body) {
            append_instruction(out, b, indent + 4);
        }
        out.append(indent, ' ');
        out += "}\n";
        return;
    }
    out += inst.op == OpCode::CLIFFORD ? std::string(gate_name(inst.gate)) : std::string(opcode_name(inst.op));
    if (!inst.args.empty()) {
        out += '(';
        for (size_t k = 0; k < inst.args.size(); k++) {
            if (k) {
                out += ", ";
            }
            out += format_double(inst.args[k]);
        }
        out += ')';
    }
    bool after_combiner = false;
    for (const Target &t : inst.targets) {
        if (t.kind == Target::Kind::COMBINER) {
            out += '*';
            after_combiner = true;
            continue;
        }
        if (!after_combiner) {
            out += ' ';
        }
        after_combiner = false;
        out += t.str();
    }
    out += '\n';
}

bool block_has_noise(const std::vector<Instruction> &block) {
    for (const Instruction &inst : block) {
        if (is_noise(inst.op)) {
            return true;
        }
        if ((is_measurement(inst.op)) && !inst.args.empty()) {
            return true;
        }
        if (inst.op == OpCode::REPEAT && block_has_noise(inst.body)) {
            return true;
        }
    }
    return false;
}

}  // namespace

ParseError::ParseError(size_t line, const std::string &message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {
}

std::string_view opcode_name(OpCode op) {
    switch (op) {
        case OpCode::CLIFFORD:
            return "CLIFFORD";
        case OpCode::REPEAT:
            return "REPEAT";
        default:
            break;
    }
    for (const OpName &n : kOpNames) {
        if (n.op == op) {
            return n.name;
        }
    }
    return "?";
}

bool is_noise(OpCode op) {
    return op == OpCode::DEPOLARIZE1 || op == OpCode::DEPOLARIZE2 || op == OpCode::X_ERROR || op == OpCode::Y_ERROR ||
           op == OpCode::Z_ERROR;
}

bool is_measurement(OpCode op) {
    return op == OpCode::M || op == OpCode::MX || op == OpCode::MY || op == OpCode::MR || op == OpCode::MRX ||
           op == OpCode::MRY || op == OpCode::MPP;
}

bool is_reset(OpCode op) {
    return op == OpCode::R || op == OpCode::RX || op == OpCode::RY || op == OpCode::MR || op == OpCode::MRX ||
           op == OpCode::MRY;
}

char basis_of(OpCode op) {
    switch (op) {
        case OpCode::M:
        case OpCode::MR:
        case OpCode::R:
            return 'Z';
        case OpCode::MX:
        case OpCode::MRX:
        case OpCode::RX:
            return 'X';
        case OpCode::MY:
        case OpCode::MRY:
        case OpCode::RY:
            return 'Y';
        default:
            return 0;
    }
}

std::string Target::str() const {
    switch (kind) {
        case Kind::QUBIT:
            return (inverted ? "!" : "") + std::to_string(value);
        case Kind::REC:
            return "rec[-" + std::to_string(value) + "]";
        case Kind::PAULI:
            return (inverted ? "!" : "") + std::string(1, pauli) + std::to_string(value);
        case Kind::COMBINER:
            return "*";
    }
    return "?";
}

uint64_t Instruction::measurement_count() const {
    switch (op) {
        case OpCode::M:
        case OpCode::MX:
        case OpCode::MY:
        case OpCode::MR:
        case OpCode::MRX:
        case OpCode::MRY:
            return targets.size();
        case OpCode::MPP: {
            uint64_t n = 0;
            for (size_t k = 0; k < targets.size(); k++) {
                if (targets[k].kind == Target::Kind::PAULI && (k == 0 || targets[k - 1].kind != Target::Kind::COMBINER)) {
                    n++;
                }
            }
            return n;
        }
        case OpCode::REPEAT: {
            uint64_t per = 0;
            for (const Instruction &b : body) {
                per += b.measurement_count();
            }
            return saturating_mul(per, repeat_count);
        }
        default:
            return 0;
    }
}

std::vector<std::vector<Target>> Instruction::mpp_products() const {
    std::vector<std::vector<Target>> out;
    for (size_t k = 0; k < targets.size(); k++) {
        if (targets[k].kind == Target::Kind::COMBINER) {
            continue;
        }
        if (k == 0 || targets[k - 1].kind != Target::Kind::COMBINER) {
            out.emplace_back();
        }
        out.back().push_back(targets[k]);
    }
    return out;
}

bool Instruction::is_conditional() const {
    return op == OpCode::CLIFFORD && std::any_of(targets.begin(), targets.end(), [](const Target &t) { return t.is_rec(); });
}

std::string Instruction::str() const {
    std::string out;
    append_instruction(out, *this, 0);
    out.pop_back();
    return out;
}

bool CircuitProgram::has_noise() const {
    return block_has_noise(instructions);
}

std::string CircuitProgram::str() const {
    std::string out;
    for (const Instruction &inst : instructions) {
        append_instruction(out, inst, 0);
    }
    return out;
}

CircuitProgram parse_circuit(std::string_view text) {
    Parser parser;
    parser.items = split_items(text);
    CircuitProgram prog;
    prog.instructions = parser.parse_block(0, 0);
    finalize_program(prog);
    return prog;
}

CircuitProgram parse_circuit_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open circuit file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_circuit(ss.str());
}

void finalize_program(CircuitProgram &prog) {
    ProgramScan scan;
    uint64_t measured = 0;
    scan_block(prog.instructions, scan, measured);
    prog.num_qubits = scan.num_qubits;
    prog.num_measurements = measured;
    prog.num_detectors = count_detectors(prog.instructions);
    prog.num_observables = scan.num_observables;
}

CircuitStats compute_stats(const CircuitProgram &prog) {
    StatsWalker w;
    w.walk(prog.instructions);
    w.close_layer();
    w.stats.total_qubits = prog.num_qubits;
    w.stats.t_support_size = w.t_support.size();
    return w.stats;
}

bool resolve_detector(std::span<const Target> lookbacks, std::span<const uint8_t> record) {
    bool parity = false;
    for (const Target &t : lookbacks) {
        if (!t.is_rec() || t.value == 0 || t.value > record.size()) {
            throw std::out_of_range("lookback " + t.str() + " is out of range for a record of " +
                                    std::to_string(record.size()) + " bits");
        }
        parity ^= record[record.size() - t.value] & 1;
    }
    return parity;
}

}  // namespace gsim
