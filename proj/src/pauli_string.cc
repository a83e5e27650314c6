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

#include "gsim/pauli_string.h"

#include <stdexcept>

namespace gsim {

namespace {

size_t words_for(size_t num_qubits) {
    return (num_qubits + 63) / 64;
}

void require_same_size(const PauliString &a, const PauliString &b, const char *what) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument(
            std::string(what) + ": Pauli strings have different lengths (" + std::to_string(a.num_qubits()) +
            " vs " + std::to_string(b.num_qubits()) + ")");
    }
}

}  // namespace

PauliString::PauliString(size_t num_qubits)
    : num_qubits_(num_qubits), xs_(words_for(num_qubits), 0), zs_(words_for(num_qubits), 0) {
}

PauliString PauliString::from_str(std::string_view text) {
    int phase = 0;
    size_t k = 0;
    if (k < text.size() && (text[k] == '+' || text[k] == '-')) {
        if (text[k] == '-') {
            phase = 2;
        }
        k++;
    }
    if (k < text.size() && text[k] == 'i') {
        phase += 1;
        k++;
    }
    PauliString result(text.size() - k);
    for (size_t q = 0; k < text.size(); k++, q++) {
        result.set_letter(q, text[k]);
    }
    result.set_phase_exp(phase);
    return result;
}

PauliString PauliString::single(size_t num_qubits, size_t qubit, char letter) {
    if (qubit >= num_qubits) {
        throw std::invalid_argument("qubit " + std::to_string(qubit) + " out of range");
    }
    PauliString result(num_qubits);
    result.set_letter(qubit, letter);
    return result;
}

char PauliString::letter(size_t q) const {
    static constexpr char kLetters[4] = {'_', 'X', 'Z', 'Y'};
    return kLetters[(x(q) ? 1 : 0) | (z(q) ? 2 : 0)];
}

void PauliString::set_letter(size_t q, char letter) {
    bool bx;
    bool bz;
    switch (letter) {
        case 'I':
        case '_':
            bx = false;
            bz = false;
            break;
        case 'X':
            bx = true;
            bz = false;
            break;
        case 'Y':
            bx = true;
            bz = true;
            break;
        case 'Z':
            bx = false;
            bz = true;
            break;
        default:
            throw std::invalid_argument(std::string("not a Pauli letter: '") + letter + "'");
    }
    uint64_t mask = uint64_t{1} << (q & 63);
    xs_[q >> 6] = bx ? (xs_[q >> 6] | mask) : (xs_[q >> 6] & ~mask);
    zs_[q >> 6] = bz ? (zs_[q >> 6] | mask) : (zs_[q >> 6] & ~mask);
}

void PauliString::xor_letter(size_t q, bool bx, bool bz) {
    xs_[q >> 6] ^= uint64_t{bx} << (q & 63);
    zs_[q >> 6] ^= uint64_t{bz} << (q & 63);
}

bool PauliString::is_identity_letters() const {
    for (size_t w = 0; w < xs_.size(); w++) {
        if (xs_[w] | zs_[w]) {
            return false;
        }
    }
    return true;
}

size_t PauliString::weight() const {
    size_t total = 0;
    for (size_t w = 0; w < xs_.size(); w++) {
        total += std::popcount(xs_[w] | zs_[w]);
    }
    return total;
}

PauliString &PauliString::operator*=(const PauliString &rhs) {
    require_same_size(*this, rhs, "pauli_mul");
    int log_i = phase_exp_ + rhs.phase_exp_;
    for (size_t w = 0; w < xs_.size(); w++) {
        log_i += product_log_i(xs_[w], zs_[w], rhs.xs_[w], rhs.zs_[w]);
        xs_[w] ^= rhs.xs_[w];
        zs_[w] ^= rhs.zs_[w];
    }
    phase_exp_ = static_cast<uint8_t>(log_i & 3);
    return *this;
}

std::string PauliString::str() const {
    static constexpr const char *kPrefix[4] = {"+", "+i", "-", "-i"};
    std::string result = kPrefix[phase_exp_];
    for (size_t q = 0; q < num_qubits_; q++) {
        result.push_back(letter(q));
    }
    return result;
}

PauliString pauli_mul(const PauliString &a, const PauliString &b) {
    PauliString result = a;
    result *= b;
    return result;
}

bool commutes(const PauliString &a, const PauliString &b) {
    require_same_size(a, b, "commutes");
    uint64_t parity = 0;
    auto ax = a.xs();
    auto az = a.zs();
    auto bx = b.xs();
    auto bz = b.zs();
    for (size_t w = 0; w < ax.size(); w++) {
        parity ^= (ax[w] & bz[w]) ^ (az[w] & bx[w]);
    }
    return (std::popcount(parity) & 1) == 0;
}

}  // namespace gsim
