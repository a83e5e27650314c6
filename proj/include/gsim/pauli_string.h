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

#ifndef GSIM_PAULI_STRING_H
#define GSIM_PAULI_STRING_H

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gsim {

/// Phase exponent contributed by multiplying the Pauli letters packed in one
/// word pair (x1, z1) by the letters in (x2, z2), as a signed count of i
/// factors. Letters are encoded I=(0,0), X=(1,0), Y=(1,1), Z=(0,1).
inline int product_log_i(uint64_t x1, uint64_t z1, uint64_t x2, uint64_t z2) {
    // XY=iZ, YZ=iX, ZX=iY contribute +i; the reversed orders contribute -i.
    uint64_t plus = (x1 & ~z1 & x2 & z2) | (x1 & z1 & ~x2 & z2) | (~x1 & z1 & x2 & ~z2);
    uint64_t minus = (x1 & z1 & x2 & ~z2) | (~x1 & z1 & x2 & z2) | (x1 & ~z1 & ~x2 & z2);
    return std::popcount(plus) - std::popcount(minus);
}

/// An n-qubit Pauli operator i^phase_exp * P_0 (x) ... (x) P_{n-1}, bit-packed
/// into 64-bit words.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(size_t num_qubits);

    /// Parses "+XYZ_", "-iXZ", "iI", "ZZ". '_' and 'I' are identity letters.
    static PauliString from_str(std::string_view text);
    /// Single-letter Pauli on one qubit of an n-qubit register.
    static PauliString single(size_t num_qubits, size_t qubit, char letter);

    size_t num_qubits() const { return num_qubits_; }
    size_t num_words() const { return xs_.size(); }
    uint8_t phase_exp() const { return phase_exp_; }
    void set_phase_exp(int e) { phase_exp_ = static_cast<uint8_t>(e & 3); }

    bool x(size_t q) const { return (xs_[q >> 6] >> (q & 63)) & 1; }
    bool z(size_t q) const { return (zs_[q >> 6] >> (q & 63)) & 1; }
    char letter(size_t q) const;
    void set_letter(size_t q, char letter);
    /// Multiplies the letter at q into this string, ignoring the phase.
    void xor_letter(size_t q, bool x, bool z);

    std::span<const uint64_t> xs() const { return xs_; }
    std::span<const uint64_t> zs() const { return zs_; }
    std::span<uint64_t> xs_mut() { return xs_; }
    std::span<uint64_t> zs_mut() { return zs_; }

    bool is_identity_letters() const;
    bool is_hermitian() const { return (phase_exp_ & 1) == 0; }
    size_t weight() const;

    /// this <- this * rhs, with exact phase.
    PauliString &operator*=(const PauliString &rhs);

    bool operator==(const PauliString &other) const = default;

    /// "+XYZ_", "-iX_Z" style rendering.
    std::string str() const;

   private:
    size_t num_qubits_ = 0;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    uint8_t phase_exp_ = 0;
};

/// Exact product a*b. Throws std::invalid_argument on a length mismatch.
PauliString pauli_mul(const PauliString &a, const PauliString &b);

/// True iff the symplectic inner product of a and b is even.
/// Throws std::invalid_argument on a length mismatch.
bool commutes(const PauliString &a, const PauliString &b);

}  // namespace gsim

#endif
