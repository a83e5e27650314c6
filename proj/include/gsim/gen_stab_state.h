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

#ifndef GSIM_GEN_STAB_STATE_H
#define GSIM_GEN_STAB_STATE_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsim/tableau.h"

namespace gsim {

using Complex = std::complex<double>;

/// Amplitudes with magnitude below this are dropped after merges and
/// measurements.
inline constexpr double kPruneThreshold = 1e-12;
inline constexpr size_t kDefaultEntryCapacity = 4096;
/// Largest register dense_statevector will expand.
inline constexpr size_t kMaxDenseQubits = 14;

/// Thrown when a T gate would push |v| past the configured capacity. The state
/// is left exactly as it was before the gate.
class CapacityExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Both measurement branches have vanishing probability.
class CorruptStateError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct Amplitude {
    uint64_t index;
    Complex value;
};

struct MeasurementOutcome {
    /// +1 or -1.
    int sign = +1;
    /// Probability of the branch that was taken.
    double probability = 1;
    double prob_plus = 1;
    /// False when the observable was in the stabilizer group (no pivot).
    bool pivoted = false;
};

struct CosetAnalysis {
    std::vector<uint32_t> support;
    size_t r_q = 0;
    size_t log2_bound = 0;

    /// 2^(|Q| - r_Q), saturating at UINT64_MAX.
    uint64_t bound() const { return log2_bound >= 64 ? UINT64_MAX : uint64_t{1} << log2_bound; }
};

/// Open-addressing accumulator keyed by basis index. Holds two amplitude
/// lanes so a measurement can build both branches in one pass. Insertion
/// order is preserved.
class AmplitudeAccumulator {
   public:
    void reserve(size_t max_entries);
    void clear();
    /// Position of key in keys(), inserting zero amplitudes if absent.
    size_t locate(uint64_t key);

    size_t size() const { return keys_.size(); }
    std::vector<uint64_t> &keys() { return keys_; }
    std::vector<Complex> &lane_a() { return lane_a_; }
    std::vector<Complex> &lane_b() { return lane_b_; }

   private:
    std::vector<uint64_t> keys_;
    std::vector<Complex> lane_a_;
    std::vector<Complex> lane_b_;
    std::vector<uint32_t> table_;      // 0 = empty, else position + 1
    std::vector<uint32_t> table_pos_;  // table slot of each key, for clearing
    uint64_t mask_ = 0;
    unsigned shift_ = 64;
};

/// Pure state sum_alpha v_alpha d_alpha |psi_S> over the basis induced by a
/// stabilizer/destabilizer tableau. Global phase is not tracked.
class GenStabState {
   public:
    /// |0...0> on num_qubits qubits with room for `capacity` amplitudes.
    explicit GenStabState(size_t num_qubits, size_t capacity = kDefaultEntryCapacity);

    /// Back to |0...0> without reallocating.
    void reset();

    size_t num_qubits() const { return tableau_.num_qubits(); }
    size_t capacity() const { return capacity_; }
    /// |v|, the number of stored amplitudes.
    size_t size() const { return entries_.size(); }
    const Tableau &tableau() const { return tableau_; }
    std::span<const Amplitude> entries() const { return entries_; }
    /// Entries ordered by basis index.
    std::vector<Amplitude> sorted_entries() const;
    double norm_squared() const;

    /// Conjugates the tableau; amplitudes are untouched.
    void apply_clifford(Gate gate, std::span<const uint32_t> targets);

    /// Permutes amplitudes by the index shift of e with phases xi_alpha(e).
    /// e must be Hermitian.
    void apply_pauli(const PauliString &e);
    void apply_pauli(const PauliRow &e);

    /// Samples an outcome of the Hermitian observable p (outcome +1 iff
    /// u < P(+1)) and collapses onto it.
    MeasurementOutcome measure_pauli(const PauliString &p, double u);
    MeasurementOutcome measure_pauli(const PauliRow &p, double u);

    /// T (or T^dagger) on qubit q. Throws CapacityExceeded when the result
    /// would not fit; the state is unchanged in that case.
    void apply_t(uint32_t q, bool dagger);

    /// Rank of the Z-type stabilizer subgroup supported inside `support` and
    /// the resulting branch-count bound for a diagonal T layer on it.
    CosetAnalysis coset_bound(std::span<const uint32_t> support) const;

    /// Dense 2^n amplitude vector (qubit k is bit k of the index), up to a
    /// global phase. Requires num_qubits() <= kMaxDenseQubits.
    std::vector<Complex> dense_statevector() const;

    /// Diagnostic dump: tableau rows followed by sorted amplitudes.
    std::string str() const;

   private:
    void commit(std::vector<Complex> &lane, double scale);

    Tableau tableau_;
    std::vector<Amplitude> entries_;
    size_t capacity_;
    AmplitudeAccumulator scratch_;
};

}  // namespace gsim

#endif
