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

#ifndef GSIM_SAMPLER_H
#define GSIM_SAMPLER_H

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gsim/circuit.h"
#include "gsim/gen_stab_state.h"

namespace gsim {

struct SamplerConfig {
    uint64_t shots = 0;
    /// Shots issued per wave; contexts are reused between waves.
    size_t batch_size = 1024;
    uint64_t master_seed = 0;
    size_t entry_capacity = kDefaultEntryCapacity;
    size_t threads = 1;
    bool postselect = false;
    bool rerun_on_overflow = true;
    /// Capacity doublings tried before a shot is reported as an overflow.
    int max_doublings = 3;

    /// Throws std::invalid_argument.
    void validate() const;
};

struct RunStats {
    uint64_t total_shots = 0;
    uint64_t preserved_shots = 0;
    uint64_t discarded_shots = 0;
    uint64_t overflow_count = 0;
    /// Shots aborted by a corrupt state (both branches of a measurement ~0).
    uint64_t error_shots = 0;
    /// Re-executions at doubled capacity, successful or not.
    uint64_t overflow_reruns = 0;
    /// Preserved shots with at least one observable parity equal to 1.
    uint64_t logical_errors = 0;
    std::vector<uint64_t> logical_errors_per_observable;
    /// Detector index -> number of shots it discarded.
    std::vector<uint64_t> discards_per_detector;
    size_t max_entries = 0;
    std::string first_error;

    double discard_rate = 0;
    double logical_error_rate = 0;
    double bayes_lo = 0;
    double bayes_hi = 1;
    double wall_time_s = 0;
    double throughput = 0;

    /// Equality of everything except timing.
    bool same_counts(const RunStats &other) const;
    /// JSON object; timing fields are omitted when include_timing is false.
    std::string to_json(bool include_timing = true) const;
    /// One line: shots, preserved, discard rate, logical errors, rate, interval.
    std::string summary_line() const;
};

/// Executes cfg.shots independent shots. Results depend only on (prog, cfg
/// minus threads and batch_size).
RunStats run_batch(const CircuitProgram &prog, const SamplerConfig &cfg);

/// {p : Binom(k; n, p) >= Binom(k; n, k/n) / factor}. Throws
/// std::invalid_argument unless 0 <= k <= n and n >= 1.
std::pair<double, double> bayes_interval(uint64_t k, uint64_t n, double factor = 1000);

enum class SweepKind { BATCH_SIZE, NOISE };

struct BenchRow {
    double value = 0;
    double shots_per_s = 0;
    double discard_rate = 0;
};

/// Throughput over a sweep. A NOISE sweep applies the uniform model to `prog`,
/// which must then be noiseless.
std::vector<BenchRow> throughput_bench(
    const CircuitProgram &prog, const SamplerConfig &cfg, SweepKind kind, std::span<const double> values);
std::string bench_csv(SweepKind kind, std::span<const BenchRow> rows);

}  // namespace gsim

#endif
