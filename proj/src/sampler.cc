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

#include "gsim/sampler.h"

#include <atomic>
#include <barrier>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "gsim/noise.h"
#include "gsim/rng.h"
#include "gsim/shot.h"

namespace gsim {

namespace {

constexpr uint64_t kMaxTrackedDetectors = uint64_t{1} << 20;

struct Tally {
    uint64_t preserved = 0;
    uint64_t discarded = 0;
    uint64_t overflow = 0;
    uint64_t errors = 0;
    uint64_t reruns = 0;
    uint64_t logical = 0;
    std::vector<uint64_t> per_observable;
    std::vector<uint64_t> per_detector;
    size_t max_entries = 0;
    uint64_t first_error_shot = UINT64_MAX;
    std::string first_error;
};

class Worker {
   public:
    Worker(const CircuitProgram &prog, const SamplerConfig &cfg) : prog_(prog), cfg_(cfg) {
        tally.per_observable.resize(prog.num_observables);
        if (prog.num_detectors <= kMaxTrackedDetectors) {
            tally.per_detector.resize(prog.num_detectors);
        }
    }

    void run(uint64_t shot) {
        uint64_t seed = derive_seed(cfg_.master_seed, shot);
        for (int level = 0;; level++) {
            ShotContext &ctx = context(level);
            ctx.reset(seed);
            ShotResult r;
            try {
                r = run_shot(prog_, ctx, cfg_.postselect);
            } catch (const std::exception &e) {
                r.status = ShotStatus::ERROR;
                r.diagnostic = e.what();
            }
            tally.max_entries = std::max(tally.max_entries, r.max_entries);
            if (r.status == ShotStatus::OVERFLOW && cfg_.rerun_on_overflow && level < cfg_.max_doublings) {
                tally.reruns++;
                continue;
            }
            switch (r.status) {
                case ShotStatus::PRESERVED: {
                    tally.preserved++;
                    bool any = false;
                    for (size_t k = 0; k < ctx.observables.size(); k++) {
                        if (ctx.observables[k]) {
                            tally.per_observable[k]++;
                            any = true;
                        }
                    }
                    tally.logical += any;
                    break;
                }
                case ShotStatus::DISCARDED:
                    tally.discarded++;
                    if (r.detector_index < tally.per_detector.size()) {
                        tally.per_detector[r.detector_index]++;
                    }
                    break;
                case ShotStatus::OVERFLOW:
                    tally.overflow++;
                    break;
                default:
                    tally.errors++;
                    if (shot < tally.first_error_shot) {
                        tally.first_error_shot = shot;
                        tally.first_error = "shot " + std::to_string(shot) + ", instruction " +
                                            std::to_string(r.instruction_index) + ": " + r.diagnostic;
                    }
                    break;
            }
            return;
        }
    }

    Tally tally;

   private:
    ShotContext &context(int level) {
        while (contexts_.size() <= static_cast<size_t>(level)) {
            size_t cap = cfg_.entry_capacity << contexts_.size();
            contexts_.push_back(std::make_unique<ShotContext>(prog_, cap));
        }
        return *contexts_[level];
    }

    const CircuitProgram &prog_;
    const SamplerConfig &cfg_;
    std::vector<std::unique_ptr<ShotContext>> contexts_;
};

double rate(uint64_t num, uint64_t den) {
    return den ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
}

}  // namespace

void SamplerConfig::validate() const {
    if (batch_size < 1) {
        throw std::invalid_argument("batch size must be at least 1");
    }
    if (entry_capacity < 2) {
        throw std::invalid_argument("entry capacity must be at least 2");
    }
    if (threads < 1) {
        throw std::invalid_argument("thread count must be at least 1");
    }
    if (max_doublings < 0 || max_doublings > 16) {
        throw std::invalid_argument("max doublings must be in [0, 16]");
    }
}

bool RunStats::same_counts(const RunStats &o) const {
    return total_shots == o.total_shots && preserved_shots == o.preserved_shots &&
           discarded_shots == o.discarded_shots && overflow_count == o.overflow_count &&
           error_shots == o.error_shots && overflow_reruns == o.overflow_reruns && logical_errors == o.logical_errors &&
           logical_errors_per_observable == o.logical_errors_per_observable &&
           discards_per_detector == o.discards_per_detector && max_entries == o.max_entries;
}

std::string RunStats::to_json(bool include_timing) const {
    nlohmann::ordered_json j;
    j["total_shots"] = total_shots;
    j["preserved_shots"] = preserved_shots;
    j["discarded_shots"] = discarded_shots;
    j["discard_rate"] = discard_rate;
    j["logical_errors"] = logical_errors;
    j["logical_errors_per_observable"] = logical_errors_per_observable;
    j["logical_error_rate"] = logical_error_rate;
    j["bayes_lo"] = bayes_lo;
    j["bayes_hi"] = bayes_hi;
    j["overflow_count"] = overflow_count;
    j["overflow_reruns"] = overflow_reruns;
    j["error_shots"] = error_shots;
    j["max_entries"] = max_entries;
    j["discards_per_detector"] = discards_per_detector;
    if (!first_error.empty()) {
        j["first_error"] = first_error;
    }
    if (include_timing) {
        j["wall_time_s"] = wall_time_s;
        j["throughput"] = throughput;
    }
    return j.dump();
}

std::string RunStats::summary_line() const {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "shots=%llu preserved=%llu discard_rate=%.4f%% logical_errors=%llu ler=%.3e bayes1000=[%.3e, %.3e]",
                  static_cast<unsigned long long>(total_shots), static_cast<unsigned long long>(preserved_shots),
                  100 * discard_rate, static_cast<unsigned long long>(logical_errors), logical_error_rate, bayes_lo,
                  bayes_hi);
    return buf;
}

RunStats run_batch(const CircuitProgram &prog, const SamplerConfig &cfg) {
    cfg.validate();
    // Surfaces oversized programs as a usage error before any thread starts.
    ShotContext probe(prog, cfg.entry_capacity);

    auto start = std::chrono::steady_clock::now();
    size_t nthreads = static_cast<size_t>(std::min<uint64_t>(cfg.threads, std::max<uint64_t>(cfg.shots, 1)));
    std::vector<std::unique_ptr<Worker>> workers;
    for (size_t k = 0; k < nthreads; k++) {
        workers.push_back(std::make_unique<Worker>(prog, cfg));
    }

    if (cfg.shots > 0) {
        std::atomic<uint64_t> next{0};
        uint64_t wave_end = std::min<uint64_t>(cfg.shots, cfg.batch_size);
        bool done = false;
        auto advance = [&]() noexcept {
            if (wave_end >= cfg.shots) {
                done = true;
                return;
            }
            next.store(wave_end);
            wave_end = std::min<uint64_t>(cfg.shots, wave_end + cfg.batch_size);
        };
        std::barrier sync(static_cast<std::ptrdiff_t>(nthreads), advance);
        auto body = [&](Worker &w) {
            while (!done) {
                uint64_t end = wave_end;
                for (uint64_t i = next.fetch_add(1); i < end; i = next.fetch_add(1)) {
                    w.run(i);
                }
                sync.arrive_and_wait();
            }
        };
        std::vector<std::thread> pool;
        for (size_t k = 1; k < nthreads; k++) {
            pool.emplace_back(body, std::ref(*workers[k]));
        }
        body(*workers[0]);
        for (auto &t : pool) {
            t.join();
        }
    }

    RunStats s;
    s.total_shots = cfg.shots;
    s.logical_errors_per_observable.assign(prog.num_observables, 0);
    if (prog.num_detectors <= kMaxTrackedDetectors) {
        s.discards_per_detector.assign(prog.num_detectors, 0);
    }
    uint64_t first_error_shot = UINT64_MAX;
    for (auto &w : workers) {
        const Tally &t = w->tally;
        s.preserved_shots += t.preserved;
        s.discarded_shots += t.discarded;
        s.overflow_count += t.overflow;
        s.error_shots += t.errors;
        s.overflow_reruns += t.reruns;
        s.logical_errors += t.logical;
        for (size_t k = 0; k < t.per_observable.size(); k++) {
            s.logical_errors_per_observable[k] += t.per_observable[k];
        }
        for (size_t k = 0; k < t.per_detector.size(); k++) {
            s.discards_per_detector[k] += t.per_detector[k];
        }
        s.max_entries = std::max(s.max_entries, t.max_entries);
        if (t.first_error_shot < first_error_shot) {
            first_error_shot = t.first_error_shot;
            s.first_error = t.first_error;
        }
    }
    s.discard_rate = rate(s.discarded_shots, s.total_shots);
    s.logical_error_rate = rate(s.logical_errors, s.preserved_shots);
    if (s.preserved_shots > 0) {
        std::tie(s.bayes_lo, s.bayes_hi) = bayes_interval(s.logical_errors, s.preserved_shots);
    }
    s.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    s.throughput = s.wall_time_s > 0 ? static_cast<double>(s.total_shots) / s.wall_time_s : 0;
    return s;
}

std::pair<double, double> bayes_interval(uint64_t k, uint64_t n, double factor) {
    if (n == 0) {
        throw std::invalid_argument("bayes_interval needs at least one trial");
    }
    if (k > n) {
        throw std::invalid_argument("bayes_interval: more errors than trials");
    }
    if (!(factor >= 1)) {
        throw std::invalid_argument("bayes_interval: factor must be at least 1");
    }
    double kd = static_cast<double>(k);
    double rest = static_cast<double>(n - k);
    auto log_likelihood = [&](double p) {
        double r = 0;
        if (k > 0) {
            r += kd * std::log(p);
        }
        if (n > k) {
            r += rest * std::log1p(-p);
        }
        return r;
    };
    double p_hat = kd / static_cast<double>(n);
    double target = log_likelihood(p_hat) - std::log(factor);
    // Root of log_likelihood(p) = target between `inside` (above target) and
    // `outside` (below it).
    auto bisect = [&](double inside, double outside) {
        for (int it = 0; it < 200; it++) {
            double mid = 0.5 * (inside + outside);
            if (mid == inside || mid == outside) {
                break;
            }
            if (log_likelihood(mid) >= target) {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        return inside;
    };
    double lo = k == 0 ? 0.0 : bisect(p_hat, 0.0);
    double hi = k == n ? 1.0 : bisect(p_hat, 1.0);
    return {lo, hi};
}

std::vector<BenchRow> throughput_bench(
    const CircuitProgram &prog, const SamplerConfig &cfg, SweepKind kind, std::span<const double> values) {
    std::vector<BenchRow> rows;
    if (cfg.shots == 0) {
        return rows;
    }
    for (double v : values) {
        SamplerConfig c = cfg;
        RunStats s;
        if (kind == SweepKind::BATCH_SIZE) {
            if (!(v >= 1) || v != std::floor(v)) {
                throw std::invalid_argument("batch size sweep values must be positive integers");
            }
            c.batch_size = static_cast<size_t>(v);
            s = run_batch(prog, c);
        } else {
            s = run_batch(apply_noise_model(prog, v), c);
        }
        rows.push_back({v, s.throughput, s.discard_rate});
    }
    return rows;
}

std::string bench_csv(SweepKind kind, std::span<const BenchRow> rows) {
    std::ostringstream out;
    out << (kind == SweepKind::BATCH_SIZE ? "batch_size" : "noise") << ",shots_per_s,discard_rate\n";
    for (const BenchRow &r : rows) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%.10g,%.6g,%.6f\n", r.value, r.shots_per_s, r.discard_rate);
        out << buf;
    }
    return out.str();
}

}  // namespace gsim
