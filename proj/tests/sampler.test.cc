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

#include <algorithm>
#include <bit>
#include <cmath>

#include "gtest/gtest.h"

#include "gsim/noise.h"
#include "gsim/rng.h"
#include "gsim/shot.h"

using namespace gsim;

namespace {

ShotResult one_shot(const std::string &text, bool postselect, uint64_t seed, ShotContext **out_ctx = nullptr) {
    static CircuitProgram prog;
    static std::unique_ptr<ShotContext> ctx;
    prog = parse_circuit(text);
    ctx = std::make_unique<ShotContext>(prog, 64);
    ctx->reset(seed);
    ShotResult r = run_shot(prog, *ctx, postselect);
    if (out_ctx) {
        *out_ctx = ctx.get();
    }
    return r;
}

constexpr const char *kNoisyDetectorCircuit = R"(
R 0 1 2
H 0
CX 0 1
T 1
CX 0 2
DEPOLARIZE1(0.05) 0 1 2
M 2
MX 0
DETECTOR rec[-1]
MR 1
DETECTOR rec[-1] rec[-3]
X_ERROR(0.1) 0
M 0
DETECTOR rec[-1]
OBSERVABLE_INCLUDE(0) rec[-2]
)";

}  // namespace

TEST(rng, derive_seed_golden_values) {
    // Reference digests from an independent SHA-1 implementation (Python hashlib).
    ASSERT_EQ(derive_seed(0, 0), 0x5cbc03517cf229e1ULL);
    ASSERT_EQ(derive_seed(1, 0), 0xf277fa7725448841ULL);
    ASSERT_EQ(derive_seed(0, 1), 0x5fc3451507e81e03ULL);
    ASSERT_EQ(derive_seed(12345, 67890), 0xee9517cff7bbe844ULL);
}

TEST(rng, derive_seed_has_no_small_range_collisions) {
    std::vector<uint64_t> seeds;
    seeds.reserve(1000000);
    for (uint64_t i = 0; i < 1000000; i++) {
        seeds.push_back(derive_seed(77, i));
    }
    std::sort(seeds.begin(), seeds.end());
    ASSERT_EQ(std::adjacent_find(seeds.begin(), seeds.end()), seeds.end());
}

TEST(rng, derive_seed_avalanche) {
    std::mt19937_64 rng(5);
    double total = 0;
    const int trials = 10000;
    for (int k = 0; k < trials; k++) {
        uint64_t m = rng();
        uint64_t i = rng();
        uint64_t flipped = m ^ (uint64_t{1} << (rng() % 64));
        total += std::popcount(derive_seed(m, i) ^ derive_seed(flipped, i));
    }
    ASSERT_NEAR(total / trials, 32, 0.5);
}

TEST(rng, uniform_range) {
    ShotRng r(1);
    for (int k = 0; k < 100000; k++) {
        double u = r.uniform();
        ASSERT_GE(u, 0);
        ASSERT_LT(u, 1);
    }
}

TEST(shot, measure_zero_state) {
    ShotContext *ctx = nullptr;
    ShotResult r = one_shot("M 0", false, 1, &ctx);
    ASSERT_EQ(r.status, ShotStatus::PRESERVED);
    ASSERT_EQ(ctx->record, std::vector<uint8_t>{0});
}

TEST(shot, forced_flip_discards) {
    ShotResult r = one_shot("X_ERROR(1) 0\nM 0\nDETECTOR rec[-1]", true, 1);
    ASSERT_EQ(r.status, ShotStatus::DISCARDED);
    ASSERT_EQ(r.detector_index, 0u);
    r = one_shot("X_ERROR(1) 0\nM 0\nDETECTOR rec[-1]", false, 1);
    ASSERT_EQ(r.status, ShotStatus::PRESERVED);
    ASSERT_EQ(r.first_fired_detector, 0);
}

TEST(shot, record_conventions) {
    ShotContext *ctx = nullptr;
    one_shot("X 0\nM 0 !0 !1\nM(1) 1\nRX 2\nMX 2\nMPP !Z0 Z0*Z1", false, 3, &ctx);
    ASSERT_EQ(ctx->record, (std::vector<uint8_t>{1, 0, 1, 1, 0, 0, 1}));
}

TEST(shot, resets_and_feedback) {
    for (uint64_t seed = 0; seed < 50; seed++) {
        ShotContext *ctx = nullptr;
        one_shot("H 0 1 2\nMR 0\nM 0\nR 1\nM 1\nM 2\nCX rec[-1] 2\nM 2\nMX 3\nZ rec[-1] 3\nMX 3", false, seed, &ctx);
        ASSERT_EQ(ctx->record[1], 0);
        ASSERT_EQ(ctx->record[2], 0);
        ASSERT_EQ(ctx->record[4], 0);
        ASSERT_EQ(ctx->record[6], 0);
    }
}

TEST(shot, t_overflow_reports_instruction) {
    CircuitProgram prog = parse_circuit("H 0 1\nTICK\nT 0\nT 1");
    ShotContext ctx(prog, 2);
    ctx.reset(1);
    ShotResult r = run_shot(prog, ctx, false);
    ASSERT_EQ(r.status, ShotStatus::OVERFLOW);
    ASSERT_EQ(r.instruction_index, 3u);
}

TEST(shot, bell_detector_never_fires) {
    CircuitProgram prog = parse_circuit("H 0\nCX 0 1\nM 0 1\nDETECTOR rec[-1] rec[-2]");
    SamplerConfig cfg;
    cfg.shots = 1000;
    cfg.master_seed = 7;
    cfg.postselect = true;
    RunStats s = run_batch(prog, cfg);
    ASSERT_EQ(s.preserved_shots, 1000u);
    ASSERT_EQ(s.discard_rate, 0);
}

TEST(sampler, zero_shots) {
    CircuitProgram prog = parse_circuit("H 0\nM 0");
    SamplerConfig cfg;
    RunStats s = run_batch(prog, cfg);
    ASSERT_EQ(s.total_shots, 0u);
    ASSERT_EQ(s.preserved_shots, 0u);
    ASSERT_EQ(s.discard_rate, 0);
    ASSERT_EQ(s.logical_errors, 0u);
}

TEST(sampler, config_validation) {
    CircuitProgram prog = parse_circuit("M 0");
    SamplerConfig cfg;
    cfg.batch_size = 0;
    ASSERT_THROW(run_batch(prog, cfg), std::invalid_argument);
    cfg.batch_size = 1;
    cfg.entry_capacity = 1;
    ASSERT_THROW(run_batch(prog, cfg), std::invalid_argument);
}

TEST(sampler, observable_counts) {
    CircuitProgram prog = parse_circuit("X 0\nM 0 1\nOBSERVABLE_INCLUDE(0) rec[-2]\nOBSERVABLE_INCLUDE(1) rec[-1]");
    SamplerConfig cfg;
    cfg.shots = 100;
    RunStats s = run_batch(prog, cfg);
    ASSERT_EQ(s.logical_errors, 100u);
    ASSERT_EQ(s.logical_errors_per_observable, (std::vector<uint64_t>{100, 0}));
    ASSERT_EQ(s.logical_error_rate, 1);
}

TEST(sampler, deterministic_across_threads_and_batches) {
    CircuitProgram prog = parse_circuit(kNoisyDetectorCircuit);
    SamplerConfig cfg;
    cfg.shots = 5000;
    cfg.master_seed = 11;
    cfg.postselect = true;
    cfg.threads = 1;
    cfg.batch_size = 5000;
    RunStats a = run_batch(prog, cfg);
    cfg.threads = 4;
    cfg.batch_size = 7;
    RunStats b = run_batch(prog, cfg);
    cfg.threads = 3;
    cfg.batch_size = 1;
    RunStats c = run_batch(prog, cfg);
    ASSERT_TRUE(a.same_counts(b));
    ASSERT_TRUE(a.same_counts(c));
    ASSERT_EQ(a.to_json(false), b.to_json(false));
    ASSERT_GT(a.discarded_shots, 0u);
    ASSERT_GT(a.preserved_shots, 0u);
    cfg.master_seed = 12;
    ASSERT_FALSE(a.same_counts(run_batch(prog, cfg)));
}

TEST(sampler, conservation) {
    CircuitProgram prog = parse_circuit(kNoisyDetectorCircuit);
    for (bool post : {false, true}) {
        SamplerConfig cfg;
        cfg.shots = 3000;
        cfg.postselect = post;
        RunStats s = run_batch(prog, cfg);
        ASSERT_EQ(s.preserved_shots + s.discarded_shots + s.overflow_count + s.error_shots, s.total_shots);
        ASSERT_DOUBLE_EQ(s.discard_rate, s.discarded_shots / 3000.0);
        if (!post) {
            ASSERT_EQ(s.discarded_shots, 0u);
        }
    }
}

TEST(sampler, early_discard_matches_full_run) {
    CircuitProgram prog = parse_circuit(kNoisyDetectorCircuit);
    ShotContext ctx(prog, 64);
    int discarded = 0;
    for (uint64_t shot = 0; shot < 2000; shot++) {
        ctx.reset(derive_seed(5, shot));
        ShotResult full = run_shot(prog, ctx, false);
        ctx.reset(derive_seed(5, shot));
        ShotResult early = run_shot(prog, ctx, true);
        if (full.first_fired_detector < 0) {
            ASSERT_EQ(early.status, ShotStatus::PRESERVED);
        } else {
            ASSERT_EQ(early.status, ShotStatus::DISCARDED);
            ASSERT_EQ(static_cast<int64_t>(early.detector_index), full.first_fired_detector);
            discarded++;
        }
    }
    ASSERT_GT(discarded, 100);
}

TEST(sampler, overflow_rerun_with_doubled_capacity) {
    CircuitProgram prog = parse_circuit("H 0 1 2\nT 0 1 2\nM 0 1 2");
    SamplerConfig cfg;
    cfg.shots = 20;
    cfg.entry_capacity = 2;
    RunStats s = run_batch(prog, cfg);
    ASSERT_EQ(s.overflow_count, 0u);
    ASSERT_EQ(s.preserved_shots, 20u);
    ASSERT_EQ(s.overflow_reruns, 40u);
    ASSERT_EQ(s.max_entries, 8u);

    cfg.max_doublings = 1;
    s = run_batch(prog, cfg);
    ASSERT_EQ(s.overflow_count, 20u);
    cfg.rerun_on_overflow = false;
    cfg.max_doublings = 3;
    s = run_batch(prog, cfg);
    ASSERT_EQ(s.overflow_count, 20u);
    ASSERT_EQ(s.overflow_reruns, 0u);
}

TEST(sampler, too_many_qubits_is_usage_error) {
    CircuitProgram prog = parse_circuit("H 64");
    SamplerConfig cfg;
    cfg.shots = 1;
    ASSERT_THROW(run_batch(prog, cfg), std::invalid_argument);
}

TEST(bayes, zero_errors_closed_form) {
    auto [lo, hi] = bayes_interval(0, 1000000);
    ASSERT_EQ(lo, 0);
    double expected = 1 - std::pow(1000.0, -1.0 / 1e6);
    ASSERT_NEAR(hi / expected, 1, 1e-6);
    ASSERT_NEAR(hi, 6.9077e-6, 1e-9);
}

TEST(bayes, all_errors_reaches_one) {
    auto [lo, hi] = bayes_interval(50, 50);
    ASSERT_EQ(hi, 1);
    ASSERT_NEAR(lo, std::pow(1000.0, -1.0 / 50), 1e-9);
}

TEST(bayes, interval_contains_estimate) {
    auto [lo, hi] = bayes_interval(22, 640000000);
    ASSERT_LT(lo, 3.41e-8);
    ASSERT_GT(hi, 3.41e-8);
    // Both endpoints sit on the likelihood contour.
    auto ll = [](double p) { return 22 * std::log(p) + (640000000.0 - 22) * std::log1p(-p); };
    double p_hat = 22 / 640000000.0;
    ASSERT_NEAR(ll(p_hat) - ll(lo), std::log(1000.0), 1e-6);
    ASSERT_NEAR(ll(p_hat) - ll(hi), std::log(1000.0), 1e-6);
}

TEST(bayes, rejects_bad_input) {
    ASSERT_THROW(bayes_interval(0, 0), std::invalid_argument);
    ASSERT_THROW(bayes_interval(3, 2), std::invalid_argument);
}

TEST(bench, rows_and_csv) {
    CircuitProgram prog = parse_circuit("H 0\nCX 0 1\nM 0 1\nDETECTOR rec[-1] rec[-2]");
    SamplerConfig cfg;
    cfg.shots = 200;
    std::vector<double> batches{1, 64};
    auto rows = throughput_bench(prog, cfg, SweepKind::BATCH_SIZE, batches);
    ASSERT_EQ(rows.size(), 2u);
    ASSERT_GT(rows[0].shots_per_s, 0);
    std::string csv = bench_csv(SweepKind::BATCH_SIZE, rows);
    ASSERT_TRUE(csv.starts_with("batch_size,shots_per_s,discard_rate\n1,"));
    cfg.postselect = true;
    std::vector<double> noise{0.0, 0.2};
    rows = throughput_bench(prog, cfg, SweepKind::NOISE, noise);
    ASSERT_EQ(rows[0].discard_rate, 0);
    ASSERT_GT(rows[1].discard_rate, 0);
    cfg.shots = 0;
    ASSERT_EQ(bench_csv(SweepKind::NOISE, throughput_bench(prog, cfg, SweepKind::NOISE, noise)),
              "noise,shots_per_s,discard_rate\n");
}
