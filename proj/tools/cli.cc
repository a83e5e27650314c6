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

#include "cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "gsim/noise.h"
#include "gsim/oracle.h"
#include "gsim/rng.h"
#include "gsim/sampler.h"

namespace gsim {

namespace {

/// Raised for bad flag values detected after CLI11 parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

size_t default_threads() {
    if (const char *env = std::getenv("SOFT_THREADS")) {
        char *end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == 0 && v > 0) {
            return v;
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

struct Options {
    std::string circuit;
    uint64_t shots = 0;
    uint64_t seed = 0;
    size_t threads = default_threads();
    size_t batch_size = 1024;
    std::optional<double> noise;
    bool postselect = false;
    size_t entry_capacity = kDefaultEntryCapacity;
    int max_doublings = 3;
    std::string out;
    bool no_timing = false;

    // validate / fuzz
    uint64_t random_suite = 0;
    uint64_t validate_shots = 10;
    double tolerance = 1e-10;
    size_t max_qubits = 10;
    size_t max_gates = 40;
    size_t max_t = 8;
    uint64_t count = 1;

    std::vector<std::string> sweep;
};

CircuitProgram load(const std::string &path) {
    if (!std::filesystem::is_regular_file(path)) {
        throw UsageError("cannot open circuit file '" + path + "'");
    }
    return parse_circuit_file(path);
}

CircuitProgram load_with_noise(const Options &o) {
    CircuitProgram prog = load(o.circuit);
    if (o.noise.has_value()) {
        if (prog.has_noise()) {
            throw UsageError("--noise given but the circuit already contains noise");
        }
        prog = apply_noise_model(prog, *o.noise);
    }
    return prog;
}

void emit(const Options &o, const std::string &text, std::ostream &out) {
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
        throw UsageError("cannot write '" + o.out + "'");
    }
    f << text;
    if (!f) {
        throw UsageError("write to '" + o.out + "' failed");
    }
}

SamplerConfig sampler_config(const Options &o) {
    SamplerConfig cfg;
    cfg.shots = o.shots;
    cfg.batch_size = o.batch_size;
    cfg.master_seed = o.seed;
    cfg.entry_capacity = o.entry_capacity;
    cfg.threads = o.threads;
    cfg.postselect = o.postselect;
    cfg.max_doublings = o.max_doublings;
    return cfg;
}

RandomCircuitOptions random_options(const Options &o) {
    RandomCircuitOptions r;
    r.max_qubits = o.max_qubits;
    r.max_gates = o.max_gates;
    r.max_t = o.max_t;
    return r;
}

int cmd_sample(const Options &o, std::ostream &out, std::ostream &err) {
    CircuitProgram prog = load_with_noise(o);
    RunStats s = run_batch(prog, sampler_config(o));
    emit(o, s.to_json(!o.no_timing) + "\n", out);
    err << s.summary_line() << "\n";
    return kExitOk;
}

int cmd_stats(const Options &o, std::ostream &out, std::ostream &err) {
    CircuitStats s = compute_stats(load(o.circuit));
    std::pair<const char *, uint64_t> rows[] = {
        {"Total Qubits", s.total_qubits},
        {"Total Gates", s.total_gates},
        {"Circuit Depth", s.depth},
        {"Two-Qubit Gates", s.two_qubit_gates},
        {"Measurements", s.measurements},
        {"T/T_DAG Gates", s.t_count},
        {"T Support Size", s.t_support_size},
        {"T Depth", s.t_depth},
    };
    nlohmann::ordered_json j;
    const char *keys[] = {"total_qubits",  "total_gates", "depth",          "two_qubit_gates",
                          "measurements", "t_count",     "t_support_size", "t_depth"};
    for (size_t k = 0; k < std::size(rows); k++) {
        err << std::left << std::setw(18) << rows[k].first << rows[k].second << "\n";
        j[keys[k]] = rows[k].second;
    }
    emit(o, j.dump() + "\n", out);
    return kExitOk;
}

int cmd_validate(const Options &o, std::ostream &out, std::ostream &err) {
    CrosscheckReport report;
    bool require_stabilizer = false;
    if (o.random_suite > 0) {
        if (!o.circuit.empty()) {
            throw UsageError("give either a circuit or --random-suite, not both");
        }
        double p = o.noise.value_or(0.05);
        std::mt19937_64 rng(o.seed);
        RandomCircuitOptions ropts = random_options(o);
        require_stabilizer = ropts.max_t == 0;
        for (uint64_t k = 0; k < o.random_suite; k++) {
            CircuitProgram prog = apply_noise_model(parse_circuit(random_circuit_text(ropts, rng)), p);
            CrosscheckReport r = crosscheck(prog, o.validate_shots, derive_seed(o.seed, k), o.tolerance);
            for (CrosscheckFailure &f : r.failures) {
                f.circuit = k;
            }
            report.merge(r);
        }
    } else {
        if (o.circuit.empty()) {
            throw UsageError("validate needs a circuit file or --random-suite N");
        }
        report = crosscheck(load_with_noise(o), o.validate_shots, o.seed, o.tolerance);
    }
    if (require_stabilizer && report.max_entries > 1) {
        report.failures.push_back({0, 0, 0, "T-free suite grew |v| to " + std::to_string(report.max_entries)});
    }
    emit(o, report.to_json() + "\n", out);
    bool ok = report.passed(o.tolerance);
    for (const CrosscheckFailure &f : report.failures) {
        err << "FAIL circuit " << f.circuit << " shot " << f.shot << " instruction " << f.instruction << ": "
            << f.message << "\n";
    }
    err << (ok ? "PASS" : "FAIL") << " max_infidelity=" << report.max_infidelity
        << " max_prob_delta=" << report.max_prob_delta << " circuits=" << report.circuits
        << " shots=" << report.shots << "\n";
    return ok ? kExitOk : kExitValidationFailed;
}

std::vector<double> parse_list(const std::string &text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception &) {
            throw UsageError("bad sweep value '" + item + "'");
        }
    }
    if (values.empty()) {
        throw UsageError("empty sweep");
    }
    return values;
}

int cmd_bench(const Options &o, std::ostream &out, std::ostream &) {
    if (o.sweep.size() != 2) {
        throw UsageError("--sweep takes a kind and a value list");
    }
    SweepKind kind;
    CircuitProgram prog;
    if (o.sweep[0] == "batch-size") {
        kind = SweepKind::BATCH_SIZE;
        prog = load_with_noise(o);
    } else if (o.sweep[0] == "noise") {
        kind = SweepKind::NOISE;
        if (o.noise.has_value()) {
            throw UsageError("--noise conflicts with a noise sweep");
        }
        prog = load(o.circuit);
        if (prog.has_noise()) {
            throw UsageError("a noise sweep needs a noiseless circuit");
        }
    } else {
        throw UsageError("unknown sweep kind '" + o.sweep[0] + "' (use batch-size or noise)");
    }
    std::vector<double> values = parse_list(o.sweep[1]);
    SamplerConfig cfg = sampler_config(o);
    if (kind == SweepKind::NOISE) {
        for (double v : values) {
            if (!(v >= 0 && v <= 1)) {
                throw UsageError("noise sweep values must lie in [0, 1]");
            }
        }
    }
    emit(o, bench_csv(kind, throughput_bench(prog, cfg, kind, values)), out);
    return kExitOk;
}

int cmd_fuzz(const Options &o, std::ostream &out, std::ostream &err) {
    std::mt19937_64 rng(o.seed);
    RandomCircuitOptions ropts = random_options(o);
    if (o.out.empty()) {
        for (uint64_t k = 0; k < o.count; k++) {
            out << "# program " << k << "\n" << random_circuit_text(ropts, rng);
        }
        return kExitOk;
    }
    std::filesystem::create_directories(o.out);
    for (uint64_t k = 0; k < o.count; k++) {
        char name[32];
        std::snprintf(name, sizeof(name), "fuzz_%05llu.stim", static_cast<unsigned long long>(k));
        std::filesystem::path path = std::filesystem::path(o.out) / name;
        std::ofstream f(path);
        if (!f) {
            throw UsageError("cannot write '" + path.string() + "'");
        }
        f << random_circuit_text(ropts, rng);
    }
    err << "wrote " << o.count << " programs to " << o.out << "\n";
    return kExitOk;
}

void add_sampling_flags(CLI::App *sub, Options &o) {
    sub->add_option("--seed", o.seed, "Master seed");
    sub->add_option("--threads", o.threads, "Worker threads (default: $SOFT_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--batch-size", o.batch_size, "Shots per wave")->check(CLI::PositiveNumber);
    sub->add_flag("--postselect", o.postselect, "Discard a shot as soon as a detector fires");
    sub->add_option("--entry-capacity", o.entry_capacity, "Initial per-shot coefficient capacity")
        ->check(CLI::Range(size_t{2}, size_t{1} << 30));
    sub->add_option("--max-doublings", o.max_doublings, "Capacity doublings tried on overflow")
        ->check(CLI::Range(0, 20));
}

void add_random_flags(CLI::App *sub, Options &o) {
    sub->add_option("--max-qubits", o.max_qubits, "Largest random circuit width")->check(CLI::Range(1, 14));
    sub->add_option("--max-gates", o.max_gates, "Largest random circuit length")->check(CLI::Range(2, 100000));
    sub->add_option("--max-t", o.max_t, "Most T/T_DAG gates per random circuit");
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"gsim: Monte Carlo sampler for noisy Clifford+T circuits"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "gsim 0.1.0");

    auto out_opt = [&](CLI::App *sub) { sub->add_option("--out", o.out, "Write the result here instead of stdout"); };
    auto noise_opt = [&](CLI::App *sub) {
        sub->add_option("--noise", o.noise, "Uniform depolarizing strength p")->check(CLI::Range(0.0, 1.0));
    };

    CLI::App *sample = app.add_subcommand("sample", "Sample shots and print RunStats JSON");
    sample->add_option("circuit", o.circuit, "Circuit file")->required();
    sample->add_option("--shots", o.shots, "Number of shots")->required();
    add_sampling_flags(sample, o);
    noise_opt(sample);
    out_opt(sample);
    sample->add_flag("--no-timing", o.no_timing, "Omit wall-clock fields from the JSON");

    CLI::App *stats = app.add_subcommand("stats", "Print circuit statistics");
    stats->add_option("circuit", o.circuit, "Circuit file")->required();
    out_opt(stats);

    CLI::App *validate = app.add_subcommand("validate", "Cross-check against the dense reference simulator");
    validate->add_option("circuit", o.circuit, "Circuit file (at most 14 qubits)");
    validate->add_option("--random-suite", o.random_suite, "Check N random circuits instead of a file");
    validate->add_option("--shots", o.validate_shots, "Shots per circuit");
    validate->add_option("--seed", o.seed, "Master seed");
    validate->add_option("--tolerance", o.tolerance, "Largest accepted infidelity and probability delta");
    noise_opt(validate);
    add_random_flags(validate, o);
    out_opt(validate);

    CLI::App *bench = app.add_subcommand("bench", "Throughput sweep as CSV");
    bench->add_option("circuit", o.circuit, "Circuit file")->required();
    bench->add_option("--sweep", o.sweep, "batch-size a,b,c | noise a,b,c")->expected(2)->required();
    bench->add_option("--shots", o.shots, "Shots per sweep point")->required();
    add_sampling_flags(bench, o);
    noise_opt(bench);
    out_opt(bench);

    CLI::App *fuzz = app.add_subcommand("fuzz", "Generate random Clifford+T programs");
    fuzz->add_option("--count", o.count, "Number of programs");
    fuzz->add_option("--seed", o.seed, "Generator seed");
    add_random_flags(fuzz, o);
    fuzz->add_option("--out", o.out, "Directory for fuzz_NNNNN.stim files (default: stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::Success &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (sample->parsed()) {
            return cmd_sample(o, out, err);
        }
        if (stats->parsed()) {
            return cmd_stats(o, out, err);
        }
        if (validate->parsed()) {
            return cmd_validate(o, out, err);
        }
        if (bench->parsed()) {
            return cmd_bench(o, out, err);
        }
        return cmd_fuzz(o, out, err);
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitValidationFailed;
    }
}

}  // namespace gsim
