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

#ifndef GSIM_SHOT_H
#define GSIM_SHOT_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gsim/circuit.h"
#include "gsim/gen_stab_state.h"
#include "gsim/rng.h"

namespace gsim {

enum class ShotStatus : uint8_t { RUNNING, PRESERVED, DISCARDED, OVERFLOW, ERROR };
std::string_view status_name(ShotStatus status);

struct ShotResult {
    ShotStatus status = ShotStatus::RUNNING;
    /// Index (in execution order) of the detector that discarded the shot.
    uint64_t detector_index = 0;
    /// Ordinal of the executed instruction that overflowed or failed.
    uint64_t instruction_index = 0;
    /// First detector with parity 1, or -1. Tracked even without postselection.
    int64_t first_fired_detector = -1;
    uint64_t fired_detectors = 0;
    /// Largest |v| seen during the shot.
    size_t max_entries = 1;
    std::string diagnostic;
};

enum class Primitive : uint8_t { CLIFFORD, PAULI, T, MEASURE };

struct ShotContext;

/// Instrumentation hooks. Ordinals count executed instructions with REPEAT
/// bodies expanded.
class ShotObserver {
   public:
    virtual ~ShotObserver() = default;
    /// Sampled error of a noise instruction (identity when nothing fired).
    virtual void on_noise(uint64_t /*ordinal*/, const PauliRow & /*error*/) {}
    /// One measured observable: the eigenvalue sign the state collapsed to,
    /// the engine's P(+1) and whether flip noise inverted the reported bit.
    virtual void on_measurement(uint64_t /*ordinal*/, int /*sign*/, double /*prob_plus*/, bool /*flipped*/) {}
    virtual void on_primitive(Primitive /*kind*/, size_t /*size_before*/, size_t /*size_after*/) {}
    virtual void after_instruction(uint64_t /*ordinal*/, const Instruction & /*inst*/, const ShotContext & /*ctx*/) {}
};

/// Everything one shot owns. Allocated once and reused across shots.
struct ShotContext {
    ShotContext(const CircuitProgram &prog, size_t entry_capacity);

    /// Fresh |0...0>, empty record, RNG reseeded.
    void reset(uint64_t seed);

    GenStabState state;
    std::vector<uint8_t> record;
    std::vector<uint8_t> observables;
    ShotRng rng;
    std::vector<uint32_t> scratch_targets;
    ShotStatus status = ShotStatus::RUNNING;
};

/// Runs prog on a freshly reset context. With postselect, the shot stops at
/// the first detector whose parity is 1.
ShotResult run_shot(const CircuitProgram &prog, ShotContext &ctx, bool postselect, ShotObserver *observer = nullptr);

}  // namespace gsim

#endif
