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

#ifndef GSIM_RNG_H
#define GSIM_RNG_H

#include <cstdint>
#include <random>

namespace gsim {

/// First 8 bytes (little-endian) of SHA-1(master_seed LE64 || shot_index LE64).
uint64_t derive_seed(uint64_t master_seed, uint64_t shot_index);

/// Per-shot stream: std::mt19937_64 seeded with derive_seed. Uniforms take the
/// top 53 bits of one engine output.
class ShotRng {
   public:
    ShotRng() = default;
    explicit ShotRng(uint64_t seed) : engine_(seed) {}

    void seed(uint64_t seed) { engine_.seed(seed); }
    uint64_t next_u64() { return engine_(); }
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

   private:
    std::mt19937_64 engine_;
};

}  // namespace gsim

#endif
