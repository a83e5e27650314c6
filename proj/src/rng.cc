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

#include "gsim/rng.h"

#include <openssl/evp.h>

#include <stdexcept>

namespace gsim {

uint64_t derive_seed(uint64_t master_seed, uint64_t shot_index) {
    unsigned char input[16];
    for (int k = 0; k < 8; k++) {
        input[k] = static_cast<unsigned char>(master_seed >> (8 * k));
        input[8 + k] = static_cast<unsigned char>(shot_index >> (8 * k));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(input, sizeof(input), digest, &len, EVP_sha1(), nullptr) != 1 || len < 8) {
        throw std::runtime_error("SHA-1 digest failed");
    }
    uint64_t out = 0;
    for (int k = 7; k >= 0; k--) {
        out = (out << 8) | digest[k];
    }
    return out;
}

}  // namespace gsim
