// Copyright 2026 The ftqs Authors
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

#ifndef FTQS_COMMON_RNG_H
#define FTQS_COMMON_RNG_H

#include <cstdint>
#include <random>

namespace ftqs {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer. Used to derive independent child seeds.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for child `index` of `master`. Trial t of a run always uses
/// derive_seed(master, t), so the thread count never changes results.
inline uint64_t derive_seed(uint64_t master, uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

inline Rng make_rng(uint64_t master, uint64_t index) {
    return Rng(derive_seed(master, index));
}

inline double uniform01(Rng &rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace ftqs

#endif
