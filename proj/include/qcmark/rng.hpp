// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <cstdint>

namespace qcmark {

/// splitmix64 step; the project-wide mixing primitive for deriving sub-seeds.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic sub-seed for (seed, stream index), e.g. one stream per shot.
inline uint64_t derive_seed(uint64_t seed, uint64_t index) {
    uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL + index * 0xd1b54a32d192ed03ULL);
    splitmix64(s);
    return splitmix64(s);
}

/// Small deterministic PRNG (xoshiro-free, splitmix-driven) with platform
/// independent uniform draws; std::uniform_real_distribution is
/// implementation-defined and would break cross-platform reproducibility.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    uint64_t uniform_int(uint64_t n) {
        // modulo bias is negligible for n << 2^64 and keeps draws per call fixed
        return next_u64() % n;
    }

private:
    uint64_t state_;
};

} // namespace qcmark
