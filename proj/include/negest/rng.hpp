// Copyright 2026 the negest authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Deterministic, splittable random streams for the simulator.
 *
 * Every consumer derives an independent stream from (seed, a, b) through a
 * SplitMix64-style avalanche hash, so windows/outcomes can be generated in
 * any order (or in parallel) with bit-identical results. The generator and
 * the sampling algorithms below are part of the reproducibility contract:
 * changing any of them invalidates stored fixtures. The identifier string
 * negest::kRngId is recorded in output metadata for that reason.
 *
 * SplitMix64: Steele, Lea, Flood, "Fast splittable pseudorandom number
 * generators", OOPSLA 2014; constants per Vigna's public-domain reference.
 * Poisson sampling: inversion by sequential search for mean < 30, and
 * Hormann's PTRS transformed rejection for mean >= 30 ("The transformed
 * rejection method for generating Poisson random variables", 1993).
 */

#pragma once

#include <cstdint>

namespace negest {

inline constexpr const char* kRngId = "splitmix64-streams/inv30-ptrs/v1";

/// 64-bit avalanche finalizer used both as the SplitMix64 output stage and
/// for stream-key derivation.
std::uint64_t mix64(std::uint64_t z);

/// Independent 64-bit state from a root seed and two stream coordinates.
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    std::uint64_t next_u64();

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double();

    /// Uniform integer in [0, n); unbiased via rejection. n must be > 0.
    std::uint64_t next_below(std::uint64_t n);

  private:
    std::uint64_t state_;
};

/// One Poisson(mean) draw. mean must be finite and >= 0; mean = 0 yields 0.
std::int64_t poisson_sample(double mean, SplitMix64& rng);

}  // namespace negest
