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

#include "negest/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace negest {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr double kPoissonInversionCutoff = 30.0;
}  // namespace

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t h = mix64(seed + kGolden);
    h = mix64(h ^ (a + kGolden + (h << 6) + (h >> 2)));
    h = mix64(h ^ (b + kGolden + (h << 6) + (h >> 2)));
    return h;
}

std::uint64_t SplitMix64::next_u64() {
    std::uint64_t z = (state_ += kGolden);
    return mix64(z);
}

double SplitMix64::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t SplitMix64::next_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("next_below: n must be positive");
    const std::uint64_t threshold = -n % n;  // 2^64 mod n
    for (;;) {
        const std::uint64_t r = next_u64();
        if (r >= threshold) return r % n;
    }
}

namespace {

/// Sequential-search inversion; exact for small means.
std::int64_t poisson_inversion(double mean, SplitMix64& rng) {
    const double u = rng.next_double();
    double prob = std::exp(-mean);
    double cdf = prob;
    std::int64_t k = 0;
    // Hard cap far beyond any double-representable tail at mean < 30.
    while (u > cdf && k < 400) {
        ++k;
        prob *= mean / static_cast<double>(k);
        cdf += prob;
    }
    return k;
}

/// Hormann's PTRS transformed rejection, valid for mean >= 10.
std::int64_t poisson_ptrs(double mean, SplitMix64& rng) {
    const double log_mean = std::log(mean);
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);

    for (;;) {
        const double u = rng.next_double() - 0.5;
        const double v = rng.next_double();
        const double us = 0.5 - std::abs(u);
        const auto k = static_cast<std::int64_t>(std::floor((2.0 * a / us + b) * u + mean + 0.43));
        if (us >= 0.07 && v <= v_r) return k;
        if (k < 0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            static_cast<double>(k) * log_mean - mean - std::lgamma(static_cast<double>(k) + 1.0))
            return k;
    }
}

}  // namespace

std::int64_t poisson_sample(double mean, SplitMix64& rng) {
    if (!(mean >= 0.0) || !std::isfinite(mean))
        throw std::invalid_argument("poisson_sample: mean must be finite and nonnegative");
    if (mean == 0.0) return 0;
    if (mean < kPoissonInversionCutoff) return poisson_inversion(mean, rng);
    return poisson_ptrs(mean, rng);
}

}  // namespace negest
