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
 * Software stand-in for the photon source and coincidence electronics:
 * Poissonian coincidence-count vectors for a configured state, polarizer
 * setting and acquisition window, with reproducible per-window random
 * streams keyed by (seed, run_index, outcome_index).
 */

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "negest/measurement.hpp"
#include "negest/rng.hpp"
#include "negest/states.hpp"

namespace negest {

/// Four coincidence counts from one acquisition window.
struct CoincidenceVector {
    std::array<std::int64_t, 4> k{};

    std::int64_t total() const { return k[0] + k[1] + k[2] + k[3]; }
};

/// Counting model. Independent Poisson streams per outcome is the default;
/// the multinomial mode conditions on a Poisson total instead (for
/// sensitivity studies).
enum class CountingModel { IndependentPoisson, MultinomialTotal };

struct RunConfig {
    StateParams params;
    MeasurementSetting setting;
    double mean_total = 1e4;      // expected coincidences per window
    double window_seconds = 10.0; // metadata only
    int runs = 30;
    std::uint64_t seed = 0;
    CountingModel counting = CountingModel::IndependentPoisson;
};

struct RunRecord {
    int run_index = 0;
    MeasurementSetting setting;
    CoincidenceVector counts;
    double window_seconds = 10.0;
};

/// Counts for one window: k_t ~ Poisson(mean_total * p_t) independently,
/// each outcome on its own stream (seed, window_index, t).
CoincidenceVector sample_counts(const OutcomeDistribution& d, double mean_total,
                                std::uint64_t seed, std::uint64_t window_index,
                                CountingModel counting = CountingModel::IndependentPoisson);

/// M windows at the configured setting; outcome probabilities are computed
/// once. Windows are independent and individually re-derivable, so the
/// result does not depend on generation order.
std::vector<RunRecord> run_experiment(const RunConfig& config);

enum class ShuffleMode { PerOutcome, WholeVector };

/// Decorrelates the sequence of windows: for each outcome index, permutes
/// the multiset {k_{t,j}}_j across runs (PerOutcome), or permutes whole
/// vectors (WholeVector). Grand totals and per-outcome multisets are
/// preserved exactly. All records must share one setting.
std::vector<RunRecord> shuffle_composition(const std::vector<RunRecord>& records,
                                           std::uint64_t seed,
                                           ShuffleMode mode = ShuffleMode::PerOutcome);

/// CSV with header run,alpha_rad,beta_rad,k0,k1,k2,k3,window_s; floating
/// fields printed with 9 significant digits, LF line endings.
std::string runs_to_csv(const std::vector<RunRecord>& records);
void append_runs_csv(std::string& csv, const std::vector<RunRecord>& records);
std::string runs_csv_header();

/// Parses the CSV format above (one or more settings interleaved).
std::vector<RunRecord> runs_from_csv(const std::string& csv);

}  // namespace negest
