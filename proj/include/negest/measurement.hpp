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
 * The four-outcome product polarizer measurement and its information
 * content: outcome probabilities, correlation visibility, and the Fisher
 * information about the negativity as a function of the polarizer angles.
 */

#pragma once

#include <vector>

#include "negest/linalg.hpp"
#include "negest/states.hpp"

namespace negest {

/// Polarizer angles (radians) on the two arms.
struct MeasurementSetting {
    double alpha = 0.0;
    double beta = 0.0;
};

/// Probabilities of the four outcomes t = s + 2s', s/s' flipping each arm
/// by pi/2. Nonnegative, summing to 1 within 1e-12.
struct OutcomeDistribution {
    std::array<double, 4> probs{};
};

/// Projector onto |alpha + s pi/2> (x) |beta + s' pi/2| with t = s + 2s'.
/// The four elements sum to the identity.
Mat4 povm_element(int t, const MeasurementSetting& setting);

OutcomeDistribution outcome_probabilities(const DensityMatrix& rho,
                                          const MeasurementSetting& setting);

/// p0 - p1 - p2 + p3, the two-qubit correlation visibility.
double visibility(const OutcomeDistribution& d);

/// Fisher information about the negativity carried by one measurement
/// window at this setting, with the mixing parameter treated as an unknown
/// nuisance: F = F_ee - F_ep^2 / F_pp (profile form), derivatives by
/// central differences with step d_eps at the probability level. Where the
/// outcome probabilities do not depend on p (e.g. alpha, beta = +-pi/4)
/// this reduces to sum_t (d_eps p_t)^2 / p_t.
///
/// Returns +infinity (std::numeric_limits::infinity) when some outcome has
/// zero probability but a nonvanishing derivative; outcomes where both
/// vanish are dropped.
double fisher_information(const StateParams& params, const MeasurementSetting& setting,
                          double d_eps);

struct FisherScan {
    MeasurementSetting best;
    double best_value = 0.0;
    int n_alpha = 0;
    int n_beta = 0;
    double step = 0.0;
    double alpha_start = 0.0;
    double beta_start = 0.0;
    std::vector<double> values;  // row-major over (alpha, beta)

    double at(int ia, int ib) const { return values[static_cast<std::size_t>(ia * n_beta + ib)]; }
    double alpha_at(int ia) const { return alpha_start + ia * step; }
    double beta_at(int ib) const { return beta_start + ib * step; }
};

/// Evaluates fisher_information on the grid alpha, beta in [-pi/2, pi/2)
/// with the given step and returns the argmax together with the full map.
/// grid_step must lie in (0, pi/8].
FisherScan optimal_setting_scan(const StateParams& params, double grid_step);

}  // namespace negest
