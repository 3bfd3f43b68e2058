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
 * Linear-inversion two-qubit state tomography from projective coincidence
 * rates, used as an independent cross-check of the state model.
 *
 * The canonical setting set is the 16-element product basis over
 * {H, V, D, L} per arm (informationally complete; requires circular
 * projectors). A 9-setting linear-polarizer-only variant is provided for
 * states known to be real in the H/V basis with no (HV,VH) coherence, as
 * the families here are: linear projectors cannot see the YY component, so
 * that variant completes it from the structural constraint rho[HV,VH] = 0.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "negest/linalg.hpp"
#include "negest/states.hpp"

namespace negest {

struct TomoSetting {
    Ket2 projector_a;
    Ket2 projector_b;
    std::string label;
};

struct TomoObservation {
    TomoSetting setting;
    double rate = 0.0;  // measured Tr[rho P_a (x) P_b], in [0, 1]
};

using TomoDataset = std::vector<TomoObservation>;

/// The 16 product settings {H,V,D,L} x {H,V,D,L}, labels "HH".."LL".
std::vector<TomoSetting> canonical_settings();

/// The 9 linear-only settings {H,V,D} x {H,V,D}.
std::vector<TomoSetting> linear_settings();

/// Exact rates of a state at the given settings.
TomoDataset exact_rates(const DensityMatrix& rho, const std::vector<TomoSetting>& settings);

/// Poisson-sampled rates: k ~ Poisson(counts_per_setting * rate), measured
/// rate k / counts_per_setting. Deterministic given the seed.
TomoDataset sampled_rates(const DensityMatrix& rho, const std::vector<TomoSetting>& settings,
                          double counts_per_setting, std::uint64_t seed);

/// Dual-frame linear inversion over the span of the setting projectors:
/// solves G c = rates with G the Gram matrix, returns sum_v c_v P_v
/// renormalized to unit trace. Hermitian by construction; may be non-PSD
/// for noisy data. Throws IllPosedSettingsError when G is singular.
Mat4 linear_inversion(const TomoDataset& data);

/// Inversion from the 9 linear-only settings for real states with
/// rho[HV,VH] = 0 (completes the YY component from that constraint).
Mat4 linear_inversion_real(const TomoDataset& data);

/// Eigenvalue clipping + trace renormalization; idempotent on PSD inputs.
/// Input must have unit trace within 1e-6.
DensityMatrix project_to_physical(const Mat4& h);

struct ModelComparison {
    double fidelity = 0.0;
    double trace_distance = 0.0;
    double negativity_gap = 0.0;
};

/// Fidelity (pure-model sandwich or Uhlmann), trace distance, and
/// |negativity difference| between a reconstruction and a model state.
ModelComparison compare_to_model(const DensityMatrix& rho_rec, const StateParams& params);

/// CSV: label,a_re0,a_im0,a_re1,a_im1,b_re0,b_im0,b_re1,b_im1,rate
std::string tomo_to_csv(const TomoDataset& data);
TomoDataset tomo_from_csv(const std::string& csv);

}  // namespace negest
