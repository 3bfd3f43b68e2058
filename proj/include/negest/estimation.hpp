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
 * Negativity and mixing estimators with their uncertainty analysis:
 * sample statistics, Poisson error propagation, Fano factors, the rival
 * (Werner) model's estimators, and the 3-sigma model-consistency test.
 */

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "negest/simulator.hpp"

namespace negest {

struct SampleStats {
    double mean = 0.0;
    double variance = 0.0;  // unbiased, divisor M-1; 0 when M = 1
    int count = 0;
};

/// Mean and unbiased variance. Throws EmptySampleError on an empty list.
SampleStats sample_stats(const std::vector<double>& values);

/// Normalized rates k_t / K. Throws EmptySampleError when K = 0.
std::array<double, 4> count_rates(const CoincidenceVector& k);

/// Single-window negativity estimate
///   eps_hat = V * csc(2a) csc(2b) - cot(2a) cot(2b)
/// with V the count visibility (k0-k1-k2+k3)/K. One code path for every
/// setting; at (-pi/4, pi/4) the csc factors reduce it to -V.
/// Throws DegenerateAnglesError when |sin 2a| or |sin 2b| < 1e-6 and
/// EmptySampleError when K = 0. The result is reported raw (not clipped
/// to [0, 1]).
double estimate_negativity(const CoincidenceVector& k, const MeasurementSetting& setting);

/// Mixing estimate from a diagonal-setting window (alpha = beta = 0):
/// with q = r3/R, p_hat = eps_hat / (2 sqrt(q (1-q))). For exact rates
/// q = sin^2(phi), this is eps_hat / sin(2 phi).
/// Throws DegenerateDiagonalError when r3 = 0 or r3 = R.
double estimate_mixing(const CoincidenceVector& r, double eps_hat);

/// Inferred actual negativity eps_t = <p_hat> sin(2 phi).
double true_negativity(double phi, double p_hat_mean);

/// Its uncertainty, sqrt(Var p_hat) * sin(2 phi).
double true_negativity_err(double phi, double p_hat_sd);

/// First-order error propagation through the visibility estimator:
///   4 [ (m0+m3)^2 (v1+v2) + (m1+m2)^2 (v0+v3) ] / K^4.
double propagate_variance(const std::array<double, 4>& mean_k,
                          const std::array<double, 4>& var_k);

/// Poissonian closed form 4 (k0+k3)(k1+k2) / K^3, algebraically equal to
/// (1 - eps_hat^2)/K at the optimal setting.
double poisson_variance_closed_form(const CoincidenceVector& k);

/// Per-outcome Var/mean across runs; outcomes with zero mean are reported
/// as nullopt. All records must share one setting; at least 2 required.
std::array<std::optional<double>, 4> fano_factors(const std::vector<RunRecord>& records);

/// Werner-model estimators from a diagonal window r and a main window k:
///   p_hat' = V(0,0),   eps_hat' = -1/2 + p_hat'/2 + x_hat,
/// where x_hat = (V(S) - cos2a cos2b p_hat') csc2a csc2b recovers the
/// coherence with the signs the plain visibility shorthand drops.
struct WernerEstimate {
    double p_hat = 0.0;
    double eps_hat = 0.0;
};
WernerEstimate estimate_werner(const CoincidenceVector& r, const CoincidenceVector& k,
                               const MeasurementSetting& setting);

struct EstimationReport {
    Model model = Model::CoherentMixture;
    SampleStats eps_hat;
    SampleStats p_hat;
    double eps_true = 0.0;
    double eps_true_err = 0.0;
    double var_times_k = 0.0;       // Var(eps_hat) * <K>
    double qcrb_ref = 0.0;          // 1 - eps_true^2
    double mean_k = 0.0;
    std::array<std::optional<double>, 4> fano{};
    bool consistent_3sigma = false; // |<eps_hat> - eps_t| <= 3 sqrt(Var/M)
    bool eps_in_range = true;       // no single-window estimate left [0, 1]
};

/// Full per-configuration analysis. main_records carry the correlation
/// setting, diagonal_records the (0,0) setting; window j of one is paired
/// with window j of the other. phi is the configured rotation angle.
EstimationReport build_report(Model model, double phi,
                              const std::vector<RunRecord>& main_records,
                              const std::vector<RunRecord>& diagonal_records);

struct DiscriminationVerdict {
    Model model_a;
    bool a_consistent;
    Model model_b;
    bool b_consistent;
};

/// Reads the per-model 3-sigma consistency flags of two reports built from
/// the same records.
DiscriminationVerdict model_discrimination(const EstimationReport& a,
                                           const EstimationReport& b);

/// Report as a JSON document with the fixed field names
/// (eps_hat_mean, eps_hat_var, var_times_K, qcrb_ref, p_hat_mean, p_hat_var,
///  eps_true, eps_true_err, mean_K, fano, model, consistent_3sigma).
std::string report_to_json(const EstimationReport& report);

/// One table row per report:
/// eps_true,eps_true_err,eps_hat_mean,errbar,qcrb_halfwidth
/// with errbar = sqrt(Var * <K>) and qcrb_halfwidth = sqrt(1 - eps_true^2).
std::string fig2_csv(const std::vector<EstimationReport>& reports);

/// t,mean_count,var_count,fano per outcome (fano empty when undefined).
std::string fano_csv(const EstimationReport& report,
                     const std::vector<RunRecord>& main_records);

}  // namespace negest
