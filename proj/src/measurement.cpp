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

#include "negest/measurement.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "negest/errors.hpp"

namespace negest {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kZeroProb = 1e-12;

std::array<double, 4> probs_at(Model model, double phi, double p,
                               const MeasurementSetting& setting) {
    const Mat4 rho = detail::family_matrix(model, phi, p);
    std::array<double, 4> out{};
    for (int t = 0; t < 4; ++t)
        out[static_cast<std::size_t>(t)] =
            std::max(0.0, (rho * povm_element(t, setting)).trace().real());
    return out;
}

/// 1 / (g' F^{-1} g) for a PSD 2x2 information matrix, handling the
/// rank-deficient cases: no information at all, or information confined to
/// a single direction (zero unless the target gradient is parallel to it).
double effective_information(double f_ff, double f_fp, double f_pp, double g_f, double g_p) {
    const double trace = f_ff + f_pp;
    if (trace <= 1e-15) return 0.0;
    const double det = std::max(0.0, f_ff * f_pp - f_fp * f_fp);
    if (det > 1e-9 * trace * trace) {
        const double w_f = (f_pp * g_f - f_fp * g_p) / det;
        const double w_p = (-f_fp * g_f + f_ff * g_p) / det;
        const double denom = g_f * w_f + g_p * w_p;
        return denom > 0.0 ? 1.0 / denom : 0.0;
    }
    // rank one: F = lambda u u'
    const double disc = std::sqrt(std::max(0.0, 0.25 * trace * trace - det));
    const double lambda = 0.5 * trace + disc;
    double u_f, u_p;
    if (std::abs(f_ff - lambda) > std::abs(f_pp - lambda)) {
        u_f = f_fp;
        u_p = lambda - f_ff;
    } else {
        u_f = lambda - f_pp;
        u_p = f_fp;
    }
    const double un = std::sqrt(u_f * u_f + u_p * u_p);
    if (un <= 0.0) return 0.0;
    u_f /= un;
    u_p /= un;
    const double g2 = g_f * g_f + g_p * g_p;
    const double gu = g_f * u_f + g_p * u_p;
    if (g2 - gu * gu > 1e-12 * g2) return 0.0;  // nuisance leg unidentifiable
    return lambda / (gu * gu);
}

}  // namespace

Mat4 povm_element(int t, const MeasurementSetting& setting) {
    if (t < 0 || t > 3) throw std::invalid_argument("povm_element: t must be in 0..3");
    const int s = t % 2;
    const int sp = t / 2;
    return tensor_projector(Ket2::linear(setting.alpha + s * kHalfPi),
                            Ket2::linear(setting.beta + sp * kHalfPi));
}

OutcomeDistribution outcome_probabilities(const DensityMatrix& rho,
                                          const MeasurementSetting& setting) {
    OutcomeDistribution d;
    for (int t = 0; t < 4; ++t) {
        const double pt = (rho.matrix() * povm_element(t, setting)).trace().real();
        d.probs[static_cast<std::size_t>(t)] = std::max(0.0, pt);  // clip PSD round-off
    }
    return d;
}

double visibility(const OutcomeDistribution& d) {
    return d.probs[0] - d.probs[1] - d.probs[2] + d.probs[3];
}

double fisher_information(const StateParams& params, const MeasurementSetting& setting,
                          double d_eps) {
    validate(params);
    if (!(d_eps > 0.0)) throw std::invalid_argument("fisher_information: d_eps must be positive");
    const Model model = params.model;
    const double phi = params.phi;
    const double p = params.p;
    if (negativity_closed_form(params) < 1e-9)
        throw DerivativeSingularityError("fisher_information: negativity at zero");

    // All derivatives in the (phi, p) chart, where the family is smooth;
    // the p step turns one-sided against the [0, 1] walls.
    const auto p0 = probs_at(model, phi, p, setting);
    const auto pf_hi = probs_at(model, phi + d_eps, p, setting);
    const auto pf_lo = probs_at(model, phi - d_eps, p, setting);
    const double p_hi = std::min(1.0, p + d_eps);
    const double p_lo = std::max(0.0, p - d_eps);
    const auto pp_hi = probs_at(model, phi, p_hi, setting);
    const auto pp_lo = probs_at(model, phi, p_lo, setting);

    const NegativityGradient grad = negativity_gradient(params);
    const double grad_norm2 = grad.d_phi * grad.d_phi + grad.d_p * grad.d_p;

    double f_ff = 0.0, f_fp = 0.0, f_pp = 0.0;
    bool p_known_exactly = false;
    for (int t = 0; t < 4; ++t) {
        const auto i = static_cast<std::size_t>(t);
        const double df = (pf_hi[i] - pf_lo[i]) / (2.0 * d_eps);
        const double dp = (pp_hi[i] - pp_lo[i]) / (p_hi - p_lo);
        if (p0[i] <= kZeroProb) {
            // A vanishing outcome with a moving probability carries divergent
            // information: along the negativity direction that is the
            // divergent-information flag; along the nuisance direction it
            // pins p exactly and removes the nuisance penalty.
            const double d_eps_dir = (df * grad.d_phi + dp * grad.d_p) / grad_norm2;
            if (std::abs(d_eps_dir) > 1e-6) return std::numeric_limits<double>::infinity();
            if (std::abs(df) > 1e-6 || std::abs(dp) > 1e-6) p_known_exactly = true;
            continue;
        }
        f_ff += df * df / p0[i];
        f_fp += df * dp / p0[i];
        f_pp += dp * dp / p0[i];
    }

    if (p_known_exactly) {
        if (std::abs(grad.d_phi) < 1e-12) return 0.0;
        return f_ff / (grad.d_phi * grad.d_phi);
    }
    return effective_information(f_ff, f_fp, f_pp, grad.d_phi, grad.d_p);
}

FisherScan optimal_setting_scan(const StateParams& params, double grid_step) {
    if (!(grid_step > 0.0 && grid_step <= std::numbers::pi / 8.0))
        throw std::invalid_argument("optimal_setting_scan: grid_step must be in (0, pi/8]");

    FisherScan scan;
    scan.step = grid_step;
    scan.alpha_start = -kHalfPi;
    scan.beta_start = -kHalfPi;
    scan.n_alpha = static_cast<int>(std::floor((std::numbers::pi - 1e-12) / grid_step)) + 1;
    scan.n_beta = scan.n_alpha;
    scan.values.resize(static_cast<std::size_t>(scan.n_alpha) * static_cast<std::size_t>(scan.n_beta));

    double best = -1.0;
    for (int ia = 0; ia < scan.n_alpha; ++ia) {
        for (int ib = 0; ib < scan.n_beta; ++ib) {
            const MeasurementSetting setting{scan.alpha_at(ia), scan.beta_at(ib)};
            const double f = fisher_information(params, setting, 1e-6);
            scan.values[static_cast<std::size_t>(ia * scan.n_beta + ib)] = f;
            if (std::isfinite(f) && f > best) {
                best = f;
                scan.best = setting;
            }
        }
    }
    scan.best_value = best;
    return scan;
}

}  // namespace negest
