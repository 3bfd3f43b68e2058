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

#include "negest/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "negest/errors.hpp"

namespace negest {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kSupportCutoff = 1e-10;  // lambda_m + lambda_n above this enter the SLD sum

Mat4 basis_matrix(const EigHermitian4& eig) {
    Mat4 v;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            v(r, c) = eig.vectors[static_cast<std::size_t>(c)].amp[static_cast<std::size_t>(r)];
    return v;
}

/// SLD for a given derivative of rho, in the eigenbasis representation:
/// L = 2 sum_{m,n} <m|drho|n> / (lm + ln) |m><n| over supported pairs.
Mat4 sld_from_derivative(const Mat4& drho, const EigHermitian4& eig, const Mat4& v) {
    const Mat4 d_eigen = v.adjoint() * drho * v;
    Mat4 l_eigen;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
            const double denom = eig.values[static_cast<std::size_t>(m)] + eig.values[static_cast<std::size_t>(n)];
            if (denom > kSupportCutoff) l_eigen(m, n) = 2.0 * d_eigen(m, n) / denom;
        }
    return v * l_eigen * v.adjoint();
}

double support_residual(const Mat4& defect, const EigHermitian4& eig, const Mat4& v) {
    Mat4 d_eigen = v.adjoint() * defect * v;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
            const double denom = eig.values[static_cast<std::size_t>(m)] + eig.values[static_cast<std::size_t>(n)];
            if (denom <= kSupportCutoff) d_eigen(m, n) = cplx{0.0, 0.0};
        }
    return d_eigen.frobenius_norm();
}

}  // namespace

const char* model_name(Model m) {
    return m == Model::CoherentMixture ? "coherent" : "werner";
}

void validate(const StateParams& params) {
    if (!(params.phi >= 0.0 && params.phi <= kQuarterPi + 1e-12))
        throw std::invalid_argument("StateParams: phi must be in [0, pi/4]");
    if (!(params.p >= 0.0 && params.p <= 1.0))
        throw std::invalid_argument("StateParams: p must be in [0, 1]");
}

Ket4 make_pure(double phi) {
    if (!(phi >= 0.0 && phi <= kQuarterPi + 1e-12))
        throw std::invalid_argument("make_pure: phi must be in [0, pi/4]");
    Ket4 psi;
    psi.amp[0] = cplx{std::cos(phi), 0.0};
    psi.amp[3] = cplx{std::sin(phi), 0.0};
    return psi;
}

namespace detail {

Mat4 family_matrix(Model model, double phi, double p) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    Mat4 rho;
    if (model == Model::CoherentMixture) {
        rho(0, 0) = cplx{c * c, 0.0};
        rho(3, 3) = cplx{s * s, 0.0};
        rho(0, 3) = rho(3, 0) = cplx{p * s * c, 0.0};
    } else {
        Ket4 psi;
        psi.amp[0] = cplx{c, 0.0};
        psi.amp[3] = cplx{s, 0.0};
        rho = outer(psi) * p;
        const double iso = (1.0 - p) / 4.0;
        for (int i = 0; i < 4; ++i) rho(i, i) += cplx{iso, 0.0};
    }
    return rho;
}

}  // namespace detail

DensityMatrix make_state(const StateParams& params) {
    validate(params);
    return DensityMatrix::from_matrix(detail::family_matrix(params.model, params.phi, params.p));
}

double negativity_closed_form(const StateParams& params) {
    validate(params);
    const double sin2phi = std::sin(2.0 * params.phi);
    if (params.model == Model::CoherentMixture) return params.p * sin2phi;
    return std::max(0.0, -0.5 + 0.5 * params.p + params.p * sin2phi);
}

double phi_from_negativity(double epsilon, double p) {
    if (epsilon < 0.0) throw UnreachableNegativityError("negativity must be nonnegative");
    if (p <= 0.0) {
        if (epsilon > 0.0) throw UnreachableNegativityError("p = 0 admits only zero negativity");
        throw UnreachableNegativityError("phi undetermined at p = 0");
    }
    if (epsilon > p) throw UnreachableNegativityError("negativity exceeds the mixing weight p");
    return 0.5 * std::asin(std::min(1.0, epsilon / p));
}

double max_negativity(Model model, double p) {
    if (model == Model::CoherentMixture) return p;
    return std::max(0.0, 0.5 * (3.0 * p - 1.0));
}

NegativityGradient negativity_gradient(const StateParams& params) {
    NegativityGradient g;
    g.d_phi = 2.0 * params.p * std::cos(2.0 * params.phi);
    g.d_p = std::sin(2.0 * params.phi);
    if (params.model == Model::Werner) g.d_p += 0.5;
    return g;
}

SldResult sld_full(const StateParams& params, double d_eps) {
    validate(params);
    if (!(d_eps > 0.0)) throw std::invalid_argument("sld: d_eps must be positive");

    const Model model = params.model;
    const double phi = params.phi;
    const double p = params.p;
    const double eps = negativity_closed_form(params);
    if (eps < 1e-9) throw DerivativeSingularityError("sld: negativity at zero");
    if (eps > 1.0 - 1e-9) throw DerivativeSingularityError("sld: negativity at one");

    const DensityMatrix rho = make_state(params);
    const EigHermitian4 eig = eig_hermitian(rho.matrix());
    const Mat4 v = basis_matrix(eig);
    const double inv_2d = 1.0 / (2.0 * d_eps);

    const Mat4 drho_phi = (detail::family_matrix(model, phi + d_eps, p) -
                           detail::family_matrix(model, phi - d_eps, p)) * inv_2d;
    const Mat4 l_phi = sld_from_derivative(drho_phi, eig, v);
    const double q_ff = (drho_phi * l_phi).trace().real();

    // At the pure boundary the mixing direction changes the rank, its QFI
    // diverges and the nuisance penalty vanishes; the same holds at the
    // fully mixed end, so the correction is dropped there.
    const bool p_interior = (p + d_eps <= 1.0) && (p - d_eps >= 0.0);
    Mat4 drho_p, l_p;
    double q_pp = 0.0, q_fp = 0.0;
    if (p_interior) {
        drho_p = (detail::family_matrix(model, phi, p + d_eps) -
                  detail::family_matrix(model, phi, p - d_eps)) * inv_2d;
        l_p = sld_from_derivative(drho_p, eig, v);
        q_pp = (drho_p * l_p).trace().real();
        q_fp = 0.5 * ((drho_p * l_phi).trace().real() + (drho_phi * l_p).trace().real());
    }

    // Direction with unit negativity rate and minimal quantum cost:
    // w = Q^{-1} grad / (grad' Q^{-1} grad); then Tr[rho L^2] = 1/(grad' Q^{-1} grad).
    const NegativityGradient grad = negativity_gradient(params);
    double w_phi, w_p;
    const double det = q_ff * q_pp - q_fp * q_fp;
    if (p_interior && det > 1e-12 * (q_ff * q_pp + 1.0)) {
        const double s_phi = (q_pp * grad.d_phi - q_fp * grad.d_p) / det;
        const double s_p = (-q_fp * grad.d_phi + q_ff * grad.d_p) / det;
        const double denom = grad.d_phi * s_phi + grad.d_p * s_p;
        w_phi = s_phi / denom;
        w_p = s_p / denom;
    } else {
        if (std::abs(grad.d_phi) < 1e-12)
            throw DerivativeSingularityError("sld: negativity stationary at a family boundary");
        w_phi = 1.0 / grad.d_phi;
        w_p = 0.0;
    }

    SldResult out;
    out.l = l_phi * w_phi + l_p * w_p;
    out.drho = drho_phi * w_phi + drho_p * w_p;
    out.h_numeric = (rho.matrix() * out.l * out.l).trace().real();
    const Mat4 defect = out.drho - (out.l * rho.matrix() + rho.matrix() * out.l) * 0.5;
    out.residual = support_residual(defect, eig, v);
    return out;
}

Mat4 sld(const StateParams& params, double d_eps) {
    return sld_full(params, d_eps).l;
}

QfiResult qfi(const StateParams& params) {
    const double eps = negativity_closed_form(params);
    if (!(eps > 0.0 && eps < 1.0))
        throw DerivativeSingularityError("qfi: negativity must lie in (0, 1)");
    const SldResult s = sld_full(params, 1e-6);
    QfiResult out;
    out.epsilon = eps;
    out.h_analytic = 1.0 / (1.0 - eps * eps);
    out.h_numeric = s.h_numeric;
    out.sld = s.l;
    out.residual = s.residual;
    return out;
}

}  // namespace negest
