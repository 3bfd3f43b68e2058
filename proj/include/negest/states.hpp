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
 * The two state families under study and their information geometry.
 *
 * CoherentMixture:  rho = p |psi_phi><psi_phi| + (1-p) D_phi, where
 *   |psi_phi> = cos(phi)|HH> + sin(phi)|VV| and D_phi is the dephased
 *   diagonal mixture. Negativity eps = p sin(2 phi).
 * Werner:           rho = p |psi_phi><psi_phi| + (1-p) I/4.
 *   Negativity eps = max(0, -1/2 + p/2 + p sin(2 phi)).
 *
 * The quantum Fisher information reported here is the effective one for
 * estimating the negativity with the mixing treated as an unknown nuisance
 * parameter: with Q the 2x2 QFI matrix over (eps, p), it is 1/[Q^-1]_ee,
 * computed through the projected symmetric logarithmic derivative
 * L = L_eps - (Q_ep/Q_pp) L_p. For the coherent mixture this evaluates to
 * 1/(1 - eps^2) for every p; the raw fixed-p direction would instead give
 * 1/(p^2 - eps^2), which is not attainable once p is unknown.
 */

#pragma once

#include "negest/linalg.hpp"

namespace negest {

enum class Model { CoherentMixture, Werner };

const char* model_name(Model m);

struct StateParams {
    Model model = Model::CoherentMixture;
    double phi = 0.0;  // radians, [0, pi/4]
    double p = 1.0;    // mixing weight, [0, 1]
};

/// Throws std::invalid_argument when phi or p is out of range.
void validate(const StateParams& params);

/// cos(phi)|HH> + sin(phi)|VV>; phi in [0, pi/4].
Ket4 make_pure(double phi);

DensityMatrix make_state(const StateParams& params);

/// Closed-form negativity of the family; matches negativity(make_state(.)).
double negativity_closed_form(const StateParams& params);

/// Inverse of eps = p sin(2 phi) at fixed p, for the coherent mixture.
/// Throws UnreachableNegativityError when eps > p or p = 0 with eps > 0.
double phi_from_negativity(double epsilon, double p);

/// Largest negativity the model can reach at mixing p (phi = pi/4).
double max_negativity(Model model, double p);

/// d eps / d(phi, p) of the (unclamped) closed form.
struct NegativityGradient {
    double d_phi = 0.0;
    double d_p = 0.0;
};
NegativityGradient negativity_gradient(const StateParams& params);

namespace detail {
/// Family matrix without the phi range check: the differentiation steps may
/// carry phi slightly past pi/4, where the matrix is still a valid state.
Mat4 family_matrix(Model model, double phi, double p);
}  // namespace detail

struct QfiResult {
    double epsilon = 0.0;
    double h_analytic = 0.0;  // 1/(1 - eps^2)
    double h_numeric = 0.0;   // Tr[rho L^2] from the numeric SLD
    Mat4 sld;                 // the (effective) symmetric logarithmic derivative
    double residual = 0.0;    // || d_rho - (L rho + rho L)/2 ||_F on the support
};

struct SldResult {
    Mat4 l;         // effective SLD
    Mat4 drho;      // matching derivative of rho
    double residual = 0.0;
    double h_numeric = 0.0;  // Tr[rho L^2]
};

/// Effective SLD for negativity estimation with unknown mixing. All
/// derivatives are taken in the nonsingular (phi, p) chart with step d_eps
/// and combined along the direction that changes the negativity at unit
/// rate while costing the least quantum information; Tr[rho L^2] is then
/// the attainable (nuisance-adjusted) QFI. Throws
/// DerivativeSingularityError at eps = 0 and eps = 1, where the estimation
/// problem itself degenerates.
SldResult sld_full(const StateParams& params, double d_eps);

/// The SLD matrix alone.
Mat4 sld(const StateParams& params, double d_eps);

/// QFI via sld_full with d_eps = 1e-6.
QfiResult qfi(const StateParams& params);

}  // namespace negest
