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

// Test-only helpers: seeded generators for random states and an
// independent brute-force path for the quantities the library computes.

#pragma once

#include <cmath>
#include <random>

#include "negest/linalg.hpp"
#include "negest/states.hpp"

namespace negest::test {

/// Random density matrix from a complex Ginibre draw, rho = G G^dag / Tr.
inline Mat4 random_density(std::mt19937_64& gen) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Mat4 g;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) g(r, c) = cplx{normal(gen), normal(gen)};
    Mat4 rho = g * g.adjoint();
    const double tr = rho.trace().real();
    rho = rho * (1.0 / tr);
    // Exact Hermitian symmetrization of the round-off tail.
    return (rho + rho.adjoint()) * 0.5;
}

/// Random Hermitian with entries of order 1.
inline Mat4 random_hermitian(std::mt19937_64& gen) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Mat4 a;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) a(r, c) = cplx{normal(gen), normal(gen)};
    return (a + a.adjoint()) * 0.5;
}

inline StateParams random_family_params(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    StateParams params;
    params.model = (gen() & 1) ? Model::CoherentMixture : Model::Werner;
    params.phi = uni(gen) * (std::numbers::pi / 4.0);
    params.p = uni(gen);
    return params;
}

/// Brute-force <a (x) b| m |a (x) b> without tensor_projector.
inline double sandwich_product(const Mat4& m, const Ket2& a, const Ket2& b) {
    Ket4 ab;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            ab.amp[static_cast<std::size_t>(2 * i + j)] =
                a.amp[static_cast<std::size_t>(i)] * b.amp[static_cast<std::size_t>(j)];
    cplx s{0.0, 0.0};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            s += std::conj(ab.amp[static_cast<std::size_t>(r)]) * m(r, c) *
                 ab.amp[static_cast<std::size_t>(c)];
    return s.real();
}

inline double max_entry_distance(const Mat4& a, const Mat4& b) {
    double d = 0.0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) d = std::max(d, std::abs(a(r, c) - b(r, c)));
    return d;
}

}  // namespace negest::test
