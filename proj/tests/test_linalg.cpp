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

#include "negest/linalg.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "negest/states.hpp"
#include "testutil.hpp"

using namespace negest;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("tensor_projector basics") {
    const Mat4 hh = tensor_projector(Ket2::h(), Ket2::h());
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            CHECK(std::abs(hh(r, c) - (r == 0 && c == 0 ? cplx{1, 0} : cplx{0, 0})) < 1e-15);

    // |D>|H> outer product has 0.5 on the (HH, VH) block.
    const Mat4 dh = tensor_projector(Ket2::diagonal(), Ket2::h());
    for (const auto [r, c] : {std::pair{0, 0}, {0, 2}, {2, 0}, {2, 2}})
        CHECK(dh(r, c).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(dh(1, 1)) < 1e-15);
    CHECK(std::abs(dh(3, 3)) < 1e-15);

    const Mat4 p = tensor_projector(Ket2::linear(17.0 * kPi / 180.0),
                                    Ket2::linear(63.0 * kPi / 180.0));
    CHECK(p.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.hermiticity_defect() < 1e-15);

    // rank 1: squared projector equals itself
    CHECK(test::max_entry_distance(p * p, p) < 1e-14);

    Ket2 unnormalized{{cplx{1.0, 0.0}, cplx{1.0, 0.0}}};
    CHECK_THROWS_AS(tensor_projector(unnormalized, Ket2::h()), std::invalid_argument);
}

TEST_CASE("partial transpose is a trace-preserving involution") {
    Mat4 diag;
    diag(0, 0) = 0.1;
    diag(1, 1) = 0.2;
    diag(2, 2) = 0.3;
    diag(3, 3) = 0.4;
    CHECK(test::max_entry_distance(partial_transpose_b(diag), diag) < 1e-16);

    std::mt19937_64 gen(7);
    for (int i = 0; i < 100; ++i) {
        const Mat4 rho = test::random_density(gen);
        const Mat4 pt = partial_transpose_b(rho);
        CHECK(test::max_entry_distance(partial_transpose_b(pt), rho) == 0.0);
        CHECK(std::abs(pt.trace() - rho.trace()) < 1e-15);
        CHECK(pt.hermiticity_defect() < 1e-14);
    }

    // Linearity on a random pair.
    const Mat4 a = test::random_hermitian(gen);
    const Mat4 b = test::random_hermitian(gen);
    CHECK(test::max_entry_distance(partial_transpose_b(a + b * 2.0),
                                   partial_transpose_b(a) + partial_transpose_b(b) * 2.0) == 0.0);
}

TEST_CASE("partial transpose of the Bell projector has eigenvalues -1/2, 1/2, 1/2, 1/2") {
    const DensityMatrix bell = make_state({Model::CoherentMixture, kPi / 4.0, 1.0});
    const EigHermitian4 eig = eig_hermitian(partial_transpose_b(bell.matrix()));
    CHECK(eig.values[0] == doctest::Approx(-0.5).epsilon(1e-12));
    for (int i = 1; i < 4; ++i)
        CHECK(eig.values[static_cast<std::size_t>(i)] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("eig_hermitian: diagonal, residuals, orthonormality") {
    Mat4 diag;
    diag(0, 0) = 0.1;
    diag(1, 1) = 0.2;
    diag(2, 2) = 0.3;
    diag(3, 3) = 0.4;
    const EigHermitian4 ed = eig_hermitian(diag);
    for (int i = 0; i < 4; ++i)
        CHECK(ed.values[static_cast<std::size_t>(i)] == doctest::Approx(0.1 * (i + 1)).epsilon(1e-14));

    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Mat4 h = test::random_hermitian(gen);
        const EigHermitian4 eig = eig_hermitian(h);

        CHECK(test::max_entry_distance(eig.reconstruct(), h) < 1e-10);
        for (int i = 0; i < 4; ++i) {
            // ||H v - lambda v||
            const Ket4& v = eig.vectors[static_cast<std::size_t>(i)];
            double residual = 0.0;
            for (int r = 0; r < 4; ++r) {
                cplx hv{0.0, 0.0};
                for (int c = 0; c < 4; ++c) hv += h(r, c) * v.amp[static_cast<std::size_t>(c)];
                residual += std::norm(hv - eig.values[static_cast<std::size_t>(i)] *
                                               v.amp[static_cast<std::size_t>(r)]);
            }
            CHECK(std::sqrt(residual) < 1e-10);
            for (int j = 0; j < 4; ++j) {
                const cplx dot = inner(eig.vectors[static_cast<std::size_t>(i)],
                                       eig.vectors[static_cast<std::size_t>(j)]);
                CHECK(std::abs(dot - (i == j ? cplx{1, 0} : cplx{0, 0})) < 1e-10);
            }
        }
        CHECK(eig.values[0] <= eig.values[1]);
        CHECK(eig.values[1] <= eig.values[2]);
        CHECK(eig.values[2] <= eig.values[3]);
    }

    Mat4 skew;
    skew(0, 1) = cplx{1.0, 0.0};  // not Hermitian
    CHECK_THROWS_AS(eig_hermitian(skew), std::invalid_argument);
}

TEST_CASE("DensityMatrix validation") {
    CHECK_NOTHROW(DensityMatrix::from_matrix(Mat4::identity() * 0.25));

    Mat4 poisoned = Mat4::identity() * 0.25;
    poisoned(2, 2) = cplx{std::nan(""), 0.0};
    CHECK_THROWS_AS(DensityMatrix::from_matrix(poisoned), std::invalid_argument);
    CHECK_THROWS_AS(eig_hermitian(poisoned), std::invalid_argument);

    Ket2 bad_ket{{cplx{std::nan(""), 0.0}, cplx{0.0, 0.0}}};
    CHECK_THROWS_AS(tensor_projector(bad_ket, Ket2::h()), std::invalid_argument);

    Mat4 bad_trace = Mat4::identity() * 0.3;
    CHECK_THROWS_AS(DensityMatrix::from_matrix(bad_trace), std::invalid_argument);

    Mat4 nonpsd;
    nonpsd(0, 0) = 1.1;
    nonpsd(1, 1) = -0.1;
    CHECK_THROWS_AS(DensityMatrix::from_matrix(nonpsd), std::invalid_argument);

    Mat4 nonherm = Mat4::identity() * 0.25;
    nonherm(0, 1) = cplx{1e-6, 0.0};
    CHECK_THROWS_AS(DensityMatrix::from_matrix(nonherm), std::invalid_argument);
}

TEST_CASE("negativity matches the closed form on the family grid") {
    // phi in {0,5,...,45} deg, p in {0, 0.25, 0.5, 0.75, 1}
    for (int phi_deg = 0; phi_deg <= 45; phi_deg += 5) {
        for (int ip = 0; ip <= 4; ++ip) {
            const double phi = phi_deg * kPi / 180.0;
            const double p = 0.25 * ip;
            const StateParams params{Model::CoherentMixture, phi, p};
            CHECK(std::abs(negativity(make_state(params)) - p * std::sin(2.0 * phi)) < 1e-12);
        }
    }

    CHECK(negativity(make_state({Model::CoherentMixture, kPi / 4.0, 1.0})) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(negativity(make_state({Model::CoherentMixture, 0.0, 0.9})) == doctest::Approx(0.0));
    // frozen from the partial-transpose eigenvalue oracle
    CHECK(std::abs(negativity(make_state({Model::CoherentMixture, 20.0 * kPi / 180.0, 0.88})) -
                   0.5656530965241546) < 1e-9);
}

TEST_CASE("purity: direct trace against the closed form") {
    CHECK(purity(make_state({Model::CoherentMixture, kPi / 4.0, 1.0})) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(purity(make_state({Model::CoherentMixture, kPi / 4.0, 0.0})) ==
          doctest::Approx(0.5).epsilon(1e-12));

    // frozen from the direct matrix-trace oracle; cross-checks
    // Tr rho^2 = 1 - (1-p^2) sin^2(2 phi)/2
    const double val = purity(make_state({Model::CoherentMixture, 20.0 * kPi / 180.0, 0.88}));
    CHECK(std::abs(val - 0.9533937572204149) < 1e-9);

    for (int phi_deg = 0; phi_deg <= 45; phi_deg += 5) {
        for (int ip = 0; ip <= 4; ++ip) {
            const double phi = phi_deg * kPi / 180.0;
            const double p = 0.25 * ip;
            const double s2 = std::sin(2.0 * phi) * std::sin(2.0 * phi);
            const double closed = 1.0 - (1.0 - p * p) * s2 / 2.0;
            CHECK(std::abs(purity(make_state({Model::CoherentMixture, phi, p})) - closed) < 1e-12);
        }
    }
}

TEST_CASE("fidelity_with_pure") {
    const Ket4 bell = make_pure(kPi / 4.0);
    CHECK(fidelity_with_pure(DensityMatrix::from_matrix(outer(bell)), bell) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // dephased state against its own pure component: cos^4 + sin^4
    CHECK(fidelity_with_pure(make_state({Model::CoherentMixture, kPi / 4.0, 0.0}), bell) ==
          doctest::Approx(0.5).epsilon(1e-12));

    const double phi = 30.0 * kPi / 180.0;
    const double c4 = std::pow(std::cos(phi), 4), s4 = std::pow(std::sin(phi), 4);
    const double expected = 0.9 + 0.1 * (c4 + s4);
    CHECK(expected == doctest::Approx(0.9625).epsilon(1e-12));
    CHECK(fidelity_with_pure(make_state({Model::CoherentMixture, phi, 0.9}), make_pure(phi)) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("mixed-state fidelity and trace distance") {
    const DensityMatrix bell = make_state({Model::CoherentMixture, kPi / 4.0, 1.0});
    const DensityMatrix mixed = DensityMatrix::from_matrix(Mat4::identity() * 0.25);

    CHECK(fidelity(bell, bell) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fidelity(mixed, bell) == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(trace_distance(mixed.matrix(), bell.matrix()) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(trace_distance(bell.matrix(), bell.matrix()) == doctest::Approx(0.0));
}
