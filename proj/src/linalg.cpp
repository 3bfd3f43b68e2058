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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace negest {

namespace {

double off_diagonal_norm(const Mat4& a) {
    double s = 0.0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
}

}  // namespace

Ket2 Ket2::linear(double theta) {
    return {{cplx{std::cos(theta), 0.0}, cplx{std::sin(theta), 0.0}}};
}

Ket2 Ket2::diagonal() {
    const double r = 1.0 / std::sqrt(2.0);
    return {{cplx{r, 0.0}, cplx{r, 0.0}}};
}

Ket2 Ket2::antidiagonal() {
    const double r = 1.0 / std::sqrt(2.0);
    return {{cplx{r, 0.0}, cplx{-r, 0.0}}};
}

Ket2 Ket2::circular_left() {
    const double r = 1.0 / std::sqrt(2.0);
    return {{cplx{r, 0.0}, cplx{0.0, r}}};
}

double Ket2::norm2() const { return std::norm(amp[0]) + std::norm(amp[1]); }

Ket2 Ket2::normalized() const {
    const double n = std::sqrt(norm2());
    if (n == 0.0) throw std::invalid_argument("Ket2: cannot normalize the zero vector");
    return {{amp[0] / n, amp[1] / n}};
}

double Ket4::norm2() const {
    double s = 0.0;
    for (const auto& a : amp) s += std::norm(a);
    return s;
}

Ket4 Ket4::normalized() const {
    const double n = std::sqrt(norm2());
    if (n == 0.0) throw std::invalid_argument("Ket4: cannot normalize the zero vector");
    Ket4 out;
    for (int i = 0; i < 4; ++i) out.amp[static_cast<std::size_t>(i)] = amp[static_cast<std::size_t>(i)] / n;
    return out;
}

cplx inner(const Ket4& a, const Ket4& b) {
    cplx s{0.0, 0.0};
    for (int i = 0; i < 4; ++i)
        s += std::conj(a.amp[static_cast<std::size_t>(i)]) * b.amp[static_cast<std::size_t>(i)];
    return s;
}

Mat4 Mat4::identity() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = cplx{1.0, 0.0};
    return m;
}

Mat4 Mat4::operator+(const Mat4& o) const {
    Mat4 out;
    for (std::size_t i = 0; i < 16; ++i) out.m_[i] = m_[i] + o.m_[i];
    return out;
}

Mat4 Mat4::operator-(const Mat4& o) const {
    Mat4 out;
    for (std::size_t i = 0; i < 16; ++i) out.m_[i] = m_[i] - o.m_[i];
    return out;
}

Mat4 Mat4::operator*(const Mat4& o) const {
    Mat4 out;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            cplx s{0.0, 0.0};
            for (int k = 0; k < 4; ++k) s += (*this)(r, k) * o(k, c);
            out(r, c) = s;
        }
    return out;
}

Mat4 Mat4::operator*(double s) const {
    Mat4 out;
    for (std::size_t i = 0; i < 16; ++i) out.m_[i] = m_[i] * s;
    return out;
}

Mat4 Mat4::operator*(cplx s) const {
    Mat4 out;
    for (std::size_t i = 0; i < 16; ++i) out.m_[i] = m_[i] * s;
    return out;
}

Mat4 Mat4::adjoint() const {
    Mat4 out;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out(r, c) = std::conj((*this)(c, r));
    return out;
}

cplx Mat4::trace() const {
    return m_[0] + m_[5] + m_[10] + m_[15];
}

double Mat4::frobenius_norm() const {
    double s = 0.0;
    for (const auto& x : m_) s += std::norm(x);
    return std::sqrt(s);
}

double Mat4::hermiticity_defect() const {
    double d = 0.0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            const double v = std::abs((*this)(r, c) - std::conj((*this)(c, r)));
            if (std::isnan(v)) return std::numeric_limits<double>::infinity();
            d = std::max(d, v);
        }
    return d;
}

Mat4 operator*(double s, const Mat4& m) { return m * s; }

Mat4 outer(const Ket4& psi) {
    Mat4 out;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            out(r, c) = psi.amp[static_cast<std::size_t>(r)] * std::conj(psi.amp[static_cast<std::size_t>(c)]);
    return out;
}

Mat4 EigHermitian4::reconstruct() const {
    Mat4 out;
    for (int i = 0; i < 4; ++i) out = out + outer(vectors[static_cast<std::size_t>(i)]) * values[static_cast<std::size_t>(i)];
    return out;
}

DensityMatrix DensityMatrix::from_matrix(const Mat4& rho) {
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            if (!std::isfinite(rho(r, c).real()) || !std::isfinite(rho(r, c).imag()))
                throw std::invalid_argument("DensityMatrix: non-finite entry");
    if (rho.hermiticity_defect() > kHermitianTol)
        throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-12");
    if (std::abs(rho.trace() - cplx{1.0, 0.0}) > kTraceTol)
        throw std::invalid_argument("DensityMatrix: trace differs from 1 by more than 1e-12");
    const EigHermitian4 eig = eig_hermitian(rho);
    if (eig.values[0] < kPsdSlack)
        throw std::invalid_argument("DensityMatrix: negative eigenvalue below -1e-10");
    return DensityMatrix(rho);
}

Mat4 tensor_projector(const Ket2& a, const Ket2& b) {
    // negated-form comparisons so NaN amplitudes are rejected too
    if (!(std::abs(a.norm2() - 1.0) <= 1e-9) || !(std::abs(b.norm2() - 1.0) <= 1e-9))
        throw std::invalid_argument("tensor_projector: inputs must be normalized");
    Ket4 ab;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            ab.amp[static_cast<std::size_t>(2 * i + j)] =
                a.amp[static_cast<std::size_t>(i)] * b.amp[static_cast<std::size_t>(j)];
    return outer(ab);
}

Mat4 partial_transpose_b(const Mat4& rho) {
    Mat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    out(2 * i + l, 2 * k + j) = rho(2 * i + j, 2 * k + l);
    return out;
}

EigHermitian4 eig_hermitian(const Mat4& h) {
    if (!(h.hermiticity_defect() <= 1e-10))
        throw std::invalid_argument("eig_hermitian: input not Hermitian within 1e-10");

    // Exact symmetrization removes round-off skew before rotating.
    Mat4 a = (h + h.adjoint()) * 0.5;
    Mat4 v = Mat4::identity();

    const double tol = 1e-14 * std::max(1.0, a.frobenius_norm());
    for (int sweep = 0; sweep < 100; ++sweep) {
        if (off_diagonal_norm(a) < tol) break;
        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag < 1e-300) continue;

                // Factor the phase so the 2x2 block becomes real symmetric,
                // then apply the symmetric Schur rotation (GvL 8.4.1).
                const cplx phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t =
                    (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                 : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                Mat4 u = Mat4::identity();
                u(p, p) = cplx{c, 0.0};
                u(p, q) = cplx{s, 0.0};
                u(q, p) = -s * std::conj(phase);
                u(q, q) = c * std::conj(phase);

                a = u.adjoint() * a * u;
                v = v * u;
            }
        }
    }

    std::array<int, 4> order{0, 1, 2, 3};
    std::array<double, 4> diag{};
    for (int i = 0; i < 4; ++i) diag[static_cast<std::size_t>(i)] = a(i, i).real();
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return diag[static_cast<std::size_t>(x)] < diag[static_cast<std::size_t>(y)]; });

    EigHermitian4 out;
    for (int i = 0; i < 4; ++i) {
        const int src = order[static_cast<std::size_t>(i)];
        out.values[static_cast<std::size_t>(i)] = diag[static_cast<std::size_t>(src)];
        for (int r = 0; r < 4; ++r)
            out.vectors[static_cast<std::size_t>(i)].amp[static_cast<std::size_t>(r)] = v(r, src);
    }
    return out;
}

double negativity(const DensityMatrix& rho) {
    const EigHermitian4 eig = eig_hermitian(partial_transpose_b(rho.matrix()));
    double neg = 0.0;
    for (double lambda : eig.values)
        if (lambda < 0.0) neg += -lambda;
    return 2.0 * neg;
}

double purity(const DensityMatrix& rho) {
    return (rho.matrix() * rho.matrix()).trace().real();
}

double fidelity_with_pure(const DensityMatrix& rho, const Ket4& psi) {
    cplx s{0.0, 0.0};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            s += std::conj(psi.amp[static_cast<std::size_t>(r)]) * rho(r, c) * psi.amp[static_cast<std::size_t>(c)];
    return s.real();
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
    const EigHermitian4 ea = eig_hermitian(a.matrix());
    Mat4 sqrt_a;
    for (int i = 0; i < 4; ++i)
        sqrt_a = sqrt_a + outer(ea.vectors[static_cast<std::size_t>(i)]) *
                              std::sqrt(std::max(0.0, ea.values[static_cast<std::size_t>(i)]));
    const Mat4 m = sqrt_a * b.matrix() * sqrt_a;
    const EigHermitian4 em = eig_hermitian(m);
    double root_sum = 0.0;
    for (double lambda : em.values) root_sum += std::sqrt(std::max(0.0, lambda));
    return root_sum * root_sum;
}

double trace_distance(const Mat4& a, const Mat4& b) {
    const EigHermitian4 eig = eig_hermitian(a - b);
    double s = 0.0;
    for (double lambda : eig.values) s += std::abs(lambda);
    return 0.5 * s;
}

}  // namespace negest
