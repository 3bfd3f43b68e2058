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
 * Exact small-scale complex linear algebra for two-qubit polarization
 * operators: kets, 4x4 matrices, partial transpose, a Jacobi Hermitian
 * eigensolver, and the entanglement/purity functionals.
 *
 * Basis order is (HH, HV, VH, VV) everywhere: index = 2*first + second,
 * little-endian on the second qubit.
 */

#pragma once

#include <array>
#include <complex>
#include <cstddef>

namespace negest {

using cplx = std::complex<double>;

/// Single-qubit polarization ket in the (|H>, |V>) basis.
struct Ket2 {
    std::array<cplx, 2> amp{};

    static Ket2 h() { return {{cplx{1.0, 0.0}, cplx{0.0, 0.0}}}; }
    static Ket2 v() { return {{cplx{0.0, 0.0}, cplx{1.0, 0.0}}}; }
    /// Linear polarization at angle theta: cos(theta)|H> + sin(theta)|V>.
    static Ket2 linear(double theta);
    static Ket2 diagonal();       // (|H> + |V>)/sqrt(2)
    static Ket2 antidiagonal();   // (|H> - |V>)/sqrt(2)
    static Ket2 circular_left();  // (|H> + i|V>)/sqrt(2)

    double norm2() const;
    Ket2 normalized() const;
};

/// Two-qubit ket in the (HH, HV, VH, VV) basis.
struct Ket4 {
    std::array<cplx, 4> amp{};

    double norm2() const;
    Ket4 normalized() const;
};

cplx inner(const Ket4& a, const Ket4& b);  // <a|b>

/// Dense 4x4 complex matrix, row-major. Value semantics throughout.
class Mat4 {
  public:
    Mat4() = default;

    static Mat4 zero() { return Mat4{}; }
    static Mat4 identity();

    cplx& operator()(int r, int c) { return m_[static_cast<std::size_t>(4 * r + c)]; }
    const cplx& operator()(int r, int c) const { return m_[static_cast<std::size_t>(4 * r + c)]; }

    Mat4 operator+(const Mat4& o) const;
    Mat4 operator-(const Mat4& o) const;
    Mat4 operator*(const Mat4& o) const;
    Mat4 operator*(double s) const;
    Mat4 operator*(cplx s) const;

    Mat4 adjoint() const;
    cplx trace() const;
    double frobenius_norm() const;
    /// max |m(r,c) - conj(m(c,r))| over all entries.
    double hermiticity_defect() const;

  private:
    std::array<cplx, 16> m_{};
};

Mat4 operator*(double s, const Mat4& m);

/// |psi><psi|
Mat4 outer(const Ket4& psi);

/// Ascending eigenvalues with matching orthonormal eigenvectors (as columns).
struct EigHermitian4 {
    std::array<double, 4> values{};
    std::array<Ket4, 4> vectors{};

    /// Sum of lambda_i |v_i><v_i| (the spectral reconstruction).
    Mat4 reconstruct() const;
};

/// Validated two-qubit density operator: Hermitian within 1e-12, unit trace
/// within 1e-12, smallest eigenvalue >= -1e-10.
class DensityMatrix {
  public:
    /// Validates the invariants; throws std::invalid_argument on violation.
    static DensityMatrix from_matrix(const Mat4& rho);

    const Mat4& matrix() const { return rho_; }
    const cplx& operator()(int r, int c) const { return rho_(r, c); }

  private:
    explicit DensityMatrix(const Mat4& rho) : rho_(rho) {}
    Mat4 rho_;
};

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdSlack = -1e-10;

/// |a><a| (x) |b><b| for normalized single-qubit kets.
/// Throws std::invalid_argument when an input is not normalized.
Mat4 tensor_projector(const Ket2& a, const Ket2& b);

/// Partial transpose over the second qubit: ((i,j),(k,l)) -> ((i,l),(k,j)).
/// Linear involution; preserves trace and Hermiticity.
Mat4 partial_transpose_b(const Mat4& rho);

/// Cyclic complex Jacobi diagonalization of a Hermitian 4x4 matrix.
/// Converges when the off-diagonal Frobenius norm drops below 1e-14.
/// Throws std::invalid_argument if the input is not Hermitian within 1e-10.
EigHermitian4 eig_hermitian(const Mat4& h);

/// Negativity: 2 * sum |negative eigenvalues of the partial transpose|
/// (equivalently ||rho^Tb||_1 - 1). Equals p*sin(2*phi) on the coherent
/// mixture family.
double negativity(const DensityMatrix& rho);

/// Tr[rho^2].
double purity(const DensityMatrix& rho);

/// <psi|rho|psi>.
double fidelity_with_pure(const DensityMatrix& rho, const Ket4& psi);

/// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2 via the spectral square root.
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

/// (1/2) * sum |eigenvalues of (a - b)|.
double trace_distance(const Mat4& a, const Mat4& b);

}  // namespace negest
