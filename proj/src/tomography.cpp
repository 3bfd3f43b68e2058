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

#include "negest/tomography.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "negest/errors.hpp"
#include "negest/rng.hpp"

namespace negest {

namespace {

constexpr std::uint64_t kTomoPlane = 0x544f4d4fULL;  // "TOMO"

/// Dense row-major n x n solve by Gaussian elimination with partial
/// pivoting. Throws IllPosedSettingsError on a (numerically) singular
/// system.
std::vector<double> solve_linear(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    double scale = 0.0;
    for (double x : a) scale = std::max(scale, std::abs(x));
    const double tiny = 1e-12 * std::max(1.0, scale);

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
        if (std::abs(a[pivot * n + col]) < tiny)
            throw IllPosedSettingsError("tomography: singular Gram/system matrix");
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
            std::swap(b[col], b[pivot]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < n; ++c) s -= a[r * n + c] * x[c];
        x[r] = s / a[r * n + r];
    }
    return x;
}

Mat4 setting_projector(const TomoSetting& s) {
    return tensor_projector(s.projector_a, s.projector_b);
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

/// 2x2 Pauli entries by index (0:I, 1:X, 2:Y, 3:Z).
cplx pauli2(int which, int r, int c) {
    switch (which) {
        case 0: return r == c ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
        case 1: return r != c ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
        case 2:
            if (r == 0 && c == 1) return cplx{0.0, -1.0};
            if (r == 1 && c == 0) return cplx{0.0, 1.0};
            return cplx{0.0, 0.0};
        default: return r == c ? cplx{r == 0 ? 1.0 : -1.0, 0.0} : cplx{0.0, 0.0};
    }
}

Mat4 pauli_product(int a, int b) {
    Mat4 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    m(2 * i + j, 2 * k + l) = pauli2(a, i, k) * pauli2(b, j, l);
    return m;
}

}  // namespace

std::vector<TomoSetting> canonical_settings() {
    const std::array<std::pair<char, Ket2>, 4> arm = {{
        {'H', Ket2::h()},
        {'V', Ket2::v()},
        {'D', Ket2::diagonal()},
        {'L', Ket2::circular_left()},
    }};
    std::vector<TomoSetting> out;
    out.reserve(16);
    for (const auto& [la, ka] : arm)
        for (const auto& [lb, kb] : arm)
            out.push_back({ka, kb, std::string{la} + std::string{lb}});
    return out;
}

std::vector<TomoSetting> linear_settings() {
    const std::array<std::pair<char, Ket2>, 3> arm = {{
        {'H', Ket2::h()},
        {'V', Ket2::v()},
        {'D', Ket2::diagonal()},
    }};
    std::vector<TomoSetting> out;
    out.reserve(9);
    for (const auto& [la, ka] : arm)
        for (const auto& [lb, kb] : arm)
            out.push_back({ka, kb, std::string{la} + std::string{lb}});
    return out;
}

TomoDataset exact_rates(const DensityMatrix& rho, const std::vector<TomoSetting>& settings) {
    TomoDataset data;
    data.reserve(settings.size());
    for (const TomoSetting& s : settings) {
        const double rate = (rho.matrix() * setting_projector(s)).trace().real();
        data.push_back({s, std::max(0.0, rate)});
    }
    return data;
}

TomoDataset sampled_rates(const DensityMatrix& rho, const std::vector<TomoSetting>& settings,
                          double counts_per_setting, std::uint64_t seed) {
    if (!(counts_per_setting > 0.0))
        throw std::invalid_argument("sampled_rates: counts_per_setting must be positive");
    TomoDataset data = exact_rates(rho, settings);
    for (std::size_t mu = 0; mu < data.size(); ++mu) {
        SplitMix64 rng(derive_stream(seed, kTomoPlane, mu));
        const auto k = poisson_sample(counts_per_setting * data[mu].rate, rng);
        data[mu].rate = static_cast<double>(k) / counts_per_setting;
    }
    return data;
}

Mat4 linear_inversion(const TomoDataset& data) {
    const std::size_t n = data.size();
    if (n < 16) throw IllPosedSettingsError("linear_inversion: needs 16 settings");

    std::vector<Mat4> proj;
    proj.reserve(n);
    for (const TomoObservation& obs : data) proj.push_back(setting_projector(obs.setting));

    std::vector<double> gram(n * n, 0.0);
    std::vector<double> rates(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        rates[r] = data[r].rate;
        for (std::size_t c = 0; c < n; ++c)
            gram[r * n + c] = (proj[r] * proj[c]).trace().real();
    }

    const std::vector<double> coeff = solve_linear(std::move(gram), std::move(rates));
    Mat4 rho;
    for (std::size_t v = 0; v < n; ++v) rho = rho + proj[v] * coeff[v];

    const double tr = rho.trace().real();
    if (std::abs(tr) < 0.1)
        throw IllPosedSettingsError("linear_inversion: reconstruction trace collapsed");
    return rho * (1.0 / tr);
}

Mat4 linear_inversion_real(const TomoDataset& data) {
    if (data.size() != 9)
        throw IllPosedSettingsError("linear_inversion_real: needs the 9 linear settings");

    // Basis: the nine {I,X,Z} x {I,X,Z} products plus YY, with the structural
    // constraint rho[HV,VH] = 0 supplying the tenth equation.
    std::vector<Mat4> basis;
    basis.reserve(10);
    for (int a : {0, 1, 3})
        for (int b : {0, 1, 3}) basis.push_back(pauli_product(a, b));
    basis.push_back(pauli_product(2, 2));

    std::vector<double> sys(100, 0.0);
    std::vector<double> rhs(10, 0.0);
    for (std::size_t mu = 0; mu < 9; ++mu) {
        const Mat4 proj = setting_projector(data[mu].setting);
        for (std::size_t k = 0; k < 10; ++k)
            sys[mu * 10 + k] = (basis[k] * proj).trace().real();
        rhs[mu] = data[mu].rate;
    }
    for (std::size_t k = 0; k < 10; ++k) sys[9 * 10 + k] = basis[k](1, 2).real();
    rhs[9] = 0.0;

    const std::vector<double> coeff = solve_linear(std::move(sys), std::move(rhs));
    Mat4 rho;
    for (std::size_t k = 0; k < 10; ++k) rho = rho + basis[k] * coeff[k];

    const double tr = rho.trace().real();
    if (std::abs(tr) < 0.1)
        throw IllPosedSettingsError("linear_inversion_real: reconstruction trace collapsed");
    return rho * (1.0 / tr);
}

DensityMatrix project_to_physical(const Mat4& h) {
    if (std::abs(h.trace() - cplx{1.0, 0.0}) > 1e-6)
        throw std::invalid_argument("project_to_physical: trace must be 1 within 1e-6");
    const EigHermitian4 eig = eig_hermitian(h);
    double mass = 0.0;
    for (double lambda : eig.values) mass += std::max(0.0, lambda);
    if (!(mass > 0.0))
        throw std::invalid_argument("project_to_physical: no positive spectral mass");
    Mat4 rho;
    for (int i = 0; i < 4; ++i) {
        const double lambda = std::max(0.0, eig.values[static_cast<std::size_t>(i)]);
        if (lambda > 0.0)
            rho = rho + outer(eig.vectors[static_cast<std::size_t>(i)]) * (lambda / mass);
    }
    // Symmetrize away eigenvector round-off before validation.
    rho = (rho + rho.adjoint()) * 0.5;
    return DensityMatrix::from_matrix(rho);
}

ModelComparison compare_to_model(const DensityMatrix& rho_rec, const StateParams& params) {
    const DensityMatrix model = make_state(params);
    ModelComparison out;
    if (params.p >= 1.0)  // both families are the pure |psi_phi> at p = 1
        out.fidelity = fidelity_with_pure(rho_rec, make_pure(params.phi));
    else
        out.fidelity = fidelity(rho_rec, model);
    out.trace_distance = trace_distance(rho_rec.matrix(), model.matrix());
    out.negativity_gap = std::abs(negativity(rho_rec) - negativity(model));
    return out;
}

std::string tomo_to_csv(const TomoDataset& data) {
    std::string csv = "label,a_re0,a_im0,a_re1,a_im1,b_re0,b_im0,b_re1,b_im1,rate\n";
    for (const TomoObservation& obs : data) {
        csv += obs.setting.label;
        for (const Ket2* ket : {&obs.setting.projector_a, &obs.setting.projector_b})
            for (int i = 0; i < 2; ++i) {
                csv += ',';
                csv += format_double(ket->amp[static_cast<std::size_t>(i)].real());
                csv += ',';
                csv += format_double(ket->amp[static_cast<std::size_t>(i)].imag());
            }
        csv += ',';
        csv += format_double(obs.rate);
        csv += '\n';
    }
    return csv;
}

TomoDataset tomo_from_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("tomo CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "label,a_re0,a_im0,a_re1,a_im1,b_re0,b_im0,b_re1,b_im1,rate")
        throw ParseError("tomo CSV: unexpected header: " + line);

    TomoDataset data;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::array<std::string, 10> fields;
        std::size_t start = 0;
        for (int f = 0; f < 10; ++f) {
            const std::size_t comma = line.find(',', start);
            if (f < 9 && comma == std::string::npos)
                throw ParseError("tomo CSV: line " + std::to_string(line_no) + ": expected 10 fields");
            fields[static_cast<std::size_t>(f)] =
                line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            start = comma + 1;
        }
        TomoObservation obs;
        obs.setting.label = fields[0];
        try {
            obs.setting.projector_a.amp[0] = cplx{std::stod(fields[1]), std::stod(fields[2])};
            obs.setting.projector_a.amp[1] = cplx{std::stod(fields[3]), std::stod(fields[4])};
            obs.setting.projector_b.amp[0] = cplx{std::stod(fields[5]), std::stod(fields[6])};
            obs.setting.projector_b.amp[1] = cplx{std::stod(fields[7]), std::stod(fields[8])};
            obs.rate = std::stod(fields[9]);
        } catch (const std::exception&) {
            throw ParseError("tomo CSV: line " + std::to_string(line_no) + ": malformed field");
        }
        data.push_back(obs);
    }
    return data;
}

}  // namespace negest
