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

#include "negest/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"
#include "negest/errors.hpp"

namespace negest {

namespace {

constexpr double kDegenerateSin = 1e-6;

double count_visibility(const CoincidenceVector& k) {
    const std::int64_t total = k.total();
    if (total <= 0) throw EmptySampleError("visibility: no coincidences in window");
    return static_cast<double>(k.k[0] - k.k[1] - k.k[2] + k.k[3]) / static_cast<double>(total);
}

void require_nondegenerate(const MeasurementSetting& s) {
    if (std::abs(std::sin(2.0 * s.alpha)) < kDegenerateSin ||
        std::abs(std::sin(2.0 * s.beta)) < kDegenerateSin)
        throw DegenerateAnglesError("setting has sin(2 alpha) or sin(2 beta) ~ 0");
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

}  // namespace

SampleStats sample_stats(const std::vector<double>& values) {
    if (values.empty()) throw EmptySampleError("sample_stats: empty sample");
    SampleStats s;
    s.count = static_cast<int>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(s.count);
    if (s.count >= 2) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.variance = ss / static_cast<double>(s.count - 1);
    }
    return s;
}

std::array<double, 4> count_rates(const CoincidenceVector& k) {
    const std::int64_t total = k.total();
    if (total <= 0) throw EmptySampleError("count_rates: no coincidences in window");
    std::array<double, 4> rates{};
    for (int t = 0; t < 4; ++t)
        rates[static_cast<std::size_t>(t)] =
            static_cast<double>(k.k[static_cast<std::size_t>(t)]) / static_cast<double>(total);
    return rates;
}

double estimate_negativity(const CoincidenceVector& k, const MeasurementSetting& setting) {
    require_nondegenerate(setting);
    const double v = count_visibility(k);
    const double sin_a = std::sin(2.0 * setting.alpha);
    const double sin_b = std::sin(2.0 * setting.beta);
    const double cot_a = std::cos(2.0 * setting.alpha) / sin_a;
    const double cot_b = std::cos(2.0 * setting.beta) / sin_b;
    return v / (sin_a * sin_b) - cot_a * cot_b;
}

double estimate_mixing(const CoincidenceVector& r, double eps_hat) {
    const std::int64_t total = r.total();
    if (total <= 0) throw EmptySampleError("estimate_mixing: no coincidences in window");
    if (r.k[3] <= 0 || r.k[3] >= total)
        throw DegenerateDiagonalError("estimate_mixing: r3 at 0 or R (phi too close to 0 or pi/2)");
    const double q = static_cast<double>(r.k[3]) / static_cast<double>(total);
    return eps_hat / (2.0 * std::sqrt(q * (1.0 - q)));
}

double true_negativity(double phi, double p_hat_mean) {
    return p_hat_mean * std::sin(2.0 * phi);
}

double true_negativity_err(double phi, double p_hat_sd) {
    return p_hat_sd * std::sin(2.0 * phi);
}

double propagate_variance(const std::array<double, 4>& mean_k,
                          const std::array<double, 4>& var_k) {
    for (int t = 0; t < 4; ++t)
        if (!(mean_k[static_cast<std::size_t>(t)] >= 0.0) ||
            !(var_k[static_cast<std::size_t>(t)] >= 0.0))
            throw std::invalid_argument("propagate_variance: means and variances must be >= 0");
    const double total = mean_k[0] + mean_k[1] + mean_k[2] + mean_k[3];
    if (!(total > 0.0)) throw EmptySampleError("propagate_variance: zero mean total");
    const double outer_sum = mean_k[0] + mean_k[3];
    const double inner_sum = mean_k[1] + mean_k[2];
    const double num = outer_sum * outer_sum * (var_k[1] + var_k[2]) +
                       inner_sum * inner_sum * (var_k[0] + var_k[3]);
    return 4.0 * num / (total * total * total * total);
}

double poisson_variance_closed_form(const CoincidenceVector& k) {
    const std::int64_t total = k.total();
    if (total <= 0) throw EmptySampleError("poisson_variance_closed_form: K = 0");
    const double kt = static_cast<double>(total);
    return 4.0 * static_cast<double>(k.k[0] + k.k[3]) * static_cast<double>(k.k[1] + k.k[2]) /
           (kt * kt * kt);
}

std::array<std::optional<double>, 4> fano_factors(const std::vector<RunRecord>& records) {
    if (records.size() < 2) throw EmptySampleError("fano_factors: need at least 2 records");
    for (const RunRecord& r : records)
        if (r.setting.alpha != records.front().setting.alpha ||
            r.setting.beta != records.front().setting.beta)
            throw std::invalid_argument("fano_factors: records must share one setting");

    std::array<std::optional<double>, 4> out{};
    for (int t = 0; t < 4; ++t) {
        std::vector<double> counts;
        counts.reserve(records.size());
        for (const RunRecord& r : records)
            counts.push_back(static_cast<double>(r.counts.k[static_cast<std::size_t>(t)]));
        const SampleStats s = sample_stats(counts);
        if (s.mean > 0.0) out[static_cast<std::size_t>(t)] = s.variance / s.mean;
    }
    return out;
}

WernerEstimate estimate_werner(const CoincidenceVector& r, const CoincidenceVector& k,
                               const MeasurementSetting& setting) {
    require_nondegenerate(setting);
    if (r.total() <= 0 || k.total() <= 0)
        throw EmptySampleError("estimate_werner: empty window");

    WernerEstimate est;
    est.p_hat = count_visibility(r);
    const double sin_a = std::sin(2.0 * setting.alpha);
    const double sin_b = std::sin(2.0 * setting.beta);
    const double cos_ab = std::cos(2.0 * setting.alpha) * std::cos(2.0 * setting.beta);
    const double coherence = (count_visibility(k) - cos_ab * est.p_hat) / (sin_a * sin_b);
    est.eps_hat = -0.5 + 0.5 * est.p_hat + coherence;
    return est;
}

EstimationReport build_report(Model model, double phi,
                              const std::vector<RunRecord>& main_records,
                              const std::vector<RunRecord>& diagonal_records) {
    if (main_records.size() < 2)
        throw EmptySampleError("build_report: need at least 2 main-setting records");
    if (diagonal_records.size() != main_records.size())
        throw std::invalid_argument("build_report: main and diagonal run counts differ");

    const MeasurementSetting setting = main_records.front().setting;
    const std::size_t m = main_records.size();

    std::vector<double> eps_series, p_series, k_series;
    eps_series.reserve(m);
    p_series.reserve(m);
    k_series.reserve(m);
    bool in_range = true;

    for (std::size_t j = 0; j < m; ++j) {
        const CoincidenceVector& k = main_records[j].counts;
        const CoincidenceVector& r = diagonal_records[j].counts;
        if (model == Model::CoherentMixture) {
            const double eps_hat = estimate_negativity(k, setting);
            eps_series.push_back(eps_hat);
            p_series.push_back(estimate_mixing(r, eps_hat));
        } else {
            const WernerEstimate w = estimate_werner(r, k, setting);
            eps_series.push_back(w.eps_hat);
            p_series.push_back(w.p_hat);
        }
        if (eps_series.back() < 0.0 || eps_series.back() > 1.0) in_range = false;
        k_series.push_back(static_cast<double>(k.total()));
    }

    EstimationReport rep;
    rep.model = model;
    rep.eps_hat = sample_stats(eps_series);
    rep.p_hat = sample_stats(p_series);
    rep.mean_k = sample_stats(k_series).mean;
    rep.eps_in_range = in_range;

    const double p_mean_clamped = std::clamp(rep.p_hat.mean, 0.0, 1.0);
    const double p_sd = std::sqrt(rep.p_hat.variance);
    if (model == Model::CoherentMixture) {
        rep.eps_true = true_negativity(phi, rep.p_hat.mean);
        rep.eps_true_err = true_negativity_err(phi, p_sd);
    } else {
        // The rival model infers its own "actual" negativity from its own
        // mixing estimate, via its closed form.
        rep.eps_true = negativity_closed_form({Model::Werner, phi, p_mean_clamped});
        rep.eps_true_err = p_sd * (0.5 + std::sin(2.0 * phi));
    }

    rep.var_times_k = rep.eps_hat.variance * rep.mean_k;
    rep.qcrb_ref = std::max(0.0, 1.0 - rep.eps_true * rep.eps_true);
    rep.fano = fano_factors(main_records);

    const double sigma_mean = std::sqrt(rep.eps_hat.variance / static_cast<double>(m));
    rep.consistent_3sigma = std::abs(rep.eps_hat.mean - rep.eps_true) <= 3.0 * sigma_mean;
    return rep;
}

DiscriminationVerdict model_discrimination(const EstimationReport& a,
                                           const EstimationReport& b) {
    if (a.eps_hat.count != b.eps_hat.count)
        throw std::invalid_argument("model_discrimination: reports built from different samples");
    return DiscriminationVerdict{a.model, a.consistent_3sigma, b.model, b.consistent_3sigma};
}

std::string report_to_json(const EstimationReport& report) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["model"] = model_name(report.model);
    j["eps_hat_mean"] = report.eps_hat.mean;
    j["eps_hat_var"] = report.eps_hat.variance;
    j["var_times_K"] = report.var_times_k;
    j["qcrb_ref"] = report.qcrb_ref;
    j["p_hat_mean"] = report.p_hat.mean;
    j["p_hat_var"] = report.p_hat.variance;
    j["eps_true"] = report.eps_true;
    j["eps_true_err"] = report.eps_true_err;
    j["mean_K"] = report.mean_k;
    nlohmann::json fano = nlohmann::json::array();
    for (const auto& f : report.fano) {
        if (f.has_value())
            fano.push_back(*f);
        else
            fano.push_back(nullptr);
    }
    j["fano"] = fano;
    j["consistent_3sigma"] = report.consistent_3sigma;
    j["runs"] = report.eps_hat.count;
    j["eps_in_range"] = report.eps_in_range;
    j["rng"] = kRngId;
    return j.dump(2) + "\n";
}

std::string fig2_csv(const std::vector<EstimationReport>& reports) {
    std::string csv = "eps_true,eps_true_err,eps_hat_mean,errbar,qcrb_halfwidth\n";
    for (const EstimationReport& r : reports) {
        csv += format_double(r.eps_true);
        csv += ',';
        csv += format_double(r.eps_true_err);
        csv += ',';
        csv += format_double(r.eps_hat.mean);
        csv += ',';
        csv += format_double(std::sqrt(std::max(0.0, r.var_times_k)));
        csv += ',';
        csv += format_double(std::sqrt(std::max(0.0, r.qcrb_ref)));
        csv += '\n';
    }
    return csv;
}

std::string fano_csv(const EstimationReport& report,
                     const std::vector<RunRecord>& main_records) {
    std::string csv = "t,mean_count,var_count,fano\n";
    for (int t = 0; t < 4; ++t) {
        std::vector<double> counts;
        counts.reserve(main_records.size());
        for (const RunRecord& r : main_records)
            counts.push_back(static_cast<double>(r.counts.k[static_cast<std::size_t>(t)]));
        const SampleStats s = sample_stats(counts);
        csv += std::to_string(t);
        csv += ',';
        csv += format_double(s.mean);
        csv += ',';
        csv += format_double(s.variance);
        csv += ',';
        const auto& f = report.fano[static_cast<std::size_t>(t)];
        if (f.has_value()) csv += format_double(*f);
        csv += '\n';
    }
    return csv;
}

}  // namespace negest
