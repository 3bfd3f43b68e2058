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

// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails. argv[1] must be the
// CLI binary (used by the reproducibility criterion).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "negest/config.hpp"
#include "negest/estimation.hpp"
#include "negest/tomography.hpp"
#include "testutil.hpp"

using namespace negest;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSuiteSeed = 20260808;

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int id, const std::string& name, bool pass, double seconds, double budget,
            const std::string& detail) {
    const bool in_budget = budget <= 0.0 || seconds <= budget;
    if (!pass || !in_budget) ++g_failures;
    std::printf("%s  criterion %2d: %s (%s) [%.2f s%s]\n", (pass && in_budget) ? "PASS" : "FAIL",
                id, name.c_str(), detail.c_str(), seconds,
                in_budget ? "" : ", over budget");
    std::fflush(stdout);
}

struct PaperConfig {
    double phi_deg;
    double p;
};
const std::vector<PaperConfig> kConfigs = {{10, 0.85}, {15, 0.88}, {20, 0.88}, {28, 0.85},
                                           {40, 0.92}, {45, 0.93}, {45, 0.97}};

std::string format(const char* fmt, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), fmt, a, b, c);
    return buf;
}

void criterion_fisher_optimality() {
    Timer timer;
    double worst = 0.0;
    int points = 0;
    for (double p : {0.8, 1.0}) {
        for (int i = 1; i <= 19; ++i) {
            const double eps = 0.05 * i;
            if (eps > p) continue;
            ++points;
            const StateParams params{Model::CoherentMixture, phi_from_negativity(eps, p), p};
            const double f = fisher_information(params, {-kPi / 4.0, kPi / 4.0}, 1e-6);
            const double h = 1.0 / (1.0 - eps * eps);
            worst = std::max(worst, std::abs(f - h) / h);
        }
    }
    report(1, "Fisher information equals the QFI at (-pi/4, pi/4)", worst <= 1e-5, timer.seconds(),
           5.0, format("max rel err %.2e over %.0f points", worst, points));
}

void criterion_qfi_sld() {
    Timer timer;
    double worst = 0.0, worst_residual = 0.0;
    int points = 0;
    for (double p : {0.8, 1.0}) {
        for (int i = 1; i <= 19; ++i) {
            const double eps = 0.05 * i;
            if (eps > p || eps > 1.0 - 1e-9) continue;
            ++points;
            const StateParams params{Model::CoherentMixture, phi_from_negativity(eps, p), p};
            const QfiResult q = qfi(params);
            worst = std::max(worst, std::abs(q.h_numeric - q.h_analytic) / q.h_analytic);
            worst_residual = std::max(worst_residual, q.residual);
        }
    }
    report(2, "SLD-based QFI matches 1/(1-eps^2)", worst <= 1e-4 && worst_residual <= 1e-6,
           timer.seconds(), 5.0,
           format("max rel err %.2e, max residual %.2e, %.0f points", worst, worst_residual,
                  points));
}

void criterion_qcrb_saturation() {
    Timer timer;
    double ratio_lo = 1e9, ratio_hi = 0.0, worst_sigma = 0.0;
    bool pass = true;
    for (std::size_t i = 0; i < kConfigs.size(); ++i) {
        ExperimentConfig cfg;
        cfg.phi_degrees = kConfigs[i].phi_deg;
        cfg.p = kConfigs[i].p;
        cfg.mean_total = 1e4;
        cfg.runs = 30;
        cfg.seed = derive_stream(kSuiteSeed, 3, i);
        const QcrbCheckResult res = qcrb_check(cfg, 100);
        ratio_lo = std::min(ratio_lo, res.ratio);
        ratio_hi = std::max(ratio_hi, res.ratio);
        const double sigma = std::abs(res.mean_eps_hat - res.eps_true) /
                             std::sqrt(res.pooled_var / res.windows);
        worst_sigma = std::max(worst_sigma, sigma);
        pass = pass && res.in_band && res.mean_consistent;
    }
    report(3, "pooled Var(eps_hat)*<K> saturates the quantum bound", pass, timer.seconds(), 60.0,
           format("ratio in [%.3f, %.3f], worst |mean-eps_t| = %.2f sigma", ratio_lo, ratio_hi,
                  worst_sigma));
}

void criterion_variance_identity() {
    Timer timer;
    SplitMix64 gen(derive_stream(kSuiteSeed, 4, 0));
    const MeasurementSetting main_setting{-kPi / 4.0, kPi / 4.0};
    bool pass = true;
    double worst_rel = 0.0;
    int checked = 0;
    while (checked < 10000) {
        CoincidenceVector k;
        for (int t = 0; t < 4; ++t)
            k.k[static_cast<std::size_t>(t)] = static_cast<std::int64_t>(gen.next_below(1001));
        if (k.total() == 0) continue;
        ++checked;

        const std::int64_t delta = k.k[1] + k.k[2] - k.k[0] - k.k[3];
        if (k.total() * k.total() - delta * delta != 4 * (k.k[0] + k.k[3]) * (k.k[1] + k.k[2]))
            pass = false;

        const double closed = poisson_variance_closed_form(k);
        const double eps_hat = estimate_negativity(k, main_setting);
        const double via_eps = (1.0 - eps_hat * eps_hat) / static_cast<double>(k.total());
        const double denom = std::max(std::abs(closed), std::abs(via_eps));
        if (denom == 0.0) continue;
        const double rel = std::abs(closed - via_eps) / denom;
        // The flat 1e-15 bound concedes only the round-off amplification of
        // 1 - eps_hat^2 when |eps_hat| -> 1 (condition number below).
        const double cond = eps_hat * eps_hat / std::max(1e-300, 1.0 - eps_hat * eps_hat);
        const double tol = std::max(1e-15, 2.2e-16 * (6.0 + 4.0 * cond));
        worst_rel = std::max(worst_rel, rel);
        if (rel > tol) pass = false;
    }
    report(4, "4(k0+k3)(k1+k2)/K^3 = (1-eps_hat^2)/K exactly", pass, timer.seconds(), 0.0,
           format("10000 vectors, worst rel diff %.2e", worst_rel));
}

void criterion_fano() {
    Timer timer;
    double lo = 1e9, hi = 0.0;
    int defined = 0;
    for (std::size_t i = 0; i < kConfigs.size(); ++i) {
        RunConfig rc;
        rc.params = {Model::CoherentMixture, kConfigs[i].phi_deg * kPi / 180.0, kConfigs[i].p};
        rc.setting = {-kPi / 4.0, kPi / 4.0};
        rc.mean_total = 1e4;
        rc.runs = 1000;
        rc.seed = derive_stream(kSuiteSeed, 5, i);
        const auto records = run_experiment(rc);
        for (const auto& factor : fano_factors(records)) {
            if (!factor.has_value()) continue;
            ++defined;
            lo = std::min(lo, *factor);
            hi = std::max(hi, *factor);
        }
    }
    report(5, "Poissonian Fano factors stay in [0.9, 1.1]", lo >= 0.9 && hi <= 1.1,
           timer.seconds(), 10.0,
           format("%.0f defined factors in [%.3f, %.3f]", defined, lo, hi));
}

void criterion_model_discrimination() {
    Timer timer;
    const std::vector<PaperConfig> subset = {{20, 0.88}, {28, 0.85}, {40, 0.92}};
    int worst_success = 100;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        const StateParams params{Model::CoherentMixture, subset[i].phi_deg * kPi / 180.0,
                                 subset[i].p};
        int successes = 0;
        for (int c = 0; c < 100; ++c) {
            RunConfig main_rc{params,
                              {-kPi / 4.0, kPi / 4.0},
                              1e4,
                              10.0,
                              30,
                              derive_stream(kSuiteSeed, 600 + i, 2 * static_cast<std::uint64_t>(c)),
                              CountingModel::IndependentPoisson};
            RunConfig diag_rc = main_rc;
            diag_rc.setting = {0.0, 0.0};
            diag_rc.seed =
                derive_stream(kSuiteSeed, 600 + i, 2 * static_cast<std::uint64_t>(c) + 1);
            const auto main_records = run_experiment(main_rc);
            const auto diag_records = run_experiment(diag_rc);
            const EstimationReport coherent =
                build_report(Model::CoherentMixture, params.phi, main_records, diag_records);
            const EstimationReport werner =
                build_report(Model::Werner, params.phi, main_records, diag_records);
            const DiscriminationVerdict verdict = model_discrimination(coherent, werner);
            if (verdict.a_consistent && !verdict.b_consistent) ++successes;
        }
        worst_success = std::min(worst_success, successes);
    }
    report(6, "Werner rival rejected at 3 sigma, true model kept", worst_success >= 95,
           timer.seconds(), 0.0, format("worst case %.0f/100 campaigns", worst_success));
}

void criterion_negativity_oracle() {
    Timer timer;
    double worst = 0.0;
    for (Model model : {Model::CoherentMixture, Model::Werner}) {
        for (int phi_deg = 0; phi_deg <= 45; phi_deg += 5) {
            for (int ip = 0; ip <= 4; ++ip) {
                const StateParams params{model, phi_deg * kPi / 180.0, 0.25 * ip};
                worst = std::max(worst, std::abs(negativity_closed_form(params) -
                                                 negativity(make_state(params))));
            }
        }
    }
    report(7, "closed-form negativity equals the eigenvalue route", worst <= 1e-12,
           timer.seconds(), 0.0, format("max |diff| %.2e on the (model, phi, p) grid", worst));
}

void criterion_off_optimum() {
    Timer timer;
    bool pass = true;
    double worst_sigma = 0.0, min_excess = 1e9;
    for (std::size_t i = 0; i < 3; ++i) {
        const double eps = 0.3 * static_cast<double>(i + 1);
        const StateParams params{Model::CoherentMixture, phi_from_negativity(eps, 1.0), 1.0};
        auto series = [&](const MeasurementSetting& s, std::uint64_t salt) {
            RunConfig rc{params, s, 1e4, 10.0, 3000, derive_stream(kSuiteSeed, 800 + i, salt),
                         CountingModel::IndependentPoisson};
            std::vector<double> eps_hats;
            for (const RunRecord& r : run_experiment(rc))
                eps_hats.push_back(estimate_negativity(r.counts, s));
            return sample_stats(eps_hats);
        };
        const SampleStats off = series({kPi / 6.0, kPi / 3.0}, 0);
        const SampleStats opt = series({-kPi / 4.0, kPi / 4.0}, 1);
        const double sigma = std::abs(off.mean - eps) / std::sqrt(off.variance / off.count);
        worst_sigma = std::max(worst_sigma, sigma);
        min_excess = std::min(min_excess, off.variance / opt.variance);
        if (sigma > 3.0 || off.variance <= opt.variance) pass = false;
    }
    report(8, "unbiased but noisier at (pi/6, pi/3)", pass, timer.seconds(), 0.0,
           format("worst bias %.2f sigma, min variance ratio %.2f", worst_sigma, min_excess));
}

void criterion_tomography() {
    Timer timer;
    const auto settings = canonical_settings();
    double worst_entry = 0.0;
    std::mt19937_64 gen(1234);
    for (int trial = 0; trial < 50; ++trial) {
        const DensityMatrix rho = make_state(test::random_family_params(gen));
        const Mat4 rec = linear_inversion(exact_rates(rho, settings));
        worst_entry = std::max(worst_entry, test::max_entry_distance(rec, rho.matrix()));
    }

    const StateParams bright{Model::CoherentMixture, kPi / 4.0, 0.97};
    const TomoDataset data = sampled_rates(make_state(bright), settings, 1e5,
                                           derive_stream(kSuiteSeed, 9, 0));
    const DensityMatrix rec = project_to_physical(linear_inversion(data));
    const double fid = compare_to_model(rec, bright).fidelity;

    report(9, "tomography: exact round trip and sampled fidelity",
           worst_entry <= 1e-10 && fid > 0.99, timer.seconds(), 0.0,
           format("max entry err %.2e over 50 states, fidelity %.4f", worst_entry, fid));
}

void criterion_reproducibility(const std::string& cli) {
    Timer timer;
    const fs::path root = fs::temp_directory_path() / "negest_acceptance_repro";
    fs::remove_all(root);
    fs::create_directories(root);

    std::ostringstream campaign;
    campaign << "{\"schema_version\":1,\"configs\":[";
    for (std::size_t i = 0; i < kConfigs.size(); ++i) {
        if (i) campaign << ",";
        campaign << "{\"model\":\"coherent\",\"phi_degrees\":" << kConfigs[i].phi_deg
                 << ",\"p\":" << kConfigs[i].p << ",\"seed\":" << (1000 + i)
                 << ",\"label\":\"c" << i << "\"}";
    }
    campaign << "]}";
    {
        std::ofstream out(root / "campaign.json", std::ios::binary);
        out << campaign.str();
    }

    bool pass = true;
    std::string detail = "byte-identical outputs";
    for (const char* sub : {"a", "b"}) {
        const std::string cmd = "\"" + cli + "\" run --config \"" +
                                (root / "campaign.json").string() + "\" --out \"" +
                                (root / sub).string() + "\" > /dev/null 2>&1";
        if (std::system(cmd.c_str()) != 0) {
            pass = false;
            detail = "CLI run failed";
        }
    }

    int files = 0;
    if (pass) {
        for (const auto& entry : fs::recursive_directory_iterator(root / "a")) {
            if (!entry.is_regular_file()) continue;
            ++files;
            const fs::path rel = fs::relative(entry.path(), root / "a");
            std::ifstream fa(entry.path(), std::ios::binary);
            std::ifstream fb(root / "b" / rel, std::ios::binary);
            std::ostringstream ba, bb;
            ba << fa.rdbuf();
            bb << fb.rdbuf();
            if (!fb || ba.str() != bb.str()) {
                pass = false;
                detail = "mismatch in " + rel.string();
                break;
            }
        }
        if (pass) detail = format("%.0f files byte-identical", files);
    }
    fs::remove_all(root);
    report(10, "seeded campaign runs are byte-reproducible", pass, timer.seconds(), 0.0, detail);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-cli>\n");
        return 2;
    }
    const std::string cli = argv[1];

    criterion_fisher_optimality();
    criterion_qfi_sld();
    criterion_qcrb_saturation();
    criterion_variance_identity();
    criterion_fano();
    criterion_model_discrimination();
    criterion_negativity_oracle();
    criterion_off_optimum();
    criterion_tomography();
    criterion_reproducibility(cli);

    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return 1;
}
