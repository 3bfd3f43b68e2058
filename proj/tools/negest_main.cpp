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

// Batch driver for the entanglement-estimation pipelines. Every number in
// the outputs comes from a library call; this file only parses arguments,
// reads/writes files and formats lines.
//
// Exit codes: 0 success, 2 config error, 3 runtime or statistical
// degeneracy, 4 I/O failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "negest/config.hpp"
#include "negest/errors.hpp"
#include "negest/tomography.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitIo = 4;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw std::ios_base::failure("read failed: " + path.string());
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw std::ios_base::failure("short write: " + path.string());
}

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> runs;
    std::optional<double> mean_total;
    std::optional<std::string> model;
    bool no_shuffle = false;
    bool multinomial = false;
};

void apply(const Overrides& ov, negest::ExperimentConfig& cfg) {
    if (ov.seed) cfg.seed = *ov.seed;
    if (ov.runs) cfg.runs = *ov.runs;
    if (ov.mean_total) cfg.mean_total = *ov.mean_total;
    if (ov.model) {
        if (*ov.model == "coherent")
            cfg.model = negest::Model::CoherentMixture;
        else if (*ov.model == "werner")
            cfg.model = negest::Model::Werner;
        else
            throw negest::ConfigError("--model must be coherent or werner");
    }
    if (ov.no_shuffle) cfg.shuffle = false;
    if (ov.multinomial) cfg.multinomial = true;
}

std::vector<negest::ExperimentConfig> load_campaign(const std::string& config_path,
                                                    const Overrides& ov) {
    auto configs = negest::parse_campaign(read_file(config_path));
    for (auto& cfg : configs) apply(ov, cfg);
    return configs;
}

std::string scan_csv(const negest::FisherScan& scan) {
    constexpr double kRadToDeg = 180.0 / std::numbers::pi;
    std::string csv = "alpha_deg,beta_deg,fisher\n";
    char buf[128];
    for (int ia = 0; ia < scan.n_alpha; ++ia)
        for (int ib = 0; ib < scan.n_beta; ++ib) {
            std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%.9g\n", scan.alpha_at(ia) * kRadToDeg,
                          scan.beta_at(ib) * kRadToDeg, scan.at(ia, ib));
            csv += buf;
        }
    return csv;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Two-qubit negativity estimation at the quantum limit: "
                 "simulator, estimators and cross-checks"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    Overrides ov;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("--config", config_path, "campaign or single-config JSON");
        if (needs_config) opt->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", ov.seed, "override the RNG seed");
        sub->add_option("--runs", ov.runs, "override the windows per acquisition");
        sub->add_option("--mean-total", ov.mean_total, "override expected coincidences per window");
        sub->add_option("--model", ov.model, "override the state model (coherent|werner)");
        sub->add_flag("--no-shuffle", ov.no_shuffle, "disable composition randomization");
        sub->add_flag("--multinomial", ov.multinomial, "multinomial counting conditioned on K");
    };

    auto* run = app.add_subcommand("run", "simulate, estimate and write all reports");
    add_common(run, true);
    bool with_scan = false;
    run->add_flag("--fisher-scan", with_scan, "also write a Fisher-information scan per config");

    auto* fisher = app.add_subcommand("fisher-scan", "Fisher information over polarizer angles");
    add_common(fisher, true);
    double step_degrees = 2.5;
    fisher->add_option("--step-degrees", step_degrees, "grid step in degrees");

    auto* qcrb = app.add_subcommand("qcrb-check", "pooled variance against the quantum bound");
    add_common(qcrb, true);
    int campaigns = 100;
    qcrb->add_option("--campaigns", campaigns, "independent campaigns to pool");

    auto* tomo = app.add_subcommand("tomo", "sampled state tomography cross-check");
    add_common(tomo, true);

    auto* report = app.add_subcommand("report", "recompute reports from an existing runs CSV");
    add_common(report, true);
    std::string runs_csv_path;
    report->add_option("--runs-csv", runs_csv_path, "runs.csv produced by `run`")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    const std::filesystem::path out{out_dir};

    if (run->parsed()) {
        const auto configs = load_campaign(config_path, ov);
        const auto outcomes = negest::run_campaign(configs, out);
        for (const auto& o : outcomes) {
            std::printf("%s: eps_true=%.6f eps_hat=%.6f +- %.6f  consistent=%s rival_consistent=%s\n",
                        o.config.label.c_str(), o.report.eps_true, o.report.eps_hat.mean,
                        std::sqrt(o.report.eps_hat.variance / o.report.eps_hat.count),
                        o.report.consistent_3sigma ? "yes" : "no",
                        o.rival_report.consistent_3sigma ? "yes" : "no");
            if (with_scan) {
                const auto scan =
                    negest::optimal_setting_scan(o.config.params(), std::numbers::pi / 72.0);
                write_file(out / o.config.label / "fisher_scan.csv", scan_csv(scan));
            }
        }
        return 0;
    }

    if (fisher->parsed()) {
        const auto configs = load_campaign(config_path, ov);
        std::filesystem::create_directories(out);
        constexpr double kRadToDeg = 180.0 / std::numbers::pi;
        for (const auto& cfg : configs) {
            const auto scan = negest::optimal_setting_scan(
                cfg.params(), step_degrees * std::numbers::pi / 180.0);
            write_file(out / (cfg.label + "_fisher_scan.csv"), scan_csv(scan));
            std::printf("%s: argmax F=%.6f at alpha=%.2f deg beta=%.2f deg\n", cfg.label.c_str(),
                        scan.best_value, scan.best.alpha * kRadToDeg, scan.best.beta * kRadToDeg);
        }
        return 0;
    }

    if (qcrb->parsed()) {
        const auto configs = load_campaign(config_path, ov);
        std::filesystem::create_directories(out);
        std::string csv = "label,eps_true,var_times_K,ratio,in_band,mean_consistent\n";
        for (const auto& cfg : configs) {
            const auto res = negest::qcrb_check(cfg, campaigns);
            char buf[256];
            std::snprintf(buf, sizeof(buf), "%s,%.9g,%.9g,%.9g,%d,%d\n", cfg.label.c_str(),
                          res.eps_true, res.pooled_var * res.mean_k, res.ratio, res.in_band ? 1 : 0,
                          res.mean_consistent ? 1 : 0);
            csv += buf;
            std::printf("%s: Var*K/(1-eps^2) = %.4f over %d windows (%s)\n", cfg.label.c_str(),
                        res.ratio, res.windows, res.in_band ? "in band" : "OUT OF BAND");
        }
        write_file(out / "qcrb_check.csv", csv);
        return 0;
    }

    if (tomo->parsed()) {
        const auto configs = load_campaign(config_path, ov);
        for (auto cfg : configs) {
            cfg.tomography = true;
            const auto outcome = negest::run_pipeline(cfg, out);
            std::printf("%s: tomography fidelity=%.6f trace_distance=%.6f negativity_gap=%.6f\n",
                        cfg.label.c_str(), outcome.tomo_fidelity, outcome.tomo_trace_distance,
                        outcome.tomo_negativity_gap);
        }
        return 0;
    }

    // report
    const auto configs = load_campaign(config_path, ov);
    if (configs.size() != 1)
        throw negest::ConfigError("report: the config file must contain exactly one configuration");
    const auto cfg = configs.front();
    const auto records = negest::runs_from_csv(read_file(runs_csv_path));

    std::vector<negest::RunRecord> main_records, diag_records;
    for (const auto& r : records) {
        const bool is_diag = r.setting.alpha == 0.0 && r.setting.beta == 0.0;
        (is_diag ? diag_records : main_records).push_back(r);
    }
    const double phi = cfg.params().phi;
    const auto rep = negest::build_report(cfg.model, phi, main_records, diag_records);
    std::filesystem::create_directories(out);
    write_file(out / "report.json", negest::report_to_json(rep));
    write_file(out / "fano.csv", negest::fano_csv(rep, main_records));
    std::printf("report: eps_true=%.6f eps_hat=%.6f consistent=%s\n", rep.eps_true,
                rep.eps_hat.mean, rep.consistent_3sigma ? "yes" : "no");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const negest::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
