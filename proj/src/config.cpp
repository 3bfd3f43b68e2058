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

#include "negest/config.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "negest/errors.hpp"
#include "negest/tomography.hpp"

namespace negest {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Stream planes for the per-config roots (never overlaps window indices).
constexpr std::uint64_t kMainPlane = 0x4d41494eULL;   // "MAIN"
constexpr std::uint64_t kDiagPlane = 0x44494147ULL;   // "DIAG"
constexpr std::uint64_t kShufMain = 0x53464d41ULL;    // "SFMA"
constexpr std::uint64_t kShufDiag = 0x53464449ULL;    // "SFDI"
constexpr std::uint64_t kTomoRoot = 0x544f4d52ULL;    // "TOMR"

const std::set<std::string> kAllowedKeys = {
    "schema_version", "model",       "phi_degrees", "p",
    "mean_total",     "runs",        "seed",        "alpha_degrees",
    "beta_degrees",   "shuffle",     "multinomial", "tomography",
    "tomo_counts",    "label",
};

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw std::ios_base::failure("short write: " + path.string());
}

ExperimentConfig parse_config_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    std::string unknown;
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!kAllowedKeys.contains(key)) unknown += (unknown.empty() ? "" : ", ") + key;
    }
    if (!unknown.empty()) throw ConfigError("unknown config keys: " + unknown);

    ExperimentConfig cfg;
    try {
        if (j.contains("schema_version") && j["schema_version"].get<int>() != 1)
            throw ConfigError("schema_version must be 1");
        if (j.contains("model")) {
            const std::string m = j["model"].get<std::string>();
            if (m == "coherent")
                cfg.model = Model::CoherentMixture;
            else if (m == "werner")
                cfg.model = Model::Werner;
            else
                throw ConfigError("model must be \"coherent\" or \"werner\", got \"" + m + "\"");
        }
        if (j.contains("phi_degrees")) cfg.phi_degrees = j["phi_degrees"].get<double>();
        if (j.contains("p")) cfg.p = j["p"].get<double>();
        if (j.contains("mean_total")) cfg.mean_total = j["mean_total"].get<double>();
        if (j.contains("runs")) cfg.runs = j["runs"].get<int>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("alpha_degrees")) cfg.alpha_degrees = j["alpha_degrees"].get<double>();
        if (j.contains("beta_degrees")) cfg.beta_degrees = j["beta_degrees"].get<double>();
        if (j.contains("shuffle")) cfg.shuffle = j["shuffle"].get<bool>();
        if (j.contains("multinomial")) cfg.multinomial = j["multinomial"].get<bool>();
        if (j.contains("tomography")) cfg.tomography = j["tomography"].get<bool>();
        if (j.contains("tomo_counts")) cfg.tomo_counts = j["tomo_counts"].get<double>();
        if (j.contains("label")) cfg.label = j["label"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config field has the wrong type: ") + e.what());
    }

    if (!(cfg.phi_degrees >= 0.0 && cfg.phi_degrees <= 45.0))
        throw ConfigError("phi_degrees must be in [0, 45], got " + std::to_string(cfg.phi_degrees));
    if (!(cfg.p >= 0.0 && cfg.p <= 1.0))
        throw ConfigError("p must be in [0, 1], got " + std::to_string(cfg.p));
    if (!(cfg.mean_total > 0.0))
        throw ConfigError("mean_total must be > 0, got " + std::to_string(cfg.mean_total));
    if (cfg.runs < 1) throw ConfigError("runs must be >= 1, got " + std::to_string(cfg.runs));
    if (!(cfg.tomo_counts > 0.0))
        throw ConfigError("tomo_counts must be > 0, got " + std::to_string(cfg.tomo_counts));
    return cfg;
}

nlohmann::json parse_json_text(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
}

}  // namespace

StateParams ExperimentConfig::params() const {
    return {model, phi_degrees * kDegToRad, p};
}

MeasurementSetting ExperimentConfig::main_setting() const {
    return {alpha_degrees * kDegToRad, beta_degrees * kDegToRad};
}

ExperimentConfig parse_config(const std::string& json_text) {
    return parse_config_json(parse_json_text(json_text));
}

std::vector<ExperimentConfig> parse_campaign(const std::string& json_text) {
    const nlohmann::json j = parse_json_text(json_text);

    std::vector<ExperimentConfig> configs;
    if (j.is_array()) {
        for (const auto& item : j) configs.push_back(parse_config_json(item));
    } else if (j.is_object() && j.contains("configs")) {
        for (const auto& [key, value] : j.items()) {
            (void)value;
            if (key != "configs" && key != "schema_version")
                throw ConfigError("unknown campaign keys: " + key);
        }
        if (j.contains("schema_version") && j["schema_version"].get<int>() != 1)
            throw ConfigError("schema_version must be 1");
        if (!j["configs"].is_array()) throw ConfigError("\"configs\" must be an array");
        for (const auto& item : j["configs"]) configs.push_back(parse_config_json(item));
    } else {
        configs.push_back(parse_config_json(j));
    }
    if (configs.empty()) throw ConfigError("campaign contains no configurations");

    for (std::size_t i = 0; i < configs.size(); ++i) {
        if (configs[i].label.empty()) {
            std::ostringstream label;
            label << "cfg" << (i < 10 ? "0" : "") << i;
            configs[i].label = label.str();
        }
        for (std::size_t k = 0; k < i; ++k)
            if (configs[k].label == configs[i].label)
                throw ConfigError("duplicate config label: " + configs[i].label);
    }
    return configs;
}

ConfigOutcome run_pipeline(const ExperimentConfig& config,
                           const std::filesystem::path& out_dir) {
    const std::filesystem::path dir = out_dir / config.label;
    std::filesystem::create_directories(dir);

    const CountingModel counting =
        config.multinomial ? CountingModel::MultinomialTotal : CountingModel::IndependentPoisson;

    RunConfig main_rc{config.params(), config.main_setting(), config.mean_total,
                      10.0,            config.runs,           derive_stream(config.seed, kMainPlane, 0),
                      counting};
    RunConfig diag_rc = main_rc;
    diag_rc.setting = ExperimentConfig::diagonal_setting();
    diag_rc.seed = derive_stream(config.seed, kDiagPlane, 0);

    std::vector<RunRecord> main_records = run_experiment(main_rc);
    std::vector<RunRecord> diag_records = run_experiment(diag_rc);
    if (config.shuffle) {
        main_records = shuffle_composition(main_records, derive_stream(config.seed, kShufMain, 0));
        diag_records = shuffle_composition(diag_records, derive_stream(config.seed, kShufDiag, 0));
    }

    std::string csv = runs_csv_header();
    append_runs_csv(csv, main_records);
    append_runs_csv(csv, diag_records);
    write_file(dir / "runs.csv", csv);

    const double phi = config.params().phi;
    ConfigOutcome outcome;
    outcome.config = config;
    outcome.report = build_report(config.model, phi, main_records, diag_records);
    const Model rival =
        config.model == Model::CoherentMixture ? Model::Werner : Model::CoherentMixture;
    outcome.rival_report = build_report(rival, phi, main_records, diag_records);

    write_file(dir / "report.json", report_to_json(outcome.report));
    write_file(dir / "report_rival.json", report_to_json(outcome.rival_report));
    write_file(dir / "fano.csv", fano_csv(outcome.report, main_records));

    if (config.tomography) {
        const DensityMatrix rho = make_state(config.params());
        const TomoDataset data = sampled_rates(rho, canonical_settings(), config.tomo_counts,
                                               derive_stream(config.seed, kTomoRoot, 0));
        write_file(dir / "tomo_data.csv", tomo_to_csv(data));

        const Mat4 raw = linear_inversion(data);
        const double raw_min_eig = eig_hermitian(raw).values[0];
        const DensityMatrix rec = project_to_physical(raw);
        const ModelComparison cmp = compare_to_model(rec, config.params());
        outcome.tomo_fidelity = cmp.fidelity;
        outcome.tomo_trace_distance = cmp.trace_distance;
        outcome.tomo_negativity_gap = cmp.negativity_gap;

        nlohmann::json tj;
        tj["schema_version"] = 1;
        tj["settings"] = "hvdl-product-16";
        tj["counts_per_setting"] = config.tomo_counts;
        tj["fidelity"] = cmp.fidelity;
        tj["trace_distance"] = cmp.trace_distance;
        tj["negativity_gap"] = cmp.negativity_gap;
        tj["negativity"] = negativity(rec);
        tj["raw_min_eigenvalue"] = raw_min_eig;  // < 0 flags an unphysical direct inversion
        nlohmann::json entries = nlohmann::json::array();
        for (int r = 0; r < 4; ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (int c = 0; c < 4; ++c)
                row.push_back({rec(r, c).real(), rec(r, c).imag()});
            entries.push_back(row);
        }
        tj["rho"] = entries;
        write_file(dir / "tomo_report.json", tj.dump(2) + "\n");
    }
    return outcome;
}

std::vector<ConfigOutcome> run_campaign(const std::vector<ExperimentConfig>& configs,
                                        const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);

    // Per-config outputs land in separate directories, so configs can run
    // concurrently; the campaign-level files are written afterwards in
    // config order.
    std::vector<std::future<ConfigOutcome>> futures;
    futures.reserve(configs.size());
    for (const ExperimentConfig& cfg : configs)
        futures.push_back(std::async(std::launch::async,
                                     [&cfg, &out_dir] { return run_pipeline(cfg, out_dir); }));

    std::vector<ConfigOutcome> outcomes;
    outcomes.reserve(configs.size());
    for (auto& f : futures) outcomes.push_back(f.get());

    std::vector<EstimationReport> reports;
    reports.reserve(outcomes.size());
    for (const ConfigOutcome& o : outcomes) reports.push_back(o.report);
    write_file(out_dir / "fig2.csv", fig2_csv(reports));

    nlohmann::json summary;
    summary["schema_version"] = 1;
    nlohmann::json items = nlohmann::json::array();
    for (const ConfigOutcome& o : outcomes) {
        nlohmann::json item;
        item["label"] = o.config.label;
        item["model"] = model_name(o.config.model);
        item["phi_degrees"] = o.config.phi_degrees;
        item["p"] = o.config.p;
        item["eps_true"] = o.report.eps_true;
        item["eps_hat_mean"] = o.report.eps_hat.mean;
        item["consistent_3sigma"] = o.report.consistent_3sigma;
        item["rival_consistent_3sigma"] = o.rival_report.consistent_3sigma;
        if (o.config.tomography) item["tomo_fidelity"] = o.tomo_fidelity;
        items.push_back(item);
    }
    summary["configs"] = items;
    write_file(out_dir / "summary.json", summary.dump(2) + "\n");

    nlohmann::json meta;
    meta["schema_version"] = 1;
    meta["rng"] = kRngId;
    meta["n_configs"] = configs.size();
    meta["tool"] = "negest 0.1.0";
    write_file(out_dir / "meta.json", meta.dump(2) + "\n");
    return outcomes;
}

QcrbCheckResult qcrb_check(const ExperimentConfig& config, int campaigns) {
    if (campaigns < 1) throw ConfigError("qcrb_check: campaigns must be >= 1");
    constexpr std::uint64_t kQcrbPlane = 0x51435242ULL;  // "QCRB"

    const double phi = config.params().phi;
    const CountingModel counting =
        config.multinomial ? CountingModel::MultinomialTotal : CountingModel::IndependentPoisson;

    std::vector<double> eps_series, p_series, k_series;
    eps_series.reserve(static_cast<std::size_t>(campaigns) * static_cast<std::size_t>(config.runs));
    for (int c = 0; c < campaigns; ++c) {
        RunConfig main_rc{config.params(), config.main_setting(), config.mean_total,
                          10.0,            config.runs,
                          derive_stream(config.seed, kQcrbPlane, 2 * static_cast<std::uint64_t>(c)),
                          counting};
        RunConfig diag_rc = main_rc;
        diag_rc.setting = ExperimentConfig::diagonal_setting();
        diag_rc.seed = derive_stream(config.seed, kQcrbPlane, 2 * static_cast<std::uint64_t>(c) + 1);

        const std::vector<RunRecord> main_records = run_experiment(main_rc);
        const std::vector<RunRecord> diag_records = run_experiment(diag_rc);
        for (int j = 0; j < config.runs; ++j) {
            const auto ju = static_cast<std::size_t>(j);
            const double eps_hat = estimate_negativity(main_records[ju].counts, main_rc.setting);
            eps_series.push_back(eps_hat);
            p_series.push_back(estimate_mixing(diag_records[ju].counts, eps_hat));
            k_series.push_back(static_cast<double>(main_records[ju].counts.total()));
        }
    }

    const SampleStats eps_stats = sample_stats(eps_series);
    const SampleStats p_stats = sample_stats(p_series);
    const SampleStats k_stats = sample_stats(k_series);

    QcrbCheckResult out;
    out.windows = eps_stats.count;
    out.eps_true = true_negativity(phi, p_stats.mean);
    out.mean_eps_hat = eps_stats.mean;
    out.pooled_var = eps_stats.variance;
    out.mean_k = k_stats.mean;
    out.ratio = eps_stats.variance * k_stats.mean / (1.0 - out.eps_true * out.eps_true);
    out.in_band = out.ratio >= 0.9 && out.ratio <= 1.1;
    const double sigma_mean = std::sqrt(eps_stats.variance / static_cast<double>(out.windows));
    out.mean_consistent = std::abs(eps_stats.mean - out.eps_true) <= 3.0 * sigma_mean;
    return out;
}

}  // namespace negest
