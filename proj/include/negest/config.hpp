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
 * Experiment configuration (JSON) and the batch pipeline behind the CLI:
 * simulate -> estimate -> discriminate -> tomography, with all outputs
 * written per configuration. Angles are degrees in configs and radians in
 * every internal API; conversion happens here only.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "negest/estimation.hpp"
#include "negest/simulator.hpp"

namespace negest {

/// Malformed or out-of-range configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    Model model = Model::CoherentMixture;
    double phi_degrees = 0.0;
    double p = 1.0;
    double mean_total = 1e4;
    int runs = 30;
    std::uint64_t seed = 1;
    double alpha_degrees = -45.0;  // main correlation setting
    double beta_degrees = 45.0;
    bool shuffle = true;
    bool multinomial = false;
    bool tomography = false;
    double tomo_counts = 1e5;  // per tomography setting
    std::string label;

    StateParams params() const;
    MeasurementSetting main_setting() const;
    static MeasurementSetting diagonal_setting() { return {0.0, 0.0}; }
};

/// Parses one config object, applying defaults. Unknown keys and range
/// violations raise ConfigError naming the offending field.
ExperimentConfig parse_config(const std::string& json_text);

/// Parses a campaign document: a single config object, an array of them,
/// or {"schema_version": 1, "configs": [...]}.
std::vector<ExperimentConfig> parse_campaign(const std::string& json_text);

/// Everything cmd_run computes for one configuration.
struct ConfigOutcome {
    ExperimentConfig config;
    EstimationReport report;        // the configured model
    EstimationReport rival_report;  // the other model on the same records
    double tomo_fidelity = -1.0;    // -1 when tomography is disabled
    double tomo_trace_distance = -1.0;
    double tomo_negativity_gap = -1.0;
};

/// Runs the full pipeline for one configuration, writing
/// runs.csv, report.json, report_rival.json, fano.csv and (optionally)
/// tomo_data.csv + tomo_report.json under out_dir/<label>/.
ConfigOutcome run_pipeline(const ExperimentConfig& config,
                           const std::filesystem::path& out_dir);

/// Runs a whole campaign (configs in parallel), then writes fig2.csv,
/// summary.json and meta.json under out_dir.
std::vector<ConfigOutcome> run_campaign(const std::vector<ExperimentConfig>& configs,
                                        const std::filesystem::path& out_dir);

/// Pooled saturation check: `campaigns` independent repetitions of the
/// configured experiment, all single-window estimates pooled.
struct QcrbCheckResult {
    double eps_true = 0.0;       // <p_hat> sin(2 phi) over the pooled sample
    double mean_eps_hat = 0.0;
    double pooled_var = 0.0;
    double mean_k = 0.0;
    double ratio = 0.0;          // Var * <K> / (1 - eps_true^2)
    int windows = 0;
    bool in_band = false;        // ratio in [0.9, 1.1]
    bool mean_consistent = false;  // |mean - eps_true| <= 3 sqrt(Var/windows)
};

QcrbCheckResult qcrb_check(const ExperimentConfig& config, int campaigns);

}  // namespace negest
