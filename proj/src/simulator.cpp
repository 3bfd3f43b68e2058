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

#include "negest/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "negest/errors.hpp"

namespace negest {

namespace {

// Stream-coordinate offsets. Outcome streams use b = 0..3; the multinomial
// mode uses b = 4 (total) and b = 5 (categorical). Shuffling runs in its own
// a-plane so it can never collide with window indices.
constexpr std::uint64_t kShufflePlane = 0x53483031ULL;  // "SH01"

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

}  // namespace

CoincidenceVector sample_counts(const OutcomeDistribution& d, double mean_total,
                                std::uint64_t seed, std::uint64_t window_index,
                                CountingModel counting) {
    if (!(mean_total > 0.0))
        throw std::invalid_argument("sample_counts: mean_total must be positive");

    CoincidenceVector out;
    if (counting == CountingModel::IndependentPoisson) {
        for (int t = 0; t < 4; ++t) {
            SplitMix64 rng(derive_stream(seed, window_index, static_cast<std::uint64_t>(t)));
            out.k[static_cast<std::size_t>(t)] =
                poisson_sample(mean_total * d.probs[static_cast<std::size_t>(t)], rng);
        }
        return out;
    }

    SplitMix64 total_rng(derive_stream(seed, window_index, 4));
    SplitMix64 cat_rng(derive_stream(seed, window_index, 5));
    const std::int64_t total = poisson_sample(mean_total, total_rng);
    for (std::int64_t i = 0; i < total; ++i) {
        const double u = cat_rng.next_double();
        double cdf = 0.0;
        int t = 3;  // absorbs round-off at the top of the ladder
        for (int j = 0; j < 4; ++j) {
            cdf += d.probs[static_cast<std::size_t>(j)];
            if (u < cdf) {
                t = j;
                break;
            }
        }
        ++out.k[static_cast<std::size_t>(t)];
    }
    return out;
}

std::vector<RunRecord> run_experiment(const RunConfig& config) {
    validate(config.params);
    if (config.runs < 1) throw std::invalid_argument("run_experiment: runs must be >= 1");
    if (!(config.mean_total > 0.0))
        throw std::invalid_argument("run_experiment: mean_total must be positive");
    if (!(config.window_seconds > 0.0))
        throw std::invalid_argument("run_experiment: window_seconds must be positive");

    const OutcomeDistribution d =
        outcome_probabilities(make_state(config.params), config.setting);

    std::vector<RunRecord> records;
    records.reserve(static_cast<std::size_t>(config.runs));
    for (int j = 0; j < config.runs; ++j) {
        RunRecord rec;
        rec.run_index = j;
        rec.setting = config.setting;
        rec.window_seconds = config.window_seconds;
        rec.counts = sample_counts(d, config.mean_total, config.seed,
                                   static_cast<std::uint64_t>(j), config.counting);
        records.push_back(rec);
    }
    return records;
}

std::vector<RunRecord> shuffle_composition(const std::vector<RunRecord>& records,
                                           std::uint64_t seed, ShuffleMode mode) {
    for (const RunRecord& r : records)
        if (r.setting.alpha != records.front().setting.alpha ||
            r.setting.beta != records.front().setting.beta)
            throw std::invalid_argument("shuffle_composition: records must share one setting");

    std::vector<RunRecord> out = records;
    const std::size_t n = out.size();
    if (n < 2) return out;

    if (mode == ShuffleMode::WholeVector) {
        SplitMix64 rng(derive_stream(seed, kShufflePlane, 4));
        for (std::size_t i = n - 1; i > 0; --i) {
            const std::size_t j = rng.next_below(i + 1);
            std::swap(out[i].counts, out[j].counts);
        }
        return out;
    }

    for (int t = 0; t < 4; ++t) {
        SplitMix64 rng(derive_stream(seed, kShufflePlane, static_cast<std::uint64_t>(t)));
        for (std::size_t i = n - 1; i > 0; --i) {
            const std::size_t j = rng.next_below(i + 1);
            std::swap(out[i].counts.k[static_cast<std::size_t>(t)],
                      out[j].counts.k[static_cast<std::size_t>(t)]);
        }
    }
    return out;
}

std::string runs_csv_header() { return "run,alpha_rad,beta_rad,k0,k1,k2,k3,window_s\n"; }

void append_runs_csv(std::string& csv, const std::vector<RunRecord>& records) {
    for (const RunRecord& r : records) {
        csv += std::to_string(r.run_index);
        csv += ',';
        csv += format_double(r.setting.alpha);
        csv += ',';
        csv += format_double(r.setting.beta);
        for (int t = 0; t < 4; ++t) {
            csv += ',';
            csv += std::to_string(r.counts.k[static_cast<std::size_t>(t)]);
        }
        csv += ',';
        csv += format_double(r.window_seconds);
        csv += '\n';
    }
}

std::string runs_to_csv(const std::vector<RunRecord>& records) {
    std::string csv = runs_csv_header();
    append_runs_csv(csv, records);
    return csv;
}

std::vector<RunRecord> runs_from_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("runs CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "run,alpha_rad,beta_rad,k0,k1,k2,k3,window_s")
        throw ParseError("runs CSV: unexpected header: " + line);

    std::vector<RunRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::array<std::string, 8> fields;
        std::size_t start = 0;
        for (int f = 0; f < 8; ++f) {
            const std::size_t comma = line.find(',', start);
            if (f < 7 && comma == std::string::npos)
                throw ParseError("runs CSV: line " + std::to_string(line_no) + ": expected 8 fields");
            fields[static_cast<std::size_t>(f)] =
                line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            start = comma + 1;
        }

        RunRecord r;
        try {
            r.run_index = std::stoi(fields[0]);
            r.setting.alpha = std::stod(fields[1]);
            r.setting.beta = std::stod(fields[2]);
            for (int t = 0; t < 4; ++t) {
                const long long k = std::stoll(fields[static_cast<std::size_t>(3 + t)]);
                if (k < 0) throw ParseError("runs CSV: negative count");
                r.counts.k[static_cast<std::size_t>(t)] = k;
            }
            r.window_seconds = std::stod(fields[7]);
        } catch (const std::invalid_argument&) {
            throw ParseError("runs CSV: line " + std::to_string(line_no) + ": malformed field");
        } catch (const std::out_of_range&) {
            throw ParseError("runs CSV: line " + std::to_string(line_no) + ": value out of range");
        }
        records.push_back(r);
    }
    return records;
}

}  // namespace negest
