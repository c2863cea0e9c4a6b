// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The mmcs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MMCS_HARNESS_HPP
#define MMCS_HARNESS_HPP

#include "mmcs/channel.hpp"
#include "mmcs/pipelines.hpp"
#include "mmcs/sounding.hpp"
#include "mmcs/types.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mmcs::harness {

enum class ChannelModel { Cluster, BlockSparse };
enum class SweepAxis { None, T, Spread, Snr };
enum class SuccessMetric { RelError, Nmse };

std::string_view to_string(SweepAxis a);
SweepAxis axis_from_string(std::string_view s);

// One experiment: scenario, sounding plan, pipelines and sweep axis.
// Angles are given in degrees. Missing JSON keys keep these defaults.
struct ExperimentConfig {
    std::string name = "custom";

    int n_bs = 32;
    int n_ms = 32;
    double spacing_over_wavelength = 0.5;
    int grid_bs = 0;  // 0: critical sampling (= n_bs)
    int grid_ms = 0;

    ChannelModel model = ChannelModel::Cluster;
    std::vector<double> mean_aoa_deg{30.0, -30.0};
    std::vector<double> mean_aod_deg{30.0, -30.0};
    double spread_aoa_deg = 15.0;
    double spread_aod_deg = 10.0;
    int rays_aoa = 10;
    int rays_aod = 10;
    double distance_m = 30.0;
    double carrier_hz = 28e9;
    bool on_grid = true;
    int block_p = 2;         // BlockSparse only
    int block_clusters = 2;  // BlockSparse only

    std::vector<sounding::Scheme> schemes{sounding::Scheme::RC};
    int subarrays = sounding::kDefaultSubarrays;
    int num_samples = 288;  // T
    std::optional<double> sampling_ratio = 0.5;  // ratio-driven sizing when set
    int n_z = 24;                                // fixed sizing otherwise
    int n_f = 24;
    std::optional<double> snr_db;  // noiseless when unset

    SweepAxis axis = SweepAxis::None;
    std::vector<double> values;

    std::vector<pipelines::Pipeline> pipelines{pipelines::Pipeline::TwoStage, pipelines::Pipeline::DirectCS};
    int trials = 100;
    std::uint64_t base_seed = 1;
    double success_threshold = 1e-2;
    SuccessMetric success_metric = SuccessMetric::RelError;
    pipelines::SolverSettings solver;
    std::string output_dir = "results";

    void validate() const;
    // Copy with the sweep axis set to `value`.
    ExperimentConfig at_point(double value) const;
    std::vector<double> sweep_points() const;
    std::pair<int, int> codebook_size(pipelines::Pipeline p) const;
    channel::ClusterChannelConfig cluster_config() const;
};

void to_json(nlohmann::json &j, const ExperimentConfig &c);
void from_json(const nlohmann::json &j, ExperimentConfig &c);

ExperimentConfig load_config(const std::filesystem::path &path);

struct Preset {
    std::string name;
    std::string description;
    ExperimentConfig config;
};

const std::vector<Preset> &presets();
ExperimentConfig preset(std::string_view name);

// ||H_hat - H||_F^2 / ||H||_F^2; throws on zero truth or shape mismatch.
double nmse(const CMatrix &h_hat, const CMatrix &h);
double relative_error(const CMatrix &h_hat, const CMatrix &h);

struct TrialResult {
    std::string axis = "none";
    double value = 0.0;
    std::string scheme;
    std::string pipeline;
    int trial = 0;
    std::uint64_t seed = 0;
    double nmse = 0.0;
    double rel_error = 0.0;
    bool success = false;
    double wall_time = 0.0;
    int iterations = 0;
    bool degraded = false;
    int p_measured = 0;
    int rank_truth = 0;
    std::string error;  // non-empty when the pipeline threw
    std::vector<pipelines::StageReport> stages;

    friend bool operator==(const TrialResult &a, const TrialResult &b);
};

nlohmann::json to_json(const TrialResult &r, bool with_stages = true);

// Scenario seed shared by every pipeline and scheme at (point, trial).
std::uint64_t trial_seed(std::uint64_t base_seed, double point, int trial);

TrialResult run_trial(const ExperimentConfig &cfg, double point, sounding::Scheme scheme,
                      pipelines::Pipeline pipeline, int trial);

struct SweepOptions {
    int workers = 1;
    std::optional<std::filesystem::path> out_dir;  // writes trials.csv and aggregate.csv
    std::function<void(const TrialResult &)> on_result;
};

std::vector<TrialResult> run_sweep(const ExperimentConfig &cfg, const SweepOptions &opts = {});

struct AggregateRow {
    std::string axis;
    double value = 0.0;
    std::string scheme;
    std::string pipeline;
    int trials = 0;
    int successes = 0;
    double success_rate = 0.0;
    double success_stderr = 0.0;
    double mean_nmse = 0.0;
    double nmse_stderr = 0.0;
    double mean_rel_error = 0.0;
    double mean_wall_time = 0.0;
    double mean_iterations = 0.0;
};

std::vector<AggregateRow> aggregate(const std::vector<TrialResult> &rows);

void write_trials_csv(std::ostream &os, const std::vector<TrialResult> &rows);
void write_trial_row(std::ostream &os, const TrialResult &r);
void write_trials_header(std::ostream &os);
std::vector<TrialResult> read_trials_csv(std::istream &is);
void write_aggregate_csv(std::ostream &os, const std::vector<AggregateRow> &rows);
std::vector<AggregateRow> read_aggregate_csv(std::istream &is);

} // namespace mmcs::harness

#endif
