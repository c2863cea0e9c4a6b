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

#include "mmcs/harness.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

namespace mmcs::harness {

using nlohmann::json;

std::string_view to_string(SweepAxis a)
{
    switch (a) {
    case SweepAxis::None:
        return "none";
    case SweepAxis::T:
        return "T";
    case SweepAxis::Spread:
        return "spread";
    case SweepAxis::Snr:
        return "snr";
    }
    return "none";
}

SweepAxis axis_from_string(std::string_view s)
{
    if (s == "none")
        return SweepAxis::None;
    if (s == "T" || s == "t")
        return SweepAxis::T;
    if (s == "spread")
        return SweepAxis::Spread;
    if (s == "snr")
        return SweepAxis::Snr;
    throw std::invalid_argument("unknown sweep axis '" + std::string(s) + "'");
}

namespace {

constexpr double deg = kPi / 180.0;

} // namespace

void ExperimentConfig::validate() const
{
    if (n_bs < 1 || n_ms < 1)
        throw std::invalid_argument("config: array sizes must be >= 1");
    if (trials < 1)
        throw std::invalid_argument("config: trials must be >= 1");
    if (pipelines.empty())
        throw std::invalid_argument("config: at least one pipeline required");
    if (schemes.empty())
        throw std::invalid_argument("config: at least one codebook scheme required");
    if (!(success_threshold > 0.0))
        throw std::invalid_argument("config: success_threshold must be > 0");
    if (axis != SweepAxis::None && values.empty())
        throw std::invalid_argument("config: sweep axis set but no values given");
    for (double v : sweep_points()) {
        const ExperimentConfig c = at_point(v);
        if (c.num_samples < 1)
            throw std::invalid_argument("config: T must be >= 1");
        if (c.model == ChannelModel::Cluster) {
            c.cluster_config().validate();
        } else if (c.block_p < 1 || c.block_clusters < 1) {
            throw std::invalid_argument("config: block_p and block_clusters must be >= 1");
        }
        for (auto p : pipelines) {
            const auto [nz, nf] = c.codebook_size(p);
            if (static_cast<long>(nz) * nf < c.num_samples)
                throw std::invalid_argument("config: T = " + std::to_string(c.num_samples) + " exceeds the " +
                                            std::to_string(nz) + "x" + std::to_string(nf) + " measurement grid");
        }
        for (auto s : schemes)
            if (s == sounding::Scheme::MBC && (n_bs % subarrays != 0 || n_ms % subarrays != 0))
                throw std::invalid_argument("config: MBC subarrays must divide the array sizes");
    }
}

ExperimentConfig ExperimentConfig::at_point(double value) const
{
    ExperimentConfig c = *this;
    switch (axis) {
    case SweepAxis::None:
        break;
    case SweepAxis::T:
        c.num_samples = static_cast<int>(std::lround(value));
        break;
    case SweepAxis::Spread:
        c.spread_aoa_deg = value;
        c.spread_aod_deg = value;
        break;
    case SweepAxis::Snr:
        c.snr_db = value;
        break;
    }
    return c;
}

std::vector<double> ExperimentConfig::sweep_points() const
{
    if (axis == SweepAxis::None)
        return {0.0};
    return values;
}

std::pair<int, int> ExperimentConfig::codebook_size(pipelines::Pipeline p) const
{
    if (p == pipelines::Pipeline::FullMC)
        return {n_bs, n_ms};
    if (sampling_ratio)
        return sounding::size_codebooks(num_samples, *sampling_ratio);
    return {n_z, n_f};
}

channel::ClusterChannelConfig ExperimentConfig::cluster_config() const
{
    channel::ClusterChannelConfig c;
    for (double a : mean_aoa_deg)
        c.mean_aoa.push_back(a * deg);
    for (double a : mean_aod_deg)
        c.mean_aod.push_back(a * deg);
    c.spread_aoa = spread_aoa_deg * deg;
    c.spread_aod = spread_aod_deg * deg;
    c.rays_aoa = rays_aoa;
    c.rays_aod = rays_aod;
    c.distance_m = distance_m;
    c.carrier_hz = carrier_hz;
    c.on_grid = on_grid;
    return c;
}

void to_json(json &j, const ExperimentConfig &c)
{
    json schemes = json::array();
    for (auto s : c.schemes)
        schemes.push_back(std::string(sounding::to_string(s)));
    json pipes = json::array();
    for (auto p : c.pipelines)
        pipes.push_back(std::string(pipelines::to_string(p)));
    j = json{
        {"name", c.name},
        {"n_bs", c.n_bs},
        {"n_ms", c.n_ms},
        {"spacing_over_wavelength", c.spacing_over_wavelength},
        {"grid_bs", c.grid_bs},
        {"grid_ms", c.grid_ms},
        {"channel_model", c.model == ChannelModel::Cluster ? "cluster" : "block-sparse"},
        {"mean_aoa_deg", c.mean_aoa_deg},
        {"mean_aod_deg", c.mean_aod_deg},
        {"spread_aoa_deg", c.spread_aoa_deg},
        {"spread_aod_deg", c.spread_aod_deg},
        {"rays_aoa", c.rays_aoa},
        {"rays_aod", c.rays_aod},
        {"distance_m", c.distance_m},
        {"carrier_hz", c.carrier_hz},
        {"on_grid", c.on_grid},
        {"block_p", c.block_p},
        {"block_clusters", c.block_clusters},
        {"schemes", schemes},
        {"subarrays", c.subarrays},
        {"num_samples", c.num_samples},
        {"n_z", c.n_z},
        {"n_f", c.n_f},
        {"axis", std::string(to_string(c.axis))},
        {"values", c.values},
        {"pipelines", pipes},
        {"trials", c.trials},
        {"base_seed", c.base_seed},
        {"success_threshold", c.success_threshold},
        {"success_metric", c.success_metric == SuccessMetric::RelError ? "rel_error" : "nmse"},
        {"output_dir", c.output_dir},
        {"solver",
         {{"svt_tol", c.solver.svt.tol},
          {"svt_max_iter", c.solver.svt.max_iter},
          {"fpc_tol", c.solver.fpc_tol},
          {"fpc_max_iter", c.solver.fpc_max_iter},
          {"fista_tol", c.solver.fista.tol},
          {"fista_max_iter", c.solver.fista.max_iter},
          {"calibration_band", c.solver.calibration_band}}},
    };
    j["sampling_ratio"] = c.sampling_ratio ? json(*c.sampling_ratio) : json(nullptr);
    j["snr_db"] = c.snr_db ? json(*c.snr_db) : json(nullptr);
    if (c.solver.direct_lambda)
        j["solver"]["direct_lambda"] = *c.solver.direct_lambda;
}

void from_json(const json &j, ExperimentConfig &c)
{
    if (!j.is_object())
        throw std::invalid_argument("config: top level must be a JSON object");
    const ExperimentConfig d;
    c.name = j.value("name", d.name);
    c.n_bs = j.value("n_bs", d.n_bs);
    c.n_ms = j.value("n_ms", d.n_ms);
    c.spacing_over_wavelength = j.value("spacing_over_wavelength", d.spacing_over_wavelength);
    c.grid_bs = j.value("grid_bs", d.grid_bs);
    c.grid_ms = j.value("grid_ms", d.grid_ms);
    const auto model = j.value("channel_model", std::string("cluster"));
    if (model == "cluster")
        c.model = ChannelModel::Cluster;
    else if (model == "block-sparse")
        c.model = ChannelModel::BlockSparse;
    else
        throw std::invalid_argument("config: unknown channel_model '" + model + "'");
    c.mean_aoa_deg = j.value("mean_aoa_deg", d.mean_aoa_deg);
    c.mean_aod_deg = j.value("mean_aod_deg", d.mean_aod_deg);
    c.spread_aoa_deg = j.value("spread_aoa_deg", d.spread_aoa_deg);
    c.spread_aod_deg = j.value("spread_aod_deg", d.spread_aod_deg);
    c.rays_aoa = j.value("rays_aoa", d.rays_aoa);
    c.rays_aod = j.value("rays_aod", d.rays_aod);
    c.distance_m = j.value("distance_m", d.distance_m);
    c.carrier_hz = j.value("carrier_hz", d.carrier_hz);
    c.on_grid = j.value("on_grid", d.on_grid);
    c.block_p = j.value("block_p", d.block_p);
    c.block_clusters = j.value("block_clusters", d.block_clusters);
    c.schemes.clear();
    for (const auto &s : j.value("schemes", json::array({"RC"})))
        c.schemes.push_back(sounding::scheme_from_string(s.get<std::string>()));
    c.subarrays = j.value("subarrays", d.subarrays);
    c.num_samples = j.value("num_samples", d.num_samples);
    if (j.contains("sampling_ratio"))
        c.sampling_ratio = j["sampling_ratio"].is_null() ? std::nullopt : std::optional(j["sampling_ratio"].get<double>());
    else
        c.sampling_ratio = d.sampling_ratio;
    c.n_z = j.value("n_z", d.n_z);
    c.n_f = j.value("n_f", d.n_f);
    if (j.contains("snr_db") && !j["snr_db"].is_null())
        c.snr_db = j["snr_db"].get<double>();
    else
        c.snr_db.reset();
    c.axis = axis_from_string(j.value("axis", std::string("none")));
    c.values = j.value("values", std::vector<double>{});
    c.pipelines.clear();
    for (const auto &p : j.value("pipelines", json::array({"two-stage", "direct-cs"})))
        c.pipelines.push_back(pipelines::pipeline_from_string(p.get<std::string>()));
    c.trials = j.value("trials", d.trials);
    c.base_seed = j.value("base_seed", d.base_seed);
    c.success_threshold = j.value("success_threshold", d.success_threshold);
    const auto metric = j.value("success_metric", std::string("rel_error"));
    if (metric == "rel_error")
        c.success_metric = SuccessMetric::RelError;
    else if (metric == "nmse")
        c.success_metric = SuccessMetric::Nmse;
    else
        throw std::invalid_argument("config: unknown success_metric '" + metric + "'");
    c.output_dir = j.value("output_dir", d.output_dir);
    if (j.contains("solver")) {
        const auto &s = j["solver"];
        c.solver.svt.tol = s.value("svt_tol", c.solver.svt.tol);
        c.solver.svt.max_iter = s.value("svt_max_iter", c.solver.svt.max_iter);
        c.solver.fpc_tol = s.value("fpc_tol", c.solver.fpc_tol);
        c.solver.fpc_max_iter = s.value("fpc_max_iter", c.solver.fpc_max_iter);
        c.solver.fista.tol = s.value("fista_tol", c.solver.fista.tol);
        c.solver.fista.max_iter = s.value("fista_max_iter", c.solver.fista.max_iter);
        c.solver.calibration_band = s.value("calibration_band", c.solver.calibration_band);
        if (s.contains("direct_lambda"))
            c.solver.direct_lambda = s["direct_lambda"].get<double>();
    }
}

ExperimentConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error &e) {
        throw std::invalid_argument("config " + path.string() + ": " + e.what());
    }
    ExperimentConfig c = j.get<ExperimentConfig>();
    c.validate();
    return c;
}

} // namespace mmcs::harness
