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

#include <stdexcept>
#include <string>

namespace mmcs::harness {

namespace {

using pipelines::Pipeline;
using sounding::Scheme;

ExperimentConfig base(int antennas)
{
    ExperimentConfig c;
    c.n_bs = antennas;
    c.n_ms = antennas;
    c.mean_aoa_deg = {30.0, -30.0};
    c.mean_aod_deg = {30.0, -30.0};
    c.spread_aoa_deg = 15.0;
    c.spread_aod_deg = 10.0;
    c.rays_aoa = 10;
    c.rays_aod = 10;
    c.num_samples = 288;
    c.sampling_ratio = 0.5;
    c.trials = 100;
    return c;
}

ExperimentConfig t_sweep(int antennas, std::vector<double> ts)
{
    ExperimentConfig c = base(antennas);
    c.schemes = {Scheme::RC, Scheme::MBC};
    c.axis = SweepAxis::T;
    c.values = std::move(ts);
    return c;
}

ExperimentConfig spread_sweep(int antennas)
{
    ExperimentConfig c = base(antennas);
    c.sampling_ratio.reset();
    c.n_z = 24;
    c.n_f = 24;
    c.axis = SweepAxis::Spread;
    c.values = {6.0, 10.0, 14.0, 18.0, 22.0};
    return c;
}

ExperimentConfig snr_sweep(int antennas)
{
    ExperimentConfig c = base(antennas);
    c.on_grid = false;
    c.sampling_ratio.reset();
    c.n_z = 24;
    c.n_f = 24;
    c.axis = SweepAxis::Snr;
    c.values = {0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
    c.trials = 50;
    return c;
}

std::vector<Preset> build()
{
    std::vector<Preset> out;
    auto add = [&](std::string name, std::string description, ExperimentConfig c) {
        c.name = name;
        c.output_dir = "results/" + name;
        out.push_back({std::move(name), std::move(description), std::move(c)});
    };

    add("desk", "32-antenna single point: L=2, spreads 15/10 deg, T=288, noiseless, on-grid", base(32));
    add("full", "64-antenna single point: L=2, spreads 15/10 deg, T=288, noiseless, on-grid", base(64));
    {
        auto c = base(32);
        c.snr_db = 20.0;
        c.on_grid = false;
        add("desk-noisy", "32-antenna single point at 20 dB SNR with off-grid rays", c);
    }
    add("t-sweep-desk", "success rate vs T, RC and MBC codebooks, 32 antennas, noiseless on-grid",
        t_sweep(32, {32, 50, 72, 98, 128, 162, 200, 242, 288}));
    add("t-sweep-full", "success rate vs T, RC and MBC codebooks, 64 antennas, noiseless on-grid",
        t_sweep(64, {72, 128, 200, 288, 392, 512, 648, 800}));
    add("spread-sweep-desk", "success rate vs angular spread, N_Z=N_F=24, T=288, 32 antennas, noiseless on-grid",
        spread_sweep(32));
    add("spread-sweep-full", "success rate vs angular spread, N_Z=N_F=24, T=288, 64 antennas, noiseless on-grid",
        spread_sweep(64));
    {
        auto c = spread_sweep(32);
        c.on_grid = false;
        c.snr_db = 20.0;
        c.trials = 50;
        add("spread-nmse-desk", "NMSE vs angular spread at 20 dB SNR, off-grid rays, 32 antennas", c);
    }
    add("snr-sweep-desk", "NMSE vs SNR, N_Z=N_F=24, T=288, 32 antennas, off-grid rays", snr_sweep(32));
    add("snr-sweep-full", "NMSE vs SNR, N_Z=N_F=24, T=288, 64 antennas, off-grid rays", snr_sweep(64));
    return out;
}

} // namespace

const std::vector<Preset> &presets()
{
    static const std::vector<Preset> all = build();
    return all;
}

ExperimentConfig preset(std::string_view name)
{
    for (const auto &p : presets())
        if (p.name == name)
            return p.config;
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

} // namespace mmcs::harness
