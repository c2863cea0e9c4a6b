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

// mmcs: command-line front end for the channel-estimation simulator.

#include "mmcs/harness.hpp"
#include "mmcs/records.hpp"
#include "mmcs/ripcheck.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

using nlohmann::json;
namespace hn = mmcs::harness;

namespace {

constexpr int kConfigError = 2;

struct ConfigFlags {
    std::string config_path;
    std::string preset_name;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
};

void add_config_flags(CLI::App *cmd, ConfigFlags &f)
{
    auto *c = cmd->add_option("--config", f.config_path, "Experiment config (JSON)")->check(CLI::ExistingFile);
    cmd->add_option("--preset", f.preset_name, "Named preset (see `mmcs presets`)")->excludes(c);
    cmd->add_option("--seed", f.seed, "Override the base seed");
    cmd->add_option("--trials", f.trials, "Override trials per point")->check(CLI::PositiveNumber);
}

hn::ExperimentConfig resolve_config(const ConfigFlags &f)
{
    hn::ExperimentConfig cfg;
    if (!f.config_path.empty())
        cfg = hn::load_config(f.config_path);
    else if (!f.preset_name.empty())
        cfg = hn::preset(f.preset_name);
    else
        cfg = hn::preset("desk");
    if (f.seed)
        cfg.base_seed = *f.seed;
    if (f.trials)
        cfg.trials = *f.trials;
    cfg.validate();
    return cfg;
}

int cmd_presets()
{
    json out = json::array();
    for (const auto &p : hn::presets())
        out.push_back({{"name", p.name}, {"description", p.description}, {"config", p.config}});
    std::cout << out.dump(2) << '\n';
    return 0;
}

struct RunFlags {
    ConfigFlags cfg;
    std::optional<double> point;
    std::vector<std::string> schemes;
    std::vector<std::string> pipelines;
    int trial = 0;
};

int cmd_run(const RunFlags &f)
{
    auto cfg = resolve_config(f.cfg);
    const double point = f.point.value_or(cfg.sweep_points().front());
    if (!f.schemes.empty()) {
        cfg.schemes.clear();
        for (const auto &s : f.schemes)
            cfg.schemes.push_back(mmcs::sounding::scheme_from_string(s));
    }
    if (!f.pipelines.empty()) {
        cfg.pipelines.clear();
        for (const auto &p : f.pipelines)
            cfg.pipelines.push_back(mmcs::pipelines::pipeline_from_string(p));
    }
    if (cfg.axis != hn::SweepAxis::None) {
        cfg.values = {point};
    }
    cfg.validate();

    json results = json::array();
    for (auto s : cfg.schemes)
        for (auto p : cfg.pipelines)
            results.push_back(hn::to_json(hn::run_trial(cfg, point, s, p, f.trial)));
    json out{{"config", cfg.name}, {"axis", hn::to_string(cfg.axis)}, {"point", point}, {"trial", f.trial},
             {"results", results}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

struct SweepFlags {
    ConfigFlags cfg;
    std::string out_dir;
    int workers = 1;
    bool quiet = false;
};

int cmd_sweep(const SweepFlags &f)
{
    const auto cfg = resolve_config(f.cfg);
    hn::SweepOptions opts;
    opts.workers = f.workers;
    opts.out_dir = f.out_dir.empty() ? std::filesystem::path(cfg.output_dir) : std::filesystem::path(f.out_dir);
    std::size_t done = 0;
    const std::size_t total =
        cfg.sweep_points().size() * cfg.schemes.size() * cfg.pipelines.size() * static_cast<std::size_t>(cfg.trials);
    if (!f.quiet)
        opts.on_result = [&](const hn::TrialResult &r) {
            ++done;
            std::cerr << "[" << done << "/" << total << "] " << r.axis << "=" << r.value << " " << r.scheme << " "
                      << r.pipeline << " trial " << r.trial << " rel_error " << r.rel_error
                      << (r.error.empty() ? "" : " error: " + r.error) << '\n';
        };
    const auto rows = hn::run_sweep(cfg, opts);
    hn::write_aggregate_csv(std::cout, hn::aggregate(rows));
    std::cerr << "wrote " << (*opts.out_dir / "trials.csv").string() << " and "
              << (*opts.out_dir / "aggregate.csv").string() << '\n';
    return 0;
}

struct RicFlags {
    std::string matrix_path;
    int rows = 16;
    int cols = 32;
    int k = 2;
    std::string ensemble = "complex";
    std::uint64_t seed = 1;
    long sampled = 0;
};

int cmd_ric(const RicFlags &f)
{
    namespace rc = mmcs::ripcheck;
    mmcs::CMatrix a;
    if (!f.matrix_path.empty()) {
        std::ifstream in(f.matrix_path);
        json j;
        try {
            in >> j;
            a = mmcs::records::matrix_from_json(j);
        } catch (const json::exception &e) {
            throw std::invalid_argument(std::string("matrix file: ") + e.what());
        }
    } else {
        if (f.ensemble != "complex" && f.ensemble != "real")
            throw std::invalid_argument("ensemble must be 'complex' or 'real'");
        a = rc::gaussian_matrix(f.rows, f.cols,
                                f.ensemble == "real" ? rc::Ensemble::RealGaussian : rc::Ensemble::ComplexGaussian,
                                f.seed);
    }
    rc::RicMode mode = rc::Exhaustive{};
    if (f.sampled > 0)
        mode = rc::Sampled{f.sampled, f.seed};
    const auto est = rc::empirical_ric(a, f.k, mode);
    json out{{"rows", a.rows()},
             {"cols", a.cols()},
             {"k", est.k},
             {"mode", f.sampled > 0 ? "sampled" : "exhaustive"},
             {"delta", est.delta},
             {"extremal_support", est.extremal_support},
             {"supports_checked", est.supports_checked},
             {"lemma1_threshold", rc::lemma1_threshold()},
             {"lemma1_condition", rc::lemma1_condition(est.delta)}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"mmWave two-stage compressed-sensing channel estimation simulator"};
    app.require_subcommand(1);

    app.add_subcommand("presets", "List named experiment profiles as JSON");

    RunFlags run_flags;
    auto *run = app.add_subcommand("run", "Run one trial per scheme and pipeline at a single point; prints JSON");
    add_config_flags(run, run_flags.cfg);
    run->add_option("--point", run_flags.point, "Sweep-axis value (default: first configured point)");
    run->add_option("--scheme", run_flags.schemes, "Sounding scheme(s): RC, MBC");
    run->add_option("--pipeline", run_flags.pipelines, "Pipeline(s): two-stage, direct-cs, full-mc");
    run->add_option("--trial", run_flags.trial, "Trial index")->check(CLI::NonNegativeNumber);

    SweepFlags sweep_flags;
    auto *sweep = app.add_subcommand("sweep", "Monte-Carlo sweep; writes trials.csv and aggregate.csv");
    add_config_flags(sweep, sweep_flags.cfg);
    sweep->add_option("--out", sweep_flags.out_dir, "Output directory (default: config output_dir)");
    sweep->add_option("--workers", sweep_flags.workers, "Worker threads")->check(CLI::PositiveNumber);
    sweep->add_flag("--quiet", sweep_flags.quiet, "Suppress per-trial progress");

    RicFlags ric_flags;
    auto *ric = app.add_subcommand("ric-check", "Empirical restricted isometry constant; prints JSON");
    ric->add_option("--matrix", ric_flags.matrix_path, "Matrix record {rows, cols, re, im} (JSON)")
        ->check(CLI::ExistingFile);
    ric->add_option("--rows", ric_flags.rows, "Gaussian test matrix rows")->check(CLI::PositiveNumber);
    ric->add_option("--cols", ric_flags.cols, "Gaussian test matrix columns")->check(CLI::PositiveNumber);
    ric->add_option("--k", ric_flags.k, "Support size")->check(CLI::PositiveNumber);
    ric->add_option("--ensemble", ric_flags.ensemble, "complex | real");
    ric->add_option("--seed", ric_flags.seed, "Test matrix / sampling seed");
    ric->add_option("--sampled", ric_flags.sampled, "Sample this many supports instead of an exhaustive scan");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("presets"))
            return cmd_presets();
        if (app.got_subcommand(run))
            return cmd_run(run_flags);
        if (app.got_subcommand(sweep))
            return cmd_sweep(sweep_flags);
        if (app.got_subcommand(ric))
            return cmd_ric(ric_flags);
    } catch (const std::invalid_argument &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::domain_error &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }
    return 0;
}
