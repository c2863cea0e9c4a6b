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

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace mmcs::harness {

using nlohmann::json;

double nmse(const CMatrix &h_hat, const CMatrix &h)
{
    if (h_hat.rows() != h.rows() || h_hat.cols() != h.cols())
        throw std::invalid_argument("nmse: shape mismatch");
    const double energy = h.squaredNorm();
    if (energy == 0.0)
        throw std::invalid_argument("nmse: true channel is identically zero");
    return (h_hat - h).squaredNorm() / energy;
}

double relative_error(const CMatrix &h_hat, const CMatrix &h)
{
    return std::sqrt(nmse(h_hat, h));
}

namespace {

bool same_double(double a, double b)
{
    return (std::isnan(a) && std::isnan(b)) || a == b;
}

std::string sanitize(std::string s)
{
    for (char &c : s)
        if (c == ',' || c == '\n' || c == '\r' || c == '"')
            c = ';';
    return s;
}

enum : std::uint64_t { kChannelStream = 1, kCodebookZ, kCodebookF, kSupportStream, kNoiseStream, kSolverStream };

} // namespace

bool operator==(const TrialResult &a, const TrialResult &b)
{
    return a.axis == b.axis && same_double(a.value, b.value) && a.scheme == b.scheme && a.pipeline == b.pipeline &&
           a.trial == b.trial && a.seed == b.seed && same_double(a.nmse, b.nmse) &&
           same_double(a.rel_error, b.rel_error) && a.success == b.success && same_double(a.wall_time, b.wall_time) &&
           a.iterations == b.iterations && a.degraded == b.degraded && a.p_measured == b.p_measured &&
           a.rank_truth == b.rank_truth && a.error == b.error;
}

json to_json(const TrialResult &r, bool with_stages)
{
    json j{{"axis", r.axis},
           {"value", r.value},
           {"scheme", r.scheme},
           {"pipeline", r.pipeline},
           {"trial", r.trial},
           {"seed", r.seed},
           {"nmse", r.nmse},
           {"rel_error", r.rel_error},
           {"success", r.success},
           {"wall_time", r.wall_time},
           {"iterations", r.iterations},
           {"degraded", r.degraded},
           {"p_measured", r.p_measured},
           {"rank_truth", r.rank_truth},
           {"error", r.error}};
    if (with_stages) {
        json stages = json::array();
        for (const auto &s : r.stages)
            stages.push_back({{"stage", s.stage},
                              {"report", s.report},
                              {"lambda", s.lambda},
                              {"target_residual", s.target_residual},
                              {"attained_residual", s.attained_residual}});
        j["stages"] = std::move(stages);
    }
    return j;
}

std::uint64_t trial_seed(std::uint64_t base_seed, double point, int trial)
{
    return base_seed + derive_seed(0, {std::bit_cast<std::uint64_t>(point), static_cast<std::uint64_t>(trial)});
}

TrialResult run_trial(const ExperimentConfig &cfg_in, double point, sounding::Scheme scheme,
                      pipelines::Pipeline pipeline, int trial)
{
    const ExperimentConfig cfg = cfg_in.at_point(point);
    TrialResult r;
    r.axis = std::string(to_string(cfg.axis));
    r.value = point;
    r.scheme = std::string(sounding::to_string(scheme));
    r.pipeline = std::string(pipelines::to_string(pipeline));
    r.trial = trial;
    r.seed = trial_seed(cfg.base_seed, point, trial);

    const auto start = std::chrono::steady_clock::now();
    try {
        const auto dicts = channel::DictionaryPair::make({cfg.n_bs, cfg.spacing_over_wavelength},
                                                         {cfg.n_ms, cfg.spacing_over_wavelength}, cfg.grid_bs,
                                                         cfg.grid_ms);
        const auto ch = cfg.model == ChannelModel::Cluster
                            ? channel::draw_channel(cfg.cluster_config(), dicts,
                                                    derive_seed(r.seed, {kChannelStream}))
                            : channel::draw_block_sparse_channel(cfg.block_p, cfg.block_clusters, dicts,
                                                                 derive_seed(r.seed, {kChannelStream}));
        r.p_measured = ch.p_measured;
        r.rank_truth = ch.rank_truth;

        const auto [nz, nf] = cfg.codebook_size(pipeline);
        const auto scheme_tag = static_cast<std::uint64_t>(scheme);
        const auto z = sounding::gen_codebook(scheme, cfg.n_bs, nz, derive_seed(r.seed, {kCodebookZ, scheme_tag}),
                                              cfg.subarrays);
        const auto f = sounding::gen_codebook(scheme, cfg.n_ms, nf, derive_seed(r.seed, {kCodebookF, scheme_tag}),
                                              cfg.subarrays);
        auto omega = sounding::sample_support(nz, nf, cfg.num_samples, derive_seed(r.seed, {kSupportStream}));
        const double sigma = cfg.snr_db ? sounding::sigma_from_snr(ch.h, *cfg.snr_db) : 0.0;
        const auto obs = sounding::observe(ch.h, z, f, std::move(omega), sigma, derive_seed(r.seed, {kNoiseStream}));

        pipelines::SolverSettings settings = cfg.solver;
        settings.fista.seed = derive_seed(r.seed, {kSolverStream});
        const bool noisy = cfg.snr_db.has_value();

        pipelines::EstimateBundle est;
        switch (pipeline) {
        case pipelines::Pipeline::TwoStage:
            est = pipelines::two_stage_estimate(obs, z, f, dicts.a_bs, dicts.a_ms, noisy, settings);
            break;
        case pipelines::Pipeline::DirectCS:
            est = pipelines::direct_cs_estimate(obs, z, f, dicts.a_bs, dicts.a_ms, noisy, settings);
            break;
        case pipelines::Pipeline::FullMC:
            est = pipelines::full_mc_estimate(obs, z, f, noisy, settings);
            break;
        }
        r.nmse = nmse(est.h_hat, ch.h);
        r.rel_error = std::sqrt(r.nmse);
        const double metric = cfg.success_metric == SuccessMetric::RelError ? r.rel_error : r.nmse;
        r.success = metric <= cfg.success_threshold;
        r.iterations = est.total_iterations();
        r.degraded = est.degraded;
        r.stages = std::move(est.stages);
    } catch (const std::exception &e) {
        r.error = sanitize(e.what());
        r.nmse = std::numeric_limits<double>::quiet_NaN();
        r.rel_error = std::numeric_limits<double>::quiet_NaN();
        r.success = false;
    }
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<TrialResult> run_sweep(const ExperimentConfig &cfg, const SweepOptions &opts)
{
    cfg.validate();
    struct Task {
        double point;
        sounding::Scheme scheme;
        pipelines::Pipeline pipeline;
        int trial;
    };
    std::vector<Task> tasks;
    for (double v : cfg.sweep_points())
        for (auto s : cfg.schemes)
            for (auto p : cfg.pipelines)
                for (int t = 0; t < cfg.trials; ++t)
                    tasks.push_back({v, s, p, t});

    std::ofstream trials_csv;
    if (opts.out_dir) {
        std::filesystem::create_directories(*opts.out_dir);
        trials_csv.open(*opts.out_dir / "trials.csv");
        if (!trials_csv)
            throw std::runtime_error("cannot write " + (*opts.out_dir / "trials.csv").string());
        write_trials_header(trials_csv);
        trials_csv.flush();
    }

    // Slots indexed by task so the returned order does not depend on scheduling.
    std::vector<TrialResult> results(tasks.size());
    std::mutex mu;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            const Task &t = tasks[i];
            TrialResult r = run_trial(cfg, t.point, t.scheme, t.pipeline, t.trial);
            std::lock_guard lock(mu);
            if (trials_csv.is_open()) {
                write_trial_row(trials_csv, r);
                trials_csv.flush();
            }
            if (opts.on_result)
                opts.on_result(r);
            results[i] = std::move(r);
        }
    };

    const int workers = std::max(1, opts.workers);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(worker);
    }

    if (opts.out_dir) {
        std::ofstream agg(*opts.out_dir / "aggregate.csv");
        write_aggregate_csv(agg, aggregate(results));
    }
    return results;
}

std::vector<AggregateRow> aggregate(const std::vector<TrialResult> &rows)
{
    using Key = std::tuple<std::string, double, std::string, std::string>;
    std::map<Key, std::vector<const TrialResult *>> groups;
    for (const auto &r : rows)
        groups[{r.axis, r.value, r.scheme, r.pipeline}].push_back(&r);

    std::vector<AggregateRow> out;
    for (const auto &[key, members] : groups) {
        AggregateRow a;
        std::tie(a.axis, a.value, a.scheme, a.pipeline) = key;
        a.trials = static_cast<int>(members.size());
        double nmse_sum = 0.0, nmse_sq = 0.0, rel_sum = 0.0, time_sum = 0.0, iter_sum = 0.0;
        int finite = 0;
        for (const auto *m : members) {
            a.successes += m->success ? 1 : 0;
            time_sum += m->wall_time;
            iter_sum += m->iterations;
            if (std::isfinite(m->nmse)) {
                ++finite;
                nmse_sum += m->nmse;
                nmse_sq += m->nmse * m->nmse;
                rel_sum += m->rel_error;
            }
        }
        const double n = a.trials;
        a.success_rate = a.successes / n;
        a.success_stderr = std::sqrt(a.success_rate * (1.0 - a.success_rate) / n);
        a.mean_wall_time = time_sum / n;
        a.mean_iterations = iter_sum / n;
        if (finite > 0) {
            a.mean_nmse = nmse_sum / finite;
            a.mean_rel_error = rel_sum / finite;
            const double var = finite > 1 ? std::max(0.0, (nmse_sq - finite * a.mean_nmse * a.mean_nmse) / (finite - 1))
                                          : 0.0;
            a.nmse_stderr = std::sqrt(var / finite);
        } else {
            a.mean_nmse = a.mean_rel_error = std::numeric_limits<double>::quiet_NaN();
        }
        out.push_back(std::move(a));
    }
    return out;
}

namespace {

std::string fmt_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv(const std::string &line)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

double parse_double(const std::string &s)
{
    if (s == "nan" || s == "-nan")
        return std::numeric_limits<double>::quiet_NaN();
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size())
        throw std::invalid_argument("malformed number '" + s + "'");
    return v;
}

constexpr const char *kTrialsHeader =
    "axis,value,scheme,pipeline,trial,seed,nmse,rel_error,success,wall_time,iterations,degraded,p_measured,"
    "rank_truth,error";
constexpr const char *kAggregateHeader =
    "axis,value,scheme,pipeline,trials,successes,success_rate,success_stderr,mean_nmse,nmse_stderr,"
    "mean_rel_error,mean_wall_time,mean_iterations";

} // namespace

void write_trials_header(std::ostream &os)
{
    os << kTrialsHeader << '\n';
}

void write_trial_row(std::ostream &os, const TrialResult &r)
{
    os << r.axis << ',' << fmt_double(r.value) << ',' << r.scheme << ',' << r.pipeline << ',' << r.trial << ','
       << r.seed << ',' << fmt_double(r.nmse) << ',' << fmt_double(r.rel_error) << ',' << (r.success ? 1 : 0) << ','
       << fmt_double(r.wall_time) << ',' << r.iterations << ',' << (r.degraded ? 1 : 0) << ',' << r.p_measured << ','
       << r.rank_truth << ',' << sanitize(r.error) << '\n';
}

void write_trials_csv(std::ostream &os, const std::vector<TrialResult> &rows)
{
    write_trials_header(os);
    for (const auto &r : rows)
        write_trial_row(os, r);
}

std::vector<TrialResult> read_trials_csv(std::istream &is)
{
    std::string line;
    if (!std::getline(is, line) || split_csv(line) != split_csv(kTrialsHeader))
        throw std::invalid_argument("trials CSV: unexpected header");
    std::vector<TrialResult> rows;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        const auto f = split_csv(line);
        if (f.size() != 15)
            throw std::invalid_argument("trials CSV: expected 15 fields, got " + std::to_string(f.size()));
        TrialResult r;
        r.axis = f[0];
        r.value = parse_double(f[1]);
        r.scheme = f[2];
        r.pipeline = f[3];
        r.trial = std::stoi(f[4]);
        r.seed = std::stoull(f[5]);
        r.nmse = parse_double(f[6]);
        r.rel_error = parse_double(f[7]);
        r.success = f[8] == "1";
        r.wall_time = parse_double(f[9]);
        r.iterations = std::stoi(f[10]);
        r.degraded = f[11] == "1";
        r.p_measured = std::stoi(f[12]);
        r.rank_truth = std::stoi(f[13]);
        r.error = f[14];
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_aggregate_csv(std::ostream &os, const std::vector<AggregateRow> &rows)
{
    os << kAggregateHeader << '\n';
    for (const auto &a : rows)
        os << a.axis << ',' << fmt_double(a.value) << ',' << a.scheme << ',' << a.pipeline << ',' << a.trials << ','
           << a.successes << ',' << fmt_double(a.success_rate) << ',' << fmt_double(a.success_stderr) << ','
           << fmt_double(a.mean_nmse) << ',' << fmt_double(a.nmse_stderr) << ',' << fmt_double(a.mean_rel_error)
           << ',' << fmt_double(a.mean_wall_time) << ',' << fmt_double(a.mean_iterations) << '\n';
}

std::vector<AggregateRow> read_aggregate_csv(std::istream &is)
{
    std::string line;
    if (!std::getline(is, line) || split_csv(line) != split_csv(kAggregateHeader))
        throw std::invalid_argument("aggregate CSV: unexpected header");
    std::vector<AggregateRow> rows;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        const auto f = split_csv(line);
        if (f.size() != 13)
            throw std::invalid_argument("aggregate CSV: expected 13 fields");
        AggregateRow a;
        a.axis = f[0];
        a.value = parse_double(f[1]);
        a.scheme = f[2];
        a.pipeline = f[3];
        a.trials = std::stoi(f[4]);
        a.successes = std::stoi(f[5]);
        a.success_rate = parse_double(f[6]);
        a.success_stderr = parse_double(f[7]);
        a.mean_nmse = parse_double(f[8]);
        a.nmse_stderr = parse_double(f[9]);
        a.mean_rel_error = parse_double(f[10]);
        a.mean_wall_time = parse_double(f[11]);
        a.mean_iterations = parse_double(f[12]);
        rows.push_back(std::move(a));
    }
    return rows;
}

} // namespace mmcs::harness
