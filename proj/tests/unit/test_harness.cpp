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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

using namespace mmcs;
using namespace mmcs::harness;

namespace {

ExperimentConfig small_config()
{
    ExperimentConfig c;
    c.name = "unit";
    c.n_bs = c.n_ms = 16;
    c.model = ChannelModel::BlockSparse;
    c.block_p = 1;
    c.block_clusters = 1;
    c.sampling_ratio.reset();
    c.n_z = c.n_f = 12;
    c.num_samples = 100;
    c.trials = 3;
    c.pipelines = {pipelines::Pipeline::TwoStage};
    return c;
}

TrialResult sample_row(int trial, double nmse, bool success)
{
    TrialResult r;
    r.axis = "T";
    r.value = 128;
    r.scheme = "RC";
    r.pipeline = "two-stage";
    r.trial = trial;
    r.seed = 12345678901234ULL + static_cast<std::uint64_t>(trial);
    r.nmse = nmse;
    r.rel_error = std::sqrt(nmse);
    r.success = success;
    r.wall_time = 0.125 * (trial + 1);
    r.iterations = 10 * trial;
    return r;
}

} // namespace

TEST(Nmse, Examples)
{
    Rng rng(1);
    const CMatrix h = complex_gaussian_matrix(4, 5, rng);
    EXPECT_EQ(nmse(h, h), 0.0);
    EXPECT_DOUBLE_EQ(nmse(CMatrix::Zero(4, 5), h), 1.0);
    EXPECT_DOUBLE_EQ(nmse(2.0 * h, h), 1.0);
    EXPECT_DOUBLE_EQ(relative_error(1.5 * h, h), 0.5);
    EXPECT_THROW(nmse(h, CMatrix::Zero(4, 5)), std::invalid_argument);
    EXPECT_THROW(nmse(CMatrix::Zero(4, 4), h), std::invalid_argument);
}

TEST(Config, JsonRoundTrip)
{
    auto c = preset("t-sweep-desk");
    c.snr_db = 12.5;
    c.solver.svt.tau = 7.0;
    const nlohmann::json j = c;
    const ExperimentConfig back = nlohmann::json::parse(j.dump()).get<ExperimentConfig>();
    EXPECT_EQ(nlohmann::json(back), j);
    EXPECT_EQ(back.values, c.values);
    EXPECT_EQ(back.snr_db, c.snr_db);
}

TEST(Config, MissingKeysKeepDefaults)
{
    const auto c = nlohmann::json::parse(R"({"trials": 7})").get<ExperimentConfig>();
    EXPECT_EQ(c.trials, 7);
    EXPECT_EQ(c.n_bs, ExperimentConfig{}.n_bs);
}

TEST(Config, InvalidThrows)
{
    auto c = small_config();
    c.trials = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = small_config();
    c.pipelines.clear();
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = small_config();
    c.axis = SweepAxis::T;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    EXPECT_THROW(nlohmann::json::parse(R"({"axis": "bogus"})").get<ExperimentConfig>(), std::invalid_argument);
    EXPECT_THROW(preset("no-such-preset"), std::invalid_argument);
}

TEST(Config, PresetsValidate)
{
    ASSERT_FALSE(presets().empty());
    for (const auto &p : presets())
        EXPECT_NO_THROW(p.config.validate()) << p.name;
}

TEST(Csv, TrialsRoundTripIsExact)
{
    std::vector<TrialResult> rows{sample_row(0, 1.0 / 3.0, true), sample_row(1, 2e-17, true)};
    auto failed = sample_row(2, std::numeric_limits<double>::quiet_NaN(), false);
    failed.rel_error = failed.nmse;
    failed.error = "solver threw";
    rows.push_back(failed);
    std::stringstream ss;
    write_trials_csv(ss, rows);
    const auto back = read_trials_csv(ss);
    ASSERT_EQ(back.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        EXPECT_TRUE(back[i] == rows[i]) << i;
}

TEST(Csv, AggregateRoundTripAndHeaderCheck)
{
    const auto agg = aggregate({sample_row(0, 0.25, true), sample_row(1, 0.5, false)});
    std::stringstream ss;
    write_aggregate_csv(ss, agg);
    const auto back = read_aggregate_csv(ss);
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0].successes, 1);
    EXPECT_EQ(back[0].mean_nmse, agg[0].mean_nmse);
    std::stringstream bad("nope,header\n");
    EXPECT_THROW(read_aggregate_csv(bad), std::invalid_argument);
}

TEST(Aggregate, StandardErrors)
{
    std::vector<TrialResult> rows;
    const double v[] = {0.1, 0.2, 0.4, 0.7};
    for (int i = 0; i < 4; ++i)
        rows.push_back(sample_row(i, v[i], i < 3));
    const auto agg = aggregate(rows);
    ASSERT_EQ(agg.size(), 1u);
    EXPECT_DOUBLE_EQ(agg[0].success_rate, 0.75);
    EXPECT_NEAR(agg[0].success_stderr, std::sqrt(0.75 * 0.25 / 4), 1e-15);
    const double mean = 0.35;
    double ss = 0.0;
    for (double x : v)
        ss += (x - mean) * (x - mean);
    EXPECT_NEAR(agg[0].mean_nmse, mean, 1e-15);
    EXPECT_NEAR(agg[0].nmse_stderr, std::sqrt(ss / 3 / 4), 1e-15);
}

TEST(Aggregate, GroupsByKey)
{
    auto a = sample_row(0, 0.1, true);
    auto b = sample_row(0, 0.1, true);
    b.pipeline = "direct-cs";
    auto c = sample_row(1, 0.1, true);
    c.value = 200;
    EXPECT_EQ(aggregate({a, b, c}).size(), 3u);
}

TEST(Sweep, RowCountAndPerfectSuccess)
{
    const auto c = small_config();
    const auto rows = run_sweep(c);
    ASSERT_EQ(rows.size(), 3u);
    for (const auto &r : rows) {
        EXPECT_TRUE(r.error.empty()) << r.error;
        EXPECT_NEAR(r.nmse, r.rel_error * r.rel_error, 1e-15 + 1e-12 * r.nmse);
        EXPECT_EQ(r.success, r.rel_error <= c.success_threshold);
    }
    const auto agg = aggregate(rows);
    ASSERT_EQ(agg.size(), 1u);
    EXPECT_EQ(agg[0].success_rate, 1.0);
}

TEST(Sweep, DeterministicAcrossWorkers)
{
    auto c = small_config();
    c.pipelines = {pipelines::Pipeline::TwoStage, pipelines::Pipeline::DirectCS};
    auto strip = [](std::vector<TrialResult> v) {
        for (auto &r : v)
            r.wall_time = 0.0;
        return v;
    };
    const auto a = strip(run_sweep(c, {1, {}, {}}));
    const auto b = strip(run_sweep(c, {2, {}, {}}));
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        EXPECT_TRUE(a[i] == b[i]) << i;
}

TEST(Sweep, TrialSeedsIndependentOfTrialCount)
{
    for (int t = 0; t < 3; ++t)
        EXPECT_EQ(trial_seed(7, 128.0, t), trial_seed(7, 128.0, t));
    auto c = small_config();
    const auto three = run_sweep(c);
    c.trials = 5;
    const auto five = run_sweep(c);
    for (int t = 0; t < 3; ++t) {
        EXPECT_EQ(three[t].seed, five[t].seed);
        EXPECT_EQ(three[t].nmse, five[t].nmse);
    }
    EXPECT_NE(trial_seed(7, 128.0, 0), trial_seed(7, 162.0, 0));
    EXPECT_NE(trial_seed(7, 128.0, 0), trial_seed(8, 128.0, 0));
}

TEST(Sweep, WritesCsvFiles)
{
    const auto dir = std::filesystem::temp_directory_path() / "mmcs_harness_test";
    std::filesystem::remove_all(dir);
    run_sweep(small_config(), {1, dir, {}});
    std::ifstream trials(dir / "trials.csv");
    std::ifstream agg(dir / "aggregate.csv");
    ASSERT_TRUE(trials && agg);
    EXPECT_EQ(read_trials_csv(trials).size(), 3u);
    EXPECT_EQ(read_aggregate_csv(agg).size(), 1u);
    std::filesystem::remove_all(dir);
}
