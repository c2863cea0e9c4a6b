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

#include "mmcs/channel.hpp"
#include "mmcs/pipelines.hpp"
#include "mmcs/sounding.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

using namespace mmcs;
using namespace mmcs::pipelines;

namespace {

struct Scenario {
    channel::DictionaryPair dicts;
    channel::ChannelRealization ch;
    sounding::Codebook z;
    sounding::Codebook f;
    sounding::ObservationSet obs;
};

Scenario block_scenario(int n_ant, int p, int l, int n_z, int n_f, int t, double snr_db, std::uint64_t seed)
{
    Scenario s{channel::DictionaryPair::make({n_ant, 0.5}, {n_ant, 0.5}), {}, {}, {}, {}};
    s.ch = channel::draw_block_sparse_channel(p, l, s.dicts, seed);
    s.z = sounding::gen_rc_codebook(n_ant, n_z, seed + 1);
    s.f = sounding::gen_rc_codebook(n_ant, n_f, seed + 2);
    const double sigma = std::isfinite(snr_db) ? sounding::sigma_from_snr(s.ch.h, snr_db) : 0.0;
    s.obs = sounding::observe(s.ch.h, s.z, s.f, sounding::sample_support(n_z, n_f, t, seed + 3), sigma, seed + 4);
    return s;
}

double rel_error(const CMatrix &est, const CMatrix &truth)
{
    return (est - truth).norm() / truth.norm();
}

constexpr double kNoiseless = std::numeric_limits<double>::infinity();

} // namespace

TEST(TwoStage, SingleAtomHalfSampled)
{
    const auto s = block_scenario(32, 1, 1, 16, 16, 128, kNoiseless, 10);
    const auto est = two_stage_estimate(s.obs, s.z, s.f, s.dicts.a_bs, s.dicts.a_ms, false);
    EXPECT_LE(rel_error(est.h_hat, s.ch.h), 1e-3);
    EXPECT_FALSE(est.degraded);
    ASSERT_EQ(est.stages.size(), 2u);
    EXPECT_EQ(est.stages[0].stage, "completion");
    EXPECT_EQ(est.stages[1].stage, "sparse-recovery");
}

TEST(TwoStage, FullSamplingIsExact)
{
    const auto s = block_scenario(32, 2, 2, 16, 16, 256, kNoiseless, 20);
    const auto est = two_stage_estimate(s.obs, s.z, s.f, s.dicts.a_bs, s.dicts.a_ms, false);
    EXPECT_LE(rel_error(est.h_hat, s.ch.h), 1e-6);
}

TEST(TwoStage, ZeroChannelGivesZero)
{
    auto s = block_scenario(16, 1, 1, 8, 8, 32, kNoiseless, 30);
    s.obs.values.setZero();
    const auto est = two_stage_estimate(s.obs, s.z, s.f, s.dicts.a_bs, s.dicts.a_ms, false);
    EXPECT_EQ(est.h_hat.norm(), 0.0);
    const auto direct = direct_cs_estimate(s.obs, s.z, s.f, s.dicts.a_bs, s.dicts.a_ms, false);
    EXPECT_EQ(direct.h_hat.norm(), 0.0);
}

TEST(TwoStage, BeamspaceConsistency)
{
    for (bool noisy : {false, true}) {
        const auto s = block_scenario(16, 2, 1, 10, 10, 60, noisy ? 20.0 : kNoiseless, 40);
        for (const auto &est : {two_stage_estimate(s.obs, s.z, s.f, s.dicts.a_bs, s.dicts.a_ms, noisy),
                                direct_cs_estimate(s.obs, s.z, s.f, s.dicts.a_bs, s.dicts.a_ms, noisy)}) {
            ASSERT_TRUE(est.hv_hat.has_value());
            EXPECT_EQ(synthesize(*est.hv_hat, s.dicts.a_bs, s.dicts.a_ms), est.h_hat);
        }
    }
}

TEST(TwoStage, NoisyCalibrationHitsBand)
{
    const auto s = block_scenario(32, 2, 2, 24, 24, 288, 20.0, 50);
    const auto est = two_stage_estimate(s.obs, s.z, s.f, s.dicts.a_bs, s.dicts.a_ms, true);
    ASSERT_EQ(est.stages.size(), 2u);
    for (const auto &st : est.stages) {
        EXPECT_GT(st.target_residual, 0.0);
        EXPECT_NEAR(st.attained_residual / st.target_residual, 1.0, 0.2 + 1e-9) << st.stage;
    }
    const double e = rel_error(est.h_hat, s.ch.h);
    EXPECT_TRUE(std::isfinite(e));
    EXPECT_GT(e, 0.0);
    EXPECT_LT(e, 0.5);
}

TEST(TwoStage, Deterministic)
{
    const auto s = block_scenario(16, 2, 1, 10, 10, 50, 15.0, 60);
    const auto a = two_stage_estimate(s.obs, s.z, s.f, s.dicts.a_bs, s.dicts.a_ms, true);
    const auto b = two_stage_estimate(s.obs, s.z, s.f, s.dicts.a_bs, s.dicts.a_ms, true);
    EXPECT_EQ(a.h_hat, b.h_hat);
}

TEST(TwoStage, RejectsMismatchedCodebooks)
{
    const auto s = block_scenario(16, 1, 1, 8, 8, 32, kNoiseless, 70);
    const auto wrong = sounding::gen_rc_codebook(16, 9, 1);
    EXPECT_THROW(two_stage_estimate(s.obs, wrong, s.f, s.dicts.a_bs, s.dicts.a_ms, false), std::invalid_argument);
}

TEST(DirectCs, SingleAtomExactSupport)
{
    const auto s = block_scenario(16, 1, 1, 12, 12, 100, kNoiseless, 80);
    const auto est = direct_cs_estimate(s.obs, s.z, s.f, s.dicts.a_bs, s.dicts.a_ms, false);
    const CMatrix &hv = *est.hv_hat;
    const CMatrix &truth = *s.ch.hv_truth;
    const double m = hv.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < hv.size(); ++i)
        EXPECT_EQ(std::abs(hv(i)) > 1e-6 * m, std::abs(truth(i)) > 0.0);
    EXPECT_LE(rel_error(est.h_hat, s.ch.h), 1e-6);
}

TEST(DirectCs, OperatorIsMatrixFreeAndAdjointConsistent)
{
    const auto s = block_scenario(16, 1, 1, 8, 8, 30, kNoiseless, 90);
    const auto op = direct_operator(s.obs, s.z, s.f, s.dicts.a_bs, s.dicts.a_ms);
    EXPECT_EQ(op.out_shape().rows, 30);
    EXPECT_LE(solvers::adjoint_mismatch(op, 20, 1), solvers::kAdjointTolerance);
    const auto bil = beamspace_operator(s.z, s.f, s.dicts.a_bs, s.dicts.a_ms);
    EXPECT_LE(solvers::adjoint_mismatch(bil, 20, 2), solvers::kAdjointTolerance);
    // y_t = z_i^H A_BS Hv A_MS^H f_j
    const CMatrix y = op.apply(*s.ch.hv_truth);
    EXPECT_LE((y - s.obs.values).norm() / s.obs.values.norm(), 1e-12);
}

TEST(FullMc, FullyObservedIsExact)
{
    const auto d = channel::DictionaryPair::make({12, 0.5}, {12, 0.5});
    const auto ch = channel::draw_block_sparse_channel(2, 2, d, 5);
    const auto z = sounding::gen_rc_codebook(12, 12, 1);
    const auto f = sounding::gen_rc_codebook(12, 12, 2);
    const auto obs = sounding::observe(ch.h, z, f, sounding::sample_support(12, 12, 144, 3), 0.0, 4);
    const auto est = full_mc_estimate(obs, z, f);
    EXPECT_LE(rel_error(est.h_hat, ch.h), 1e-6);
    EXPECT_FALSE(est.hv_hat.has_value());
}

TEST(FullMc, RankTwoSixtyPercent)
{
    const auto d = channel::DictionaryPair::make({64, 0.5}, {64, 0.5});
    const auto ch = channel::draw_block_sparse_channel(3, 2, d, 6);
    const auto z = sounding::gen_rc_codebook(64, 64, 1);
    const auto f = sounding::gen_rc_codebook(64, 64, 2);
    const auto obs = sounding::observe(ch.h, z, f, sounding::sample_support(64, 64, 2458, 3), 0.0, 4);
    const auto est = full_mc_estimate(obs, z, f);
    EXPECT_LE(rel_error(est.h_hat, ch.h), 1e-3);
}

TEST(FullMc, RejectsSingularOrNonSquare)
{
    const auto z = sounding::gen_rc_codebook(8, 8, 1);
    auto singular = z;
    singular.matrix.col(3) = singular.matrix.col(2);
    const auto obs = sounding::observe(CMatrix::Ones(8, 8), z, z, sounding::sample_support(8, 8, 40, 2), 0.0, 3);
    EXPECT_THROW(full_mc_estimate(obs, singular, z), std::invalid_argument);
    const auto rect = sounding::gen_rc_codebook(8, 6, 1);
    const auto obs2 = sounding::observe(CMatrix::Ones(8, 8), rect, z, sounding::sample_support(6, 8, 20, 2), 0.0, 3);
    EXPECT_THROW(full_mc_estimate(obs2, rect, z), std::invalid_argument);
}

TEST(SampleBounds, Examples)
{
    SparsityParams e;
    e.n_bs = e.n_ms = std::exp(1.0);
    EXPECT_EQ(theorem1_required(e).n_z_min, 1);
    EXPECT_EQ(theorem1_required(e).n_f_min, 1);

    SparsityParams q{5, 2, 64, 64};
    EXPECT_EQ(theorem1_required(q).n_z_min, static_cast<long>(std::ceil(10 * std::log(6.4))));
    EXPECT_EQ(theorem1_required(q).n_z_min, 19);
}

TEST(SampleBounds, MatchesClosedForms)
{
    const SparsityParams q{4, 2, 128, 96};
    const TheoryBoundConfig tb{1.5, 2.0, 0.5, 1, 1, 1, 0.25, 0.75, 1};
    const auto r = theorem1_required(q, tb);
    EXPECT_EQ(r.n_z_min, static_cast<long>(std::ceil(1.5 * 8 * std::log(128.0 / 8))));
    EXPECT_EQ(r.n_f_min, static_cast<long>(std::ceil(2.0 * 8 * std::log(96.0 / 8))));
    const double n = std::max(r.n_z_min, r.n_f_min);
    EXPECT_EQ(r.t_min_two_stage, static_cast<long>(std::ceil(0.5 * std::pow(n, 1.25) * 2 * std::log(n))));
    EXPECT_EQ(r.t_min_direct, static_cast<long>(std::ceil(0.75 * 16 * 2 * std::log(128.0 * 96))));
    EXPECT_EQ(r.t_min_full_mc, static_cast<long>(std::ceil(0.25 * std::pow(128.0, 1.25) * 2 * std::log(128.0))));
}

TEST(SampleBounds, TwoStageAdvantageGrowsWithP)
{
    // L < p alone is not enough at unit constants; the ratio falls with p.
    for (int l : {1, 2, 3}) {
        double prev = std::numeric_limits<double>::infinity();
        for (int p : {4, 8, 16, 32}) {
            const auto r = theorem1_required({p, l, 4096, 4096});
            const double ratio = static_cast<double>(r.t_min_two_stage) / static_cast<double>(r.t_min_direct);
            EXPECT_LT(ratio, prev) << "p=" << p << " L=" << l;
            prev = ratio;
        }
        EXPECT_LT(prev, 1.0) << "L=" << l;
    }
}

TEST(SampleBounds, RejectsVacuousOrInvalid)
{
    EXPECT_THROW(theorem1_required({8, 4, 32, 32}), std::domain_error);
    EXPECT_THROW(theorem1_required({0, 1, 32, 32}), std::invalid_argument);
    TheoryBoundConfig bad;
    bad.c3 = 0.0;
    EXPECT_THROW(theorem1_required({1, 1, 32, 32}, bad), std::invalid_argument);
}

TEST(PipelineNames, RoundTrip)
{
    for (auto p : {Pipeline::TwoStage, Pipeline::DirectCS, Pipeline::FullMC})
        EXPECT_EQ(pipeline_from_string(to_string(p)), p);
    EXPECT_THROW(pipeline_from_string("nope"), std::invalid_argument);
}
