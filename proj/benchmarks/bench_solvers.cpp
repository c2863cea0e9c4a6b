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
#include "mmcs/completion.hpp"
#include "mmcs/pipelines.hpp"
#include "mmcs/prox.hpp"
#include "mmcs/ripcheck.hpp"
#include "mmcs/sounding.hpp"
#include "mmcs/sparse_recovery.hpp"

#include <benchmark/benchmark.h>

using namespace mmcs;

namespace {

struct Scenario {
    channel::DictionaryPair dicts;
    channel::ChannelRealization ch;
    sounding::Codebook z, f;
    sounding::ObservationSet obs;
};

// Block-sparse on-grid channel sounded with RC codebooks at half sampling.
Scenario make_scenario(int antennas, int n, std::uint64_t seed)
{
    Scenario s{channel::DictionaryPair::make({antennas, 0.5}, {antennas, 0.5}), {}, {}, {}, {}};
    s.ch = channel::draw_block_sparse_channel(2, 2, s.dicts, seed);
    s.z = sounding::gen_rc_codebook(antennas, n, seed + 1);
    s.f = sounding::gen_rc_codebook(antennas, n, seed + 2);
    s.obs = sounding::observe(s.ch.h, s.z, s.f, sounding::sample_support(n, n, n * n / 2, seed + 3), 0.0, 0);
    return s;
}

void BM_SvdShrink(benchmark::State &state)
{
    const int n = static_cast<int>(state.range(0));
    Rng rng(1);
    const CMatrix x = complex_gaussian_matrix(n, n, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(solvers::svd_shrink(x, 1.0));
}
BENCHMARK(BM_SvdShrink)->Arg(24)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_SvtComplete(benchmark::State &state)
{
    const auto s = make_scenario(32, static_cast<int>(state.range(0)), 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(solvers::svt_complete(s.obs));
}
BENCHMARK(BM_SvtComplete)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_BeamspaceApplyAdjoint(benchmark::State &state)
{
    const auto s = make_scenario(static_cast<int>(state.range(0)), 24, 3);
    const auto op = pipelines::beamspace_operator(s.z, s.f, s.dicts.a_bs, s.dicts.a_ms);
    const CMatrix x = *s.ch.hv_truth;
    for (auto _ : state)
        benchmark::DoNotOptimize(op.adjoint(op.apply(x)));
}
BENCHMARK(BM_BeamspaceApplyAdjoint)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_DirectApplyAdjoint(benchmark::State &state)
{
    const auto s = make_scenario(static_cast<int>(state.range(0)), 24, 3);
    const auto op = pipelines::direct_operator(s.obs, s.z, s.f, s.dicts.a_bs, s.dicts.a_ms);
    const CMatrix x = *s.ch.hv_truth;
    for (auto _ : state)
        benchmark::DoNotOptimize(op.adjoint(op.apply(x)));
}
BENCHMARK(BM_DirectApplyAdjoint)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_FistaContinuationStage2(benchmark::State &state)
{
    const auto s = make_scenario(32, 24, 5);
    const auto op = pipelines::beamspace_operator(s.z, s.f, s.dicts.a_bs, s.dicts.a_ms);
    const CMatrix y = op.apply(*s.ch.hv_truth);
    for (auto _ : state)
        benchmark::DoNotOptimize(solvers::fista_l1_continuation(op, y));
}
BENCHMARK(BM_FistaContinuationStage2)->Unit(benchmark::kMillisecond);

void BM_TwoStage(benchmark::State &state)
{
    const auto s = make_scenario(32, 24, 9);
    for (auto _ : state)
        benchmark::DoNotOptimize(pipelines::two_stage_estimate(s.obs, s.z, s.f, s.dicts.a_bs, s.dicts.a_ms, false));
}
BENCHMARK(BM_TwoStage)->Unit(benchmark::kMillisecond);

void BM_DirectCs(benchmark::State &state)
{
    const auto s = make_scenario(32, 24, 9);
    for (auto _ : state)
        benchmark::DoNotOptimize(pipelines::direct_cs_estimate(s.obs, s.z, s.f, s.dicts.a_bs, s.dicts.a_ms, false));
}
BENCHMARK(BM_DirectCs)->Unit(benchmark::kMillisecond);

void BM_EmpiricalRic(benchmark::State &state)
{
    const CMatrix a = ripcheck::gaussian_matrix(16, 32, ripcheck::Ensemble::ComplexGaussian, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(ripcheck::empirical_ric(a, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EmpiricalRic)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
