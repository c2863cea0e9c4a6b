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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mmcs::channel {

void ClusterChannelConfig::validate() const
{
    if (mean_aoa.empty())
        throw std::invalid_argument("ClusterChannelConfig: at least one cluster required");
    if (mean_aoa.size() != mean_aod.size())
        throw std::invalid_argument("ClusterChannelConfig: mean_aoa and mean_aod lengths differ");
    if (spread_aoa < 0.0 || spread_aod < 0.0)
        throw std::invalid_argument("ClusterChannelConfig: angular spreads must be >= 0");
    if (rays_aoa < 1 || rays_aod < 1)
        throw std::invalid_argument("ClusterChannelConfig: rays per cluster must be >= 1");
    if (!(distance_m > 0.0) || !(carrier_hz > 0.0))
        throw std::invalid_argument("ClusterChannelConfig: distance and carrier frequency must be > 0");

    constexpr double half_pi = kPi / 2.0;
    constexpr double slack = 1e-12;
    for (std::size_t l = 0; l < mean_aoa.size(); ++l) {
        if (std::abs(mean_aoa[l]) + spread_aoa / 2.0 > half_pi + slack)
            throw std::invalid_argument("ClusterChannelConfig: cluster " + std::to_string(l) +
                                        " AoA rays leave [-pi/2, pi/2]");
        if (std::abs(mean_aod[l]) + spread_aod / 2.0 > half_pi + slack)
            throw std::invalid_argument("ClusterChannelConfig: cluster " + std::to_string(l) +
                                        " AoD rays leave [-pi/2, pi/2]");
    }
}

double path_loss_factor(double distance_m, double carrier_hz)
{
    const double x = 4.0 * kPi * distance_m * carrier_hz / kSpeedOfLight;
    return x * x;
}

DictionaryPair DictionaryPair::make(const array::ArrayConfig &bs, const array::ArrayConfig &ms, int n1, int n2)
{
    bs.validate();
    ms.validate();
    DictionaryPair d;
    d.bs = bs;
    d.ms = ms;
    d.bs_grid = array::AngleGrid(n1 > 0 ? n1 : bs.num_antennas);
    d.ms_grid = array::AngleGrid(n2 > 0 ? n2 : ms.num_antennas);
    d.a_bs = array::build_dictionary(bs, d.bs_grid);
    d.a_ms = array::build_dictionary(ms, d.ms_grid);
    return d;
}

namespace {

struct SideDraw {
    std::vector<RayComponent> rays;
    CVector response;      // sum_i gain_i * a(angle_i)
    CVector row_response;  // sum_i gain_i * conj(a(angle_i)), so that the row is its transpose
    CVector coefficients;  // beamspace vector, on-grid only
};

SideDraw draw_side(int cluster, double mean, double spread, int count, double factor_variance,
                   const array::ArrayConfig &arr, const array::AngleGrid &grid, bool on_grid, Rng &rng)
{
    SideDraw s;
    s.response = CVector::Zero(arr.num_antennas);
    s.row_response = CVector::Zero(arr.num_antennas);
    if (on_grid)
        s.coefficients = CVector::Zero(grid.size());
    std::uniform_real_distribution<double> shift_dist(-spread / 2.0, spread / 2.0);
    for (int i = 0; i < count; ++i) {
        RayComponent r;
        r.cluster = cluster;
        r.shift = spread > 0.0 ? shift_dist(rng) : 0.0;
        r.gain = complex_gaussian(rng, factor_variance);
        r.angle = mean - r.shift;
        if (on_grid) {
            r.grid_index = grid.nearest_index(r.angle);
            r.angle = grid[static_cast<std::size_t>(r.grid_index)];
            s.coefficients(r.grid_index) += r.gain;
        }
        const CVector a = array::steering_vector(arr, r.angle);
        s.response += r.gain * a;
        s.row_response += r.gain * a.conjugate();
        s.rays.push_back(r);
    }
    return s;
}

void finalize(ChannelRealization &ch)
{
    if (!ch.aoa_coefficients.empty()) {
        CMatrix hv = CMatrix::Zero(ch.aoa_coefficients.front().size(), ch.aod_coefficients.front().size());
        for (std::size_t l = 0; l < ch.aoa_coefficients.size(); ++l)
            hv += ch.aoa_coefficients[l] * ch.aod_coefficients[l].transpose();
        ch.hv_truth = std::move(hv);
        ch.p_measured = measure_sparsity(ch).p;
    }
    ch.rank_truth = numerical_rank(ch.h);
}

} // namespace

ChannelRealization draw_channel(const ClusterChannelConfig &cfg, const DictionaryPair &dicts, std::uint64_t seed)
{
    cfg.validate();
    const double rho = path_loss_factor(cfg.distance_m, cfg.carrier_hz);
    // Independent factors with variance rho^{-1/2} give products of variance 1/rho.
    const double factor_variance = 1.0 / std::sqrt(rho);

    Rng rng(seed);
    ChannelRealization ch;
    ch.num_clusters = cfg.num_clusters();
    ch.h = CMatrix::Zero(dicts.bs.num_antennas, dicts.ms.num_antennas);
    for (int l = 0; l < cfg.num_clusters(); ++l) {
        const auto ls = static_cast<std::size_t>(l);
        auto aoa = draw_side(l, cfg.mean_aoa[ls], cfg.spread_aoa, cfg.rays_aoa, factor_variance, dicts.bs,
                             dicts.bs_grid, cfg.on_grid, rng);
        auto aod = draw_side(l, cfg.mean_aod[ls], cfg.spread_aod, cfg.rays_aod, factor_variance, dicts.ms,
                             dicts.ms_grid, cfg.on_grid, rng);
        ch.h += aoa.response * aod.row_response.transpose();
        ch.aoa_rays.insert(ch.aoa_rays.end(), aoa.rays.begin(), aoa.rays.end());
        ch.aod_rays.insert(ch.aod_rays.end(), aod.rays.begin(), aod.rays.end());
        if (cfg.on_grid) {
            ch.aoa_coefficients.push_back(std::move(aoa.coefficients));
            ch.aod_coefficients.push_back(std::move(aod.coefficients));
        }
    }
    finalize(ch);
    return ch;
}

ChannelRealization draw_block_sparse_channel(int p, int num_clusters, const DictionaryPair &dicts, std::uint64_t seed,
                                             double gain_variance)
{
    const int n1 = dicts.bs_grid.size();
    const int n2 = dicts.ms_grid.size();
    if (p < 1 || p > n1 || p > n2)
        throw std::invalid_argument("draw_block_sparse_channel: p must lie in [1, min(N1, N2)]");
    if (num_clusters < 1)
        throw std::invalid_argument("draw_block_sparse_channel: num_clusters must be >= 1");
    if (!(gain_variance > 0.0))
        throw std::invalid_argument("draw_block_sparse_channel: gain_variance must be > 0");

    const double factor_variance = std::sqrt(gain_variance);
    Rng rng(seed);
    ChannelRealization ch;
    ch.num_clusters = num_clusters;
    ch.h = CMatrix::Zero(dicts.bs.num_antennas, dicts.ms.num_antennas);

    auto draw_block = [&](int cluster, int grid_size, const array::AngleGrid &grid, std::vector<RayComponent> &rays) {
        std::uniform_int_distribution<int> start_dist(0, grid_size - 1);
        const int start = start_dist(rng);
        const double mean = grid[static_cast<std::size_t>((start + p / 2) % grid_size)];
        CVector coeffs = CVector::Zero(grid_size);
        for (int k = 0; k < p; ++k) {
            RayComponent r;
            r.cluster = cluster;
            r.grid_index = (start + k) % grid_size;
            r.angle = grid[static_cast<std::size_t>(r.grid_index)];
            r.shift = mean - r.angle;
            r.gain = complex_gaussian(rng, factor_variance);
            coeffs(r.grid_index) = r.gain;
            rays.push_back(r);
        }
        return coeffs;
    };

    for (int l = 0; l < num_clusters; ++l) {
        CVector alpha = draw_block(l, n1, dicts.bs_grid, ch.aoa_rays);
        CVector beta = draw_block(l, n2, dicts.ms_grid, ch.aod_rays);
        ch.h += (dicts.a_bs * alpha) * (dicts.a_ms.conjugate() * beta).transpose();
        ch.aoa_coefficients.push_back(std::move(alpha));
        ch.aod_coefficients.push_back(std::move(beta));
    }
    finalize(ch);
    return ch;
}

namespace {

int count_above(const CVector &v, double threshold)
{
    const double peak = v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
    if (peak == 0.0)
        return 0;
    return static_cast<int>((v.cwiseAbs().array() > threshold * peak).count());
}

} // namespace

SparsityProfile measure_sparsity(const CMatrix &hv, std::span<const CVector> aoa_coefficients,
                                 std::span<const CVector> aod_coefficients, double threshold)
{
    SparsityProfile s;
    for (const auto &a : aoa_coefficients)
        s.p = std::max(s.p, count_above(a, threshold));
    for (const auto &b : aod_coefficients)
        s.p = std::max(s.p, count_above(b, threshold));

    const double peak = hv.size() ? hv.cwiseAbs().maxCoeff() : 0.0;
    if (peak == 0.0)
        return s;
    const auto mask = (hv.cwiseAbs().array() > threshold * peak).eval();
    s.nnz_total = static_cast<int>(mask.count());
    s.nnz_rows = static_cast<int>(mask.rowwise().any().count());
    s.nnz_cols = static_cast<int>(mask.colwise().any().count());
    return s;
}

SparsityProfile measure_sparsity(const ChannelRealization &ch, double threshold)
{
    if (!ch.hv_truth)
        throw std::invalid_argument("measure_sparsity: realization is off-grid (no beamspace ground truth)");
    return measure_sparsity(*ch.hv_truth, ch.aoa_coefficients, ch.aod_coefficients, threshold);
}

int numerical_rank(const CMatrix &m, double rel_cutoff)
{
    if (m.size() == 0)
        return 0;
    Eigen::BDCSVD<CMatrix> svd(m);
    const RVector &s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0)
        return 0;
    return static_cast<int>((s.array() > rel_cutoff * s(0)).count());
}

} // namespace mmcs::channel
