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

#ifndef MMCS_CHANNEL_HPP
#define MMCS_CHANNEL_HPP

#include "mmcs/array_geometry.hpp"
#include "mmcs/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace mmcs::channel {

// Clustered geometric channel: each cluster l is the rank-1 product of an AoA
// superposition of I rays and an AoD superposition of J rays.
struct ClusterChannelConfig {
    std::vector<double> mean_aoa;  // radians, one per cluster
    std::vector<double> mean_aod;  // radians, one per cluster
    double spread_aoa = 0.0;       // full width, radians
    double spread_aod = 0.0;       // full width, radians
    int rays_aoa = 1;              // I
    int rays_aod = 1;              // J
    double distance_m = 30.0;      // D
    double carrier_hz = 28e9;      // f_c
    bool on_grid = true;

    int num_clusters() const { return static_cast<int>(mean_aoa.size()); }
    void validate() const;
};

// Path-loss factor rho = (4 pi D f_c / c)^2.
double path_loss_factor(double distance_m, double carrier_hz);

// One sub-ray of a cluster on either side of the link. `angle` is the angle
// used for synthesis (snapped to the grid in on-grid mode).
struct RayComponent {
    int cluster = 0;
    double shift = 0.0;
    double angle = 0.0;
    cdouble gain{};
    int grid_index = -1;  // on-grid only
};

struct ChannelRealization {
    CMatrix h;                              // N_BS x N_MS
    std::vector<RayComponent> aoa_rays;     // I per cluster, alpha gains
    std::vector<RayComponent> aod_rays;     // J per cluster, beta gains
    std::optional<CMatrix> hv_truth;        // N1 x N2, on-grid only
    std::vector<CVector> aoa_coefficients;  // alpha_l in C^{N1}, on-grid only
    std::vector<CVector> aod_coefficients;  // beta_l in C^{N2}, on-grid only
    int num_clusters = 0;
    int p_measured = 0;
    int rank_truth = 0;
};

struct DictionaryPair {
    array::ArrayConfig bs;
    array::ArrayConfig ms;
    array::AngleGrid bs_grid;
    array::AngleGrid ms_grid;
    CMatrix a_bs;  // N_BS x N1
    CMatrix a_ms;  // N_MS x N2

    static DictionaryPair make(const array::ArrayConfig &bs, const array::ArrayConfig &ms, int n1 = 0, int n2 = 0);
};

ChannelRealization draw_channel(const ClusterChannelConfig &cfg, const DictionaryPair &dicts, std::uint64_t seed);

// Synthetic on-grid channel whose every alpha_l / beta_l has exactly `p`
// nonzero entries on consecutive grid bins. Used for controlled (p, L) sweeps.
ChannelRealization draw_block_sparse_channel(int p, int num_clusters, const DictionaryPair &dicts, std::uint64_t seed,
                                             double gain_variance = 1.0);

struct SparsityProfile {
    int p = 0;
    int nnz_rows = 0;
    int nnz_cols = 0;
    int nnz_total = 0;
};

inline constexpr double kSupportThreshold = 1e-8;

SparsityProfile measure_sparsity(const CMatrix &hv, std::span<const CVector> aoa_coefficients,
                                 std::span<const CVector> aod_coefficients, double threshold = kSupportThreshold);

// Throws std::invalid_argument for off-grid realizations (no hv_truth).
SparsityProfile measure_sparsity(const ChannelRealization &ch, double threshold = kSupportThreshold);

// Number of singular values above rel_cutoff * sigma_max.
int numerical_rank(const CMatrix &m, double rel_cutoff = 1e-8);

} // namespace mmcs::channel

#endif
