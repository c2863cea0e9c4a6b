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

#ifndef MMCS_PIPELINES_HPP
#define MMCS_PIPELINES_HPP

#include "mmcs/completion.hpp"
#include "mmcs/operators.hpp"
#include "mmcs/solver_report.hpp"
#include "mmcs/sounding.hpp"
#include "mmcs/sparse_recovery.hpp"
#include "mmcs/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mmcs::pipelines {

enum class Pipeline { TwoStage, DirectCS, FullMC };

std::string_view to_string(Pipeline p);
Pipeline pipeline_from_string(std::string_view s);

struct SolverSettings {
    solvers::SvtOptions svt;
    solvers::ContinuationSchedule fpc_schedule;
    int fpc_max_iter = 500;
    double fpc_tol = 1e-6;
    solvers::FistaOptions fista;
    solvers::LassoContinuation continuation;
    // Noisy-mode tolerances are matched by the attained residual within this
    // relative band.
    double calibration_band = 0.2;
    int calibration_max_solves = 40;
    // Direct-CS lambda override; default 2 sigma sqrt(log(N1 N2)).
    std::optional<double> direct_lambda;
};

struct StageReport {
    std::string stage;
    solvers::SolverReport report;
    double lambda = 0.0;
    double target_residual = 0.0;  // absolute, noisy mode only
    double attained_residual = 0.0;
};

struct EstimateBundle {
    std::optional<CMatrix> hv_hat;
    CMatrix h_hat;
    std::vector<StageReport> stages;
    bool degraded = false;  // some stage failed to converge

    int total_iterations() const;
};

// Stage-2 map X -> (Z^H A_BS) X (A_MS^H F).
solvers::BilinearOperator beamspace_operator(const sounding::Codebook &z, const sounding::Codebook &f,
                                             const CMatrix &dict_bs, const CMatrix &dict_ms);

// Direct-CS map X -> [z_i^H A_BS X A_MS^H f_j]_{(i,j) in Omega}.
solvers::SampledBilinearOperator direct_operator(const sounding::ObservationSet &obs, const sounding::Codebook &z,
                                                 const sounding::Codebook &f, const CMatrix &dict_bs,
                                                 const CMatrix &dict_ms);

// Completion of Y = Z^H H F followed by sparse beamspace recovery.
EstimateBundle two_stage_estimate(const sounding::ObservationSet &obs, const sounding::Codebook &z,
                                  const sounding::Codebook &f, const CMatrix &dict_bs, const CMatrix &dict_ms,
                                  bool noisy, const SolverSettings &settings = {});

EstimateBundle direct_cs_estimate(const sounding::ObservationSet &obs, const sounding::Codebook &z,
                                  const sounding::Codebook &f, const CMatrix &dict_bs, const CMatrix &dict_ms,
                                  bool noisy, const SolverSettings &settings = {});

inline constexpr double kMaxCodebookCondition = 1e8;

// Full-rank completion baseline: needs square, well-conditioned Z and F.
EstimateBundle full_mc_estimate(const sounding::ObservationSet &obs, const sounding::Codebook &z,
                                const sounding::Codebook &f, bool noisy = false,
                                const SolverSettings &settings = {});

// Noisy stage-1 completion whose lambda is tuned so ||P(Y) - y|| ~ sigma sqrt(T).
StageReport robust_completion(const sounding::ObservationSet &obs, const SolverSettings &settings, CMatrix &estimate);

// Beamspace consistency: A_BS Hv A_MS^H.
CMatrix synthesize(const CMatrix &hv, const CMatrix &dict_bs, const CMatrix &dict_ms);

struct TheoryBoundConfig {
    double c1 = 1.0, c2 = 1.0, c3 = 1.0, c4 = 1.0, c5 = 1.0, c6 = 1.0;
    double c_mc = 1.0;
    double c_cs = 1.0;
    double eta = 1.0;

    void validate() const;
};

struct SparsityParams {
    int p = 1;
    int num_clusters = 1;
    // Sizes enter only through logarithms and powers, so they are real-valued.
    double n_bs = 1.0;
    double n_ms = 1.0;
    double n1 = 0.0;  // beamspace grid sizes, default to the array sizes
    double n2 = 0.0;
};

struct SampleRequirements {
    long n_z_min = 0;
    long n_f_min = 0;
    long t_min_two_stage = 0;
    long t_min_direct = 0;
    long t_min_full_mc = 0;
};

// Throws std::domain_error when pL >= min(N_BS, N_MS).
SampleRequirements theorem1_required(const SparsityParams &params, const TheoryBoundConfig &tb = {});

} // namespace mmcs::pipelines

#endif
