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

#ifndef MMCS_COMPLETION_HPP
#define MMCS_COMPLETION_HPP

#include "mmcs/solver_report.hpp"
#include "mmcs/sounding.hpp"
#include "mmcs/types.hpp"

#include <optional>

namespace mmcs::solvers {

struct CompletionResult {
    CMatrix estimate;
    SolverReport report;
};

// Singular value thresholding for noiseless completion.
//
// Observations are rescaled to unit RMS before iterating and the estimate is
// scaled back, so `tau` is expressed for unit-scale data.
// The default iteration is Nesterov-accelerated dual ascent with gradient
// restart (tau = 100 max(N_Z, N_F), step = 1). With accelerate = false the
// classic recursion runs with tau = 5 max(N_Z, N_F) and
// step = min(1.2 N_Z N_F / T, 1.9).
struct SvtOptions {
    std::optional<double> tau;
    std::optional<double> step;
    int max_iter = 20000;
    double tol = 1e-7;
    bool accelerate = true;
};

CompletionResult svt_complete(const sounding::ObservationSet &obs, const SvtOptions &opts = {});

// Geometric lambda continuation: lambda_0 = start_factor * lambda_max, then
// lambda_k = lambda_0 * factor^k for `stages` stages, followed by the final
// stage at lambda_final. Stages at or below lambda_final are skipped.
struct ContinuationSchedule {
    double start_factor = 0.9;
    double factor = 0.25;
    int stages = 4;
};

// Fixed point continuation on ||P_Omega(X) - y||_F^2 + lambda ||X||_*.
struct FpcOptions {
    double lambda_final = 0.0;
    ContinuationSchedule schedule;
    int max_iter = 500;  // per continuation stage
    double tol = 1e-6;   // relative iterate change
    std::optional<CMatrix> warm_start;
    bool use_schedule = true;
};

// Smallest lambda for which X = 0 minimises the FPC objective: 2 ||P_Omega(y)||_2.
double fpc_lambda_max(const sounding::ObservationSet &obs);

double fpc_objective(const sounding::ObservationSet &obs, const CMatrix &x, double lambda);

CompletionResult fpc_complete(const sounding::ObservationSet &obs, const FpcOptions &opts);

// ||P_Omega(X) - y|| / ||y|| (absolute when y = 0).
double observed_residual(const sounding::ObservationSet &obs, const CMatrix &x);

} // namespace mmcs::solvers

#endif
