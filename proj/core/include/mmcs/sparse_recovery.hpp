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

#ifndef MMCS_SPARSE_RECOVERY_HPP
#define MMCS_SPARSE_RECOVERY_HPP

#include "mmcs/operators.hpp"
#include "mmcs/solver_report.hpp"
#include "mmcs/types.hpp"

#include <cstdint>
#include <optional>

namespace mmcs::solvers {

// Power-iteration estimate of the largest eigenvalue of A^H A.
double lipschitz_estimate(const LinearOperator &op, int iters = 100, std::uint64_t seed = 0);

struct FistaOptions {
    int max_iter = 5000;
    // Stop once the gradient-map norm falls below tol * ||A^H y||_F.
    double tol = 1e-6;
    std::optional<double> step;  // default 1 / (lipschitz_safety * lipschitz_estimate)
    double lipschitz_safety = 1.05;
    int power_iters = 100;
    std::uint64_t seed = 0;
    std::optional<CMatrix> warm_start;
    bool check_adjoint = true;
    bool adaptive_restart = true;
};

struct SparseResult {
    CMatrix estimate;
    SolverReport report;
    double step = 0.0;
};

// Accelerated proximal gradient on 0.5 ||y - A x||^2 + lambda ||x||_1.
// Throws std::invalid_argument when the operator fails the adjoint test.
SparseResult fista_l1(const LinearOperator &op, const CMatrix &y, double lambda, const FistaOptions &opts = {});

double lasso_objective(const LinearOperator &op, const CMatrix &y, const CMatrix &x, double lambda);

// Decreasing-lambda LASSO path that approaches the basis-pursuit solution.
// Starts at start_factor * ||A^H y||_inf, shrinks by `factor` per stage and
// stops once ||A x - y|| <= residual_tol * ||y|| (or lambda drops below
// min_ratio * lambda_0). Each stage is solved inexactly: it ends once the
// gradient-map norm falls below stage_accuracy * lambda, floored at
// 1e-4 * tol * ||A^H y||.
struct LassoContinuation {
    double start_factor = 0.9;
    double factor = 0.2;
    double residual_tol = 1e-8;
    double min_ratio = 1e-14;
    int max_stages = 40;
    double stage_accuracy = 0.01;
};

SparseResult fista_l1_continuation(const LinearOperator &op, const CMatrix &y, const LassoContinuation &path = {},
                                   const FistaOptions &opts = {});

} // namespace mmcs::solvers

#endif
