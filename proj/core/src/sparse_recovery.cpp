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

#include "mmcs/sparse_recovery.hpp"

#include "mmcs/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mmcs::solvers {

double lipschitz_estimate(const LinearOperator &op, int iters, std::uint64_t seed)
{
    if (iters < 1)
        throw std::invalid_argument("lipschitz_estimate: iters must be >= 1");
    Rng rng(seed);
    const Shape in = op.in_shape();
    CMatrix v = complex_gaussian_matrix(in.rows, in.cols, rng);
    v /= v.norm();
    double estimate = 0.0;
    for (int k = 0; k < iters; ++k) {
        const CMatrix w = op.adjoint(op.apply(v));
        const double n = w.norm();
        estimate = real_inner(v, w);  // Rayleigh quotient, v has unit norm
        if (n == 0.0)
            return 0.0;
        v = w / n;
    }
    return std::max(estimate, op.apply(v).squaredNorm());
}

double lasso_objective(const LinearOperator &op, const CMatrix &y, const CMatrix &x, double lambda)
{
    return 0.5 * (y - op.apply(x)).squaredNorm() + lambda * l1_norm(x);
}

namespace {

double data_residual(const CMatrix &ax, const CMatrix &y)
{
    const double num = (ax - y).norm();
    const double den = y.norm();
    return den > 0.0 ? num / den : num;
}

} // namespace

SparseResult fista_l1(const LinearOperator &op, const CMatrix &y, double lambda, const FistaOptions &opts)
{
    const Shape in = op.in_shape();
    const Shape out = op.out_shape();
    if (y.rows() != out.rows || y.cols() != out.cols)
        throw std::invalid_argument("fista_l1: measurement shape does not match the operator");
    if (!(lambda > 0.0))
        throw std::invalid_argument("fista_l1: lambda must be > 0");
    if (opts.check_adjoint && adjoint_mismatch(op, 3, opts.seed) > kAdjointTolerance)
        throw std::invalid_argument("fista_l1: operator failed the adjoint consistency test");

    SparseResult res;
    res.report.solver = "fista";

    const CMatrix aty = op.adjoint(y);
    const double scale = aty.norm();
    if (scale == 0.0 && !opts.warm_start) {
        res.estimate = CMatrix::Zero(in.rows, in.cols);
        res.report.converged = true;
        res.report.final_residual = y.norm() > 0.0 ? 1.0 : 0.0;
        return res;
    }

    double step = 0.0;
    if (opts.step) {
        step = *opts.step;
    } else {
        const double lip = lipschitz_estimate(op, opts.power_iters, opts.seed);
        step = lip > 0.0 ? 1.0 / (opts.lipschitz_safety * lip) : 1.0;
    }
    if (!(step > 0.0))
        throw std::invalid_argument("fista_l1: step must be > 0");
    res.step = step;

    CMatrix x = opts.warm_start.value_or(CMatrix::Zero(in.rows, in.cols));
    if (x.rows() != in.rows || x.cols() != in.cols)
        throw std::invalid_argument("fista_l1: warm start has the wrong shape");

    // A(z) is tracked alongside z so every iteration costs one apply and one adjoint.
    CMatrix ax = op.apply(x);
    CMatrix z = x;
    CMatrix az = ax;
    double t = 1.0;

    double best_obj = 0.5 * (y - ax).squaredNorm() + lambda * l1_norm(x);
    CMatrix best = x;
    const double stop = opts.tol * std::max(scale, std::numeric_limits<double>::min());

    for (int k = 1; k <= opts.max_iter; ++k) {
        const CMatrix grad = op.adjoint(az - y);
        CMatrix x_next = soft_threshold(z - step * grad, step * lambda);
        const CMatrix ax_next = op.apply(x_next);
        const double gmap = (z - x_next).norm() / step;

        const double obj = 0.5 * (y - ax_next).squaredNorm() + lambda * l1_norm(x_next);
        res.report.objective_trace.push_back(obj);
        res.report.iterations = k;
        if (obj <= best_obj) {
            best_obj = obj;
            best = x_next;
        }

        const bool restart = opts.adaptive_restart && real_inner(z - x_next, x_next - x) > 0.0;
        if (restart) {
            t = 1.0;
            z = x_next;
            az = ax_next;
        } else {
            const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
            const double beta = (t - 1.0) / t_next;
            z = x_next + beta * (x_next - x);
            az = ax_next + beta * (ax_next - ax);
            t = t_next;
        }
        x = std::move(x_next);
        ax = ax_next;

        if (gmap <= stop) {
            res.report.converged = true;
            break;
        }
    }

    res.estimate = res.report.converged ? x : best;
    res.report.final_residual = data_residual(op.apply(res.estimate), y);
    return res;
}

SparseResult fista_l1_continuation(const LinearOperator &op, const CMatrix &y, const LassoContinuation &path,
                                   const FistaOptions &opts)
{
    if (opts.check_adjoint && adjoint_mismatch(op, 3, opts.seed) > kAdjointTolerance)
        throw std::invalid_argument("fista_l1_continuation: operator failed the adjoint consistency test");

    const Shape in = op.in_shape();
    SparseResult res;
    res.report.solver = "fista-continuation";
    const CMatrix aty = op.adjoint(y);
    const double lambda_max = aty.cwiseAbs().maxCoeff();
    if (lambda_max == 0.0) {
        res.estimate = CMatrix::Zero(in.rows, in.cols);
        res.report.converged = true;
        res.report.final_residual = y.norm() > 0.0 ? 1.0 : 0.0;
        return res;
    }

    FistaOptions stage = opts;
    stage.check_adjoint = false;
    if (!stage.step) {
        const double lip = lipschitz_estimate(op, opts.power_iters, opts.seed);
        stage.step = 1.0 / (opts.lipschitz_safety * lip);
    }
    res.step = *stage.step;

    CMatrix x = opts.warm_start.value_or(CMatrix::Zero(in.rows, in.cols));
    const double aty_norm = aty.norm();
    const double lambda0 = path.start_factor * lambda_max;
    double lambda = lambda0;
    for (int s = 0; s < path.max_stages && lambda >= path.min_ratio * lambda0; ++s, lambda *= path.factor) {
        stage.warm_start = x;
        stage.tol = std::max(opts.tol * 1e-4, path.stage_accuracy * lambda / aty_norm);
        SparseResult r = fista_l1(op, y, lambda, stage);
        x = std::move(r.estimate);
        res.report.iterations += r.report.iterations;
        res.report.objective_trace.push_back(r.report.objective_trace.empty() ? 0.0 : r.report.objective_trace.back());
        res.report.final_residual = r.report.final_residual;
        if (r.report.final_residual <= path.residual_tol) {
            res.report.converged = true;
            break;
        }
    }
    res.estimate = std::move(x);
    return res;
}

} // namespace mmcs::solvers
