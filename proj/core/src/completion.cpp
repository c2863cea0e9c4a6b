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

#include "mmcs/completion.hpp"

#include "mmcs/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mmcs::solvers {

double observed_residual(const sounding::ObservationSet &obs, const CMatrix &x)
{
    const double num = (obs.gather(x) - obs.values).norm();
    const double den = obs.values.norm();
    return den > 0.0 ? num / den : num;
}

CompletionResult svt_complete(const sounding::ObservationSet &obs, const SvtOptions &opts)
{
    obs.validate();
    CompletionResult out;
    out.report.solver = "svt";
    const auto n_obs = static_cast<double>(obs.size());
    if (obs.size() == 0)
        throw std::invalid_argument("svt_complete: empty observation set");

    const double tau_factor = opts.accelerate ? 100.0 : 5.0;
    const double tau = opts.tau.value_or(tau_factor * std::max(obs.rows, obs.cols));
    const double step =
        opts.step.value_or(opts.accelerate ? 1.0 : std::min(1.2 * obs.rows * obs.cols / n_obs, 1.9));
    if (!(tau > 0.0) || !(step > 0.0))
        throw std::invalid_argument("svt_complete: tau and step must be > 0");

    const double rms = obs.values.norm() / std::sqrt(n_obs);
    if (rms == 0.0) {
        out.estimate = CMatrix::Zero(obs.rows, obs.cols);
        out.report.converged = true;
        return out;
    }
    const CVector b = obs.values / rms;
    const double b_norm = b.norm();

    // kicking: skip the initial iterations during which shrink(Y) = 0
    const double k0 = std::ceil(tau / (step * spectral_norm(obs.scatter(b))));
    CVector dual = std::max(k0, 1.0) * step * b;
    CVector extrapolated = dual;
    double momentum = 1.0;

    CMatrix best = CMatrix::Zero(obs.rows, obs.cols);
    double best_res = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= opts.max_iter; ++k) {
        const CMatrix x = svd_shrink(obs.scatter(extrapolated), tau).matrix;
        const CVector r = b - obs.gather(x);
        const double res = r.norm() / b_norm;
        out.report.objective_trace.push_back(res);
        out.report.iterations = k;
        if (res < best_res) {
            best_res = res;
            best = x;
        }
        if (res <= opts.tol) {
            out.report.converged = true;
            break;
        }
        CVector next = extrapolated + step * r;
        if (opts.accelerate) {
            if (r.dot(next - dual).real() < 0.0)
                momentum = 1.0;
            const double m_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
            extrapolated = next + ((momentum - 1.0) / m_next) * (next - dual);
            momentum = m_next;
        } else {
            extrapolated = next;
        }
        dual = std::move(next);
    }
    out.estimate = rms * best;
    out.report.final_residual = observed_residual(obs, out.estimate);
    return out;
}

double fpc_lambda_max(const sounding::ObservationSet &obs)
{
    return 2.0 * spectral_norm(obs.scatter());
}

double fpc_objective(const sounding::ObservationSet &obs, const CMatrix &x, double lambda)
{
    return (obs.gather(x) - obs.values).squaredNorm() + lambda * nuclear_norm(x);
}

CompletionResult fpc_complete(const sounding::ObservationSet &obs, const FpcOptions &opts)
{
    obs.validate();
    if (opts.lambda_final < 0.0)
        throw std::invalid_argument("fpc_complete: lambda_final must be >= 0");
    CompletionResult out;
    out.report.solver = "fpc";

    std::vector<double> lambdas;
    if (opts.use_schedule) {
        const double lambda0 = opts.schedule.start_factor * fpc_lambda_max(obs);
        double lam = lambda0;
        for (int s = 0; s < opts.schedule.stages; ++s, lam *= opts.schedule.factor)
            if (lam > opts.lambda_final)
                lambdas.push_back(lam);
    }
    lambdas.push_back(opts.lambda_final);

    // Forward-backward on 0.5 ||P(X) - y||^2 + mu ||X||_*, mu = lambda / 2;
    // P is a projection so unit step is admissible.
    const CMatrix target = obs.scatter();
    CMatrix x = opts.warm_start.value_or(CMatrix::Zero(obs.rows, obs.cols));
    if (x.rows() != obs.rows || x.cols() != obs.cols)
        throw std::invalid_argument("fpc_complete: warm start has the wrong shape");

    bool last_converged = false;
    for (double lambda : lambdas) {
        const double mu = lambda / 2.0;
        last_converged = false;
        for (int k = 0; k < opts.max_iter; ++k) {
            CMatrix g = x;
            for (std::size_t t = 0; t < obs.omega.size(); ++t) {
                const auto &e = obs.omega[t];
                g(e.row, e.col) = target(e.row, e.col);
            }
            CMatrix next = svd_shrink(g, mu).matrix;
            const double change = (next - x).norm() / std::max(x.norm(), std::numeric_limits<double>::min());
            x = std::move(next);
            ++out.report.iterations;
            if (change < opts.tol) {
                last_converged = true;
                break;
            }
        }
        out.report.objective_trace.push_back(fpc_objective(obs, x, lambda));
    }
    out.estimate = std::move(x);
    out.report.converged = last_converged;
    out.report.final_residual = observed_residual(obs, out.estimate);
    return out;
}

} // namespace mmcs::solvers
