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

#include "mmcs/operators.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace mmcs::solvers {

BilinearOperator::BilinearOperator(CMatrix left, CMatrix right)
    : a_(std::move(left)), b_(std::move(right)), a_adj_(a_.adjoint()), b_adj_(b_.adjoint())
{
}

CMatrix BilinearOperator::apply(const CMatrix &x) const
{
    return a_ * (x * b_);
}

CMatrix BilinearOperator::adjoint(const CMatrix &w) const
{
    return a_adj_ * (w * b_adj_);
}

SampledBilinearOperator::SampledBilinearOperator(CMatrix left, CMatrix right, std::vector<sounding::Entry> omega)
    : a_(std::move(left)), b_(std::move(right)), a_adj_(a_.adjoint()), b_adj_(b_.adjoint()), omega_(std::move(omega))
{
    for (const auto &e : omega_)
        if (e.row < 0 || e.row >= a_.rows() || e.col < 0 || e.col >= b_.cols())
            throw std::invalid_argument("SampledBilinearOperator: sample index out of range");
}

CMatrix SampledBilinearOperator::apply(const CMatrix &x) const
{
    const CMatrix full = a_ * (x * b_);
    CMatrix out(static_cast<Eigen::Index>(omega_.size()), 1);
    for (std::size_t t = 0; t < omega_.size(); ++t)
        out(static_cast<Eigen::Index>(t), 0) = full(omega_[t].row, omega_[t].col);
    return out;
}

CMatrix SampledBilinearOperator::adjoint(const CMatrix &w) const
{
    CMatrix s = CMatrix::Zero(a_.rows(), b_.cols());
    for (std::size_t t = 0; t < omega_.size(); ++t)
        s(omega_[t].row, omega_[t].col) += w(static_cast<Eigen::Index>(t), 0);
    return a_adj_ * (s * b_adj_);
}

double adjoint_mismatch(const LinearOperator &op, int probes, std::uint64_t seed)
{
    Rng rng(seed);
    const Shape in = op.in_shape();
    const Shape out = op.out_shape();
    double worst = 0.0;
    for (int k = 0; k < probes; ++k) {
        const CMatrix x = complex_gaussian_matrix(in.rows, in.cols, rng);
        const CMatrix w = complex_gaussian_matrix(out.rows, out.cols, rng);
        const CMatrix ax = op.apply(x);
        const CMatrix ahw = op.adjoint(w);
        if (ax.rows() != out.rows || ax.cols() != out.cols || ahw.rows() != in.rows || ahw.cols() != in.cols)
            return std::numeric_limits<double>::infinity();
        const cdouble lhs = (ax.conjugate().cwiseProduct(w)).sum();
        const cdouble rhs = (x.conjugate().cwiseProduct(ahw)).sum();
        const double scale = std::max(ax.norm() * w.norm(), std::numeric_limits<double>::min());
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return worst;
}

double gradient_check(const LinearOperator &op, const CMatrix &y, int points, std::uint64_t seed, double step)
{
    Rng rng(seed);
    const Shape in = op.in_shape();
    auto f = [&](const CMatrix &x) { return 0.5 * (y - op.apply(x)).squaredNorm(); };
    double worst = 0.0;
    for (int k = 0; k < points; ++k) {
        const CMatrix x = complex_gaussian_matrix(in.rows, in.cols, rng);
        CMatrix d = complex_gaussian_matrix(in.rows, in.cols, rng);
        d /= d.norm();
        const CMatrix grad = op.adjoint(op.apply(x) - y);
        const double analytic = real_inner(grad, d);
        const double numeric = (f(x + step * d) - f(x - step * d)) / (2.0 * step);
        const double scale = std::max({std::abs(analytic), grad.norm() * 1e-3, std::numeric_limits<double>::min()});
        worst = std::max(worst, std::abs(analytic - numeric) / scale);
    }
    return worst;
}

} // namespace mmcs::solvers
