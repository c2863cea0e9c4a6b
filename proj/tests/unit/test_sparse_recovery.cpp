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

#include "mmcs/prox.hpp"
#include "mmcs/sparse_recovery.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

using namespace mmcs;
using namespace mmcs::solvers;

namespace {

std::vector<int> support_of(const CMatrix &x, double rel = 1e-6)
{
    const double m = x.cwiseAbs().maxCoeff();
    std::vector<int> s;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (std::abs(x(i)) > rel * m)
            s.push_back(static_cast<int>(i));
    return s;
}

// Least-squares search over every two-column support.
std::vector<int> l0_search(const CMatrix &a, const CVector &y)
{
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> arg;
    for (int i = 0; i < a.cols(); ++i)
        for (int j = i + 1; j < a.cols(); ++j) {
            CMatrix sub(a.rows(), 2);
            sub << a.col(i), a.col(j);
            const CVector c = sub.colPivHouseholderQr().solve(y);
            const double r = (sub * c - y).norm();
            if (r < best) {
                best = r;
                arg = {i, j};
            }
        }
    return arg;
}

} // namespace

TEST(Fista, IdentityDecouples)
{
    const IdentityOperator op({2, 1});
    CMatrix y(2, 1);
    y << 3.0, 0.5;
    const auto r = fista_l1(op, y, 1.0);
    EXPECT_NEAR(std::abs(r.estimate(0) - cdouble(2.0)), 0.0, 1e-6);
    EXPECT_NEAR(std::abs(r.estimate(1)), 0.0, 1e-12);
    EXPECT_TRUE(r.report.converged);
}

TEST(Fista, ZeroMeasurementsGiveZero)
{
    Rng rng(1);
    const MatrixOperator op(complex_gaussian_matrix(5, 9, rng));
    const auto r = fista_l1(op, CMatrix::Zero(5, 1), 0.1);
    EXPECT_EQ(r.estimate, CMatrix::Zero(9, 1));
    const auto c = fista_l1_continuation(op, CMatrix::Zero(5, 1));
    EXPECT_EQ(c.estimate, CMatrix::Zero(9, 1));
}

TEST(Fista, RejectsBadInput)
{
    const IdentityOperator op({2, 1});
    EXPECT_THROW(fista_l1(op, CMatrix::Ones(2, 1), 0.0), std::invalid_argument);
    EXPECT_THROW(fista_l1(op, CMatrix::Ones(3, 1), 1.0), std::invalid_argument);
}

TEST(Fista, ObjectiveBelowZeroInitializer)
{
    Rng rng(2);
    for (int k = 0; k < 10; ++k) {
        const MatrixOperator op(complex_gaussian_matrix(12, 30, rng));
        const CMatrix y = complex_gaussian_matrix(12, 1, rng);
        const double lambda = 0.1 * (k + 1);
        const auto r = fista_l1(op, y, lambda);
        EXPECT_LE(lasso_objective(op, y, r.estimate, lambda),
                  lasso_objective(op, y, CMatrix::Zero(30, 1), lambda) + 1e-12);
    }
}

TEST(Fista, ContinuationMatchesL0Search)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        const CMatrix a = complex_gaussian_matrix(8, 16, rng, 1.0 / 8);
        CVector x = CVector::Zero(16);
        std::uniform_int_distribution<int> pick(0, 15);
        const int i = pick(rng);
        int j = pick(rng);
        while (j == i)
            j = pick(rng);
        x(i) = complex_gaussian(rng, 1.0);
        x(j) = complex_gaussian(rng, 1.0);
        const CVector y = a * x;

        const MatrixOperator op(a);
        const auto r = fista_l1_continuation(op, y);
        const auto oracle = l0_search(a, y);
        EXPECT_EQ(support_of(r.estimate), oracle) << "seed " << seed;
    }
}

TEST(Fista, ContinuationReachesResidualTarget)
{
    Rng rng(5);
    const CMatrix a = complex_gaussian_matrix(30, 60, rng, 1.0 / 30);
    CVector x = CVector::Zero(60);
    x(3) = 1.0;
    x(17) = cdouble(0.0, -2.0);
    x(40) = 0.5;
    const auto r = fista_l1_continuation(MatrixOperator(a), a * x);
    EXPECT_TRUE(r.report.converged);
    EXPECT_LE(r.report.final_residual, 1e-8);
    EXPECT_LE((r.estimate - x).norm() / x.norm(), 1e-6);
}

TEST(Lipschitz, Examples)
{
    EXPECT_NEAR(lipschitz_estimate(IdentityOperator({4, 3})), 1.0, 1e-6);

    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    EXPECT_NEAR(lipschitz_estimate(MatrixOperator(d)), 9.0, 1e-4);

    Rng rng(3);
    const CMatrix m = complex_gaussian_matrix(10, 20, rng);
    Eigen::BDCSVD<CMatrix> svd(m);
    const double truth = std::pow(svd.singularValues()(0), 2);
    EXPECT_NEAR(lipschitz_estimate(MatrixOperator(m)) / truth, 1.0, 0.01);
}

TEST(Lipschitz, NeverUnderestimatesByMoreThanFivePercent)
{
    Rng rng(4);
    for (int k = 0; k < 10; ++k) {
        const CMatrix m = complex_gaussian_matrix(12, 12, rng);
        Eigen::BDCSVD<CMatrix> svd(m);
        const double truth = std::pow(svd.singularValues()(0), 2);
        EXPECT_GE(lipschitz_estimate(MatrixOperator(m), 50, k), 0.95 * truth);
    }
}
