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

#include "mmcs/ripcheck.hpp"

#include <gtest/gtest.h>

#include <climits>
#include <cmath>
#include <random>
#include <stdexcept>

using namespace mmcs;
using namespace mmcs::ripcheck;

namespace {

// k = 2 oracle: closed-form eigenvalues of each 2x2 Gram matrix.
double ric2_closed_form(const CMatrix &a)
{
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.cols(); ++i)
        for (Eigen::Index j = i + 1; j < a.cols(); ++j) {
            const double g11 = a.col(i).squaredNorm();
            const double g22 = a.col(j).squaredNorm();
            const double off = std::abs(a.col(i).dot(a.col(j)));
            const double mid = 0.5 * (g11 + g22);
            const double rad = std::sqrt(0.25 * (g11 - g22) * (g11 - g22) + off * off);
            worst = std::max({worst, mid + rad - 1.0, 1.0 - (mid - rad)});
        }
    return worst;
}

CMatrix sparse_phi(int rows, int cols, int max_rows, int max_cols, std::mt19937_64 &rng)
{
    std::uniform_int_distribution<int> nr(0, max_rows), nc(0, max_cols);
    std::vector<int> r(rows), c(cols);
    std::iota(r.begin(), r.end(), 0);
    std::iota(c.begin(), c.end(), 0);
    std::shuffle(r.begin(), r.end(), rng);
    std::shuffle(c.begin(), c.end(), rng);
    const int kr = nr(rng), kc = nc(rng);
    std::normal_distribution<double> g;
    CMatrix phi = CMatrix::Zero(rows, cols);
    for (int i = 0; i < kr; ++i)
        for (int j = 0; j < kc; ++j)
            phi(r[i], c[j]) = {g(rng), g(rng)};
    return phi;
}

} // namespace

TEST(Ric, MatchesClosedFormForPairs)
{
    const CMatrix a = gaussian_matrix(20, 40, Ensemble::ComplexGaussian, 3);
    const auto est = empirical_ric(a, 2);
    EXPECT_NEAR(est.delta, ric2_closed_form(a), 1e-10);
    EXPECT_EQ(est.supports_checked, 780);
    ASSERT_EQ(est.extremal_support.size(), 2u);
    EXPECT_NEAR(support_defect(a, est.extremal_support), est.delta, 1e-15);
}

TEST(Ric, IdentityAndDuplicatedColumn)
{
    const CMatrix eye = CMatrix::Identity(8, 8);
    EXPECT_NEAR(empirical_ric(eye, 3).delta, 0.0, 1e-14);
    CMatrix dup = eye;
    dup.col(5) = dup.col(2);
    EXPECT_NEAR(empirical_ric(dup, 2).delta, 1.0, 1e-12);
}

TEST(Ric, MonotoneInK)
{
    const CMatrix a = gaussian_matrix(12, 16, Ensemble::RealGaussian, 4);
    double prev = 0.0;
    for (int k = 1; k <= 4; ++k) {
        const double d = empirical_ric(a, k).delta;
        EXPECT_GE(d, prev - 1e-12) << "k=" << k;
        prev = d;
    }
}

TEST(Ric, SampledIsLowerBound)
{
    const CMatrix a = gaussian_matrix(10, 20, Ensemble::ComplexGaussian, 5);
    const double exact = empirical_ric(a, 3).delta;
    const auto sampled = empirical_ric(a, 3, Sampled{200, 1});
    EXPECT_LE(sampled.delta, exact + 1e-12);
    EXPECT_EQ(sampled.supports_checked, 200);
}

TEST(Ric, RejectsOversizedScanAndBadK)
{
    const CMatrix a = gaussian_matrix(4, 64, Ensemble::RealGaussian, 6);
    EXPECT_THROW(empirical_ric(a, 8), std::invalid_argument);
    EXPECT_THROW(empirical_ric(a, 0), std::invalid_argument);
    EXPECT_THROW(empirical_ric(a, 65), std::invalid_argument);
}

TEST(Ric, GaussianColumnsHaveExpectedEnergy)
{
    const CMatrix a = gaussian_matrix(64, 400, Ensemble::ComplexGaussian, 7);
    EXPECT_NEAR(a.squaredNorm() / 400.0, 1.0, 0.03);
    const CMatrix r = gaussian_matrix(64, 400, Ensemble::RealGaussian, 7);
    EXPECT_EQ(r.imag().norm(), 0.0);
    EXPECT_NEAR(r.squaredNorm() / 400.0, 1.0, 0.03);
}

TEST(Binomial, Values)
{
    EXPECT_EQ(binomial(32, 4), 35960);
    EXPECT_EQ(binomial(5, 0), 1);
    EXPECT_EQ(binomial(5, 6), 0);
    EXPECT_EQ(binomial(40, 20), 137846528820L);
    EXPECT_EQ(binomial(200, 100), LONG_MAX);
}

TEST(ExactRecoveryCondition, Threshold)
{
    EXPECT_NEAR(lemma1_threshold(), 1.0 + std::sqrt(2.0) * (1.0 - std::sqrt(1.0 + std::sqrt(2.0))), 1e-15);
    EXPECT_NEAR(lemma1_threshold(), 0.216845, 1e-6);
    EXPECT_TRUE(lemma1_condition(0.0));
    EXPECT_TRUE(lemma1_condition(0.21));
    EXPECT_TRUE(lemma1_condition(0.216));
    EXPECT_FALSE(lemma1_condition(0.217));
    EXPECT_FALSE(lemma1_condition(lemma1_threshold()));
    EXPECT_THROW(lemma1_condition(-0.1), std::invalid_argument);
}

TEST(Sandwich, IdentityDictionariesAreIsometric)
{
    std::mt19937_64 rng(1);
    const CMatrix eye = CMatrix::Identity(6, 6);
    const auto r = sandwich_check(eye, eye, sparse_phi(6, 6, 4, 4, rng), 0.0, 2);
    EXPECT_TRUE(r.holds);
}

TEST(Sandwich, ZeroPhiHolds)
{
    const CMatrix a = gaussian_matrix(8, 12, Ensemble::ComplexGaussian, 1);
    const auto r = sandwich_check(a, a, CMatrix::Zero(12, 12), 0.5, 1);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.nonzero_rows, 0);
}

TEST(Sandwich, RandomPhiWithinBounds)
{
    const CMatrix a = gaussian_matrix(12, 16, Ensemble::ComplexGaussian, 11);
    const CMatrix b = gaussian_matrix(12, 16, Ensemble::ComplexGaussian, 12);
    const double delta = std::max(empirical_ric(a, 4).delta, empirical_ric(b, 4).delta);
    std::mt19937_64 rng(13);
    for (int t = 0; t < 1000; ++t) {
        const auto r = sandwich_check(a, b, sparse_phi(16, 16, 4, 4, rng), delta, 2);
        ASSERT_TRUE(r.holds) << "t=" << t << " ratio=" << r.ratio;
    }
}

TEST(Sandwich, LowerBoundClampedAtZero)
{
    const CMatrix a = gaussian_matrix(4, 8, Ensemble::RealGaussian, 1);
    CMatrix phi = CMatrix::Zero(8, 8);
    phi(0, 0) = 1.0;
    const auto r = sandwich_check(a, a, phi, 1.5, 1);
    EXPECT_EQ(r.lower_bound, 0.0);
    EXPECT_NEAR(r.upper_bound, 6.25, 1e-15);
}

TEST(Sandwich, RejectsBudgetAndShape)
{
    const CMatrix a = gaussian_matrix(6, 8, Ensemble::RealGaussian, 2);
    const CMatrix dense = CMatrix::Ones(8, 8);
    EXPECT_THROW(sandwich_check(a, a, dense, 0.1, 2), std::invalid_argument);
    EXPECT_THROW(sandwich_check(a, a, CMatrix::Zero(7, 8), 0.1, 2), std::invalid_argument);
    EXPECT_THROW(sandwich_check(a, a, CMatrix::Zero(8, 8), -0.1, 2), std::invalid_argument);
}
