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

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <climits>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace mmcs::ripcheck {

long binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    long double r = 1.0L;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > static_cast<long double>(LONG_MAX))
            return LONG_MAX;
    }
    return static_cast<long>(std::llround(r));
}

double support_defect(const CMatrix &a, const std::vector<int> &support)
{
    const auto k = static_cast<Eigen::Index>(support.size());
    CMatrix sub(a.rows(), k);
    for (Eigen::Index i = 0; i < k; ++i)
        sub.col(i) = a.col(support[static_cast<std::size_t>(i)]);
    const CMatrix gram = sub.adjoint() * sub;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, Eigen::EigenvaluesOnly);
    const RVector &ev = eig.eigenvalues();
    return std::max(ev(k - 1) - 1.0, 1.0 - ev(0));
}

namespace {

// Advances `s` to the next k-combination of {0..n-1} in lexicographic order.
bool next_combination(std::vector<int> &s, int n)
{
    const int k = static_cast<int>(s.size());
    int i = k - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == n - k + i)
        --i;
    if (i < 0)
        return false;
    ++s[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
        s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
    return true;
}

} // namespace

RicEstimate empirical_ric(const CMatrix &a, int k, const RicMode &mode)
{
    const int n = static_cast<int>(a.cols());
    if (k < 1 || k > n)
        throw std::invalid_argument("empirical_ric: k must lie in [1, cols]");
    RicEstimate est;
    est.k = k;
    est.delta = -1.0;

    if (std::holds_alternative<Exhaustive>(mode)) {
        const long count = binomial(n, k);
        if (count > kMaxExhaustiveSupports)
            throw std::invalid_argument("empirical_ric: exhaustive scan over " + std::to_string(count) +
                                        " supports exceeds the limit of " + std::to_string(kMaxExhaustiveSupports));
        std::vector<int> s(static_cast<std::size_t>(k));
        std::iota(s.begin(), s.end(), 0);
        do {
            const double d = support_defect(a, s);
            ++est.supports_checked;
            if (d > est.delta) {
                est.delta = d;
                est.extremal_support = s;
            }
        } while (next_combination(s, n));
    } else {
        const auto &sm = std::get<Sampled>(mode);
        if (sm.trials < 1)
            throw std::invalid_argument("empirical_ric: sampled mode needs at least one trial");
        Rng rng(sm.seed);
        std::vector<int> pool(static_cast<std::size_t>(n));
        std::iota(pool.begin(), pool.end(), 0);
        for (long t = 0; t < sm.trials; ++t) {
            for (int i = 0; i < k; ++i) {
                std::uniform_int_distribution<int> pick(i, n - 1);
                std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick(rng))]);
            }
            std::vector<int> s(pool.begin(), pool.begin() + k);
            std::sort(s.begin(), s.end());
            const double d = support_defect(a, s);
            ++est.supports_checked;
            if (d > est.delta) {
                est.delta = d;
                est.extremal_support = std::move(s);
            }
        }
    }
    est.delta = std::max(est.delta, 0.0);
    return est;
}

SandwichResult sandwich_check(const CMatrix &a, const CMatrix &b, const CMatrix &phi, double delta, int k)
{
    if (delta < 0.0)
        throw std::invalid_argument("sandwich_check: delta must be >= 0");
    if (phi.rows() != a.cols() || phi.cols() != b.cols())
        throw std::invalid_argument("sandwich_check: Phi must be A.cols() x B.cols()");

    SandwichResult r;
    const auto nz = (phi.cwiseAbs().array() > 0.0).eval();
    r.nonzero_rows = static_cast<int>(nz.rowwise().any().count());
    r.nonzero_cols = static_cast<int>(nz.colwise().any().count());
    if (r.nonzero_rows > 2 * k || r.nonzero_cols > 2 * k)
        throw std::invalid_argument("sandwich_check: Phi exceeds the 2k nonzero row/column budget");

    r.lower_bound = std::pow(std::max(1.0 - delta, 0.0), 2);
    r.upper_bound = std::pow(1.0 + delta, 2);
    const double phi_energy = phi.squaredNorm();
    if (phi_energy == 0.0) {
        r.ratio = 1.0;
        r.holds = true;
        return r;
    }
    r.ratio = (a * phi * b.adjoint()).squaredNorm() / phi_energy;
    constexpr double slack = 1e-12;
    r.holds = r.ratio >= r.lower_bound * (1.0 - slack) && r.ratio <= r.upper_bound * (1.0 + slack);
    return r;
}

double lemma1_threshold()
{
    return 1.0 + std::sqrt(2.0) * (1.0 - std::sqrt(1.0 + std::sqrt(2.0)));
}

bool lemma1_condition(double delta)
{
    if (delta < 0.0)
        throw std::invalid_argument("lemma1_condition: delta must be >= 0");
    return delta < lemma1_threshold();
}

CMatrix gaussian_matrix(int rows, int cols, Ensemble ensemble, std::uint64_t seed, double variance)
{
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("gaussian_matrix: dimensions must be >= 1");
    const double var = variance > 0.0 ? variance : 1.0 / rows;
    Rng rng(seed);
    if (ensemble == Ensemble::ComplexGaussian)
        return complex_gaussian_matrix(rows, cols, rng, var);
    std::normal_distribution<double> nd(0.0, std::sqrt(var));
    CMatrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i)
            m(i, j) = nd(rng);
    return m;
}

} // namespace mmcs::ripcheck
