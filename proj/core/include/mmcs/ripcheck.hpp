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

#ifndef MMCS_RIPCHECK_HPP
#define MMCS_RIPCHECK_HPP

#include "mmcs/types.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace mmcs::ripcheck {

struct Exhaustive {};
struct Sampled {
    long trials = 10000;
    std::uint64_t seed = 0;
};
using RicMode = std::variant<Exhaustive, Sampled>;

inline constexpr long kMaxExhaustiveSupports = 1'000'000;

struct RicEstimate {
    int k = 0;
    double delta = 0.0;
    std::vector<int> extremal_support;
    long supports_checked = 0;
};

// Restricted isometry constant over k-column supports:
// max_S max(lambda_max(A_S^H A_S) - 1, 1 - lambda_min(A_S^H A_S)).
// Exhaustive mode is exact (rejects more than 1e6 supports); sampled mode
// returns a lower bound.
RicEstimate empirical_ric(const CMatrix &a, int k, const RicMode &mode = Exhaustive{});

// Isometry defect of one support, as used by empirical_ric.
double support_defect(const CMatrix &a, const std::vector<int> &support);

// C(n, k), saturating at LONG_MAX.
long binomial(int n, int k);

struct SandwichResult {
    bool holds = false;
    double ratio = 1.0;        // ||A Phi B^H||_F^2 / ||Phi||_F^2
    double lower_bound = 0.0;  // max(1 - delta, 0)^2
    double upper_bound = 0.0;  // (1 + delta)^2
    int nonzero_rows = 0;
    int nonzero_cols = 0;
};

// Two-sided bound for a Phi with at most 2k nonzero rows and columns.
SandwichResult sandwich_check(const CMatrix &a, const CMatrix &b, const CMatrix &phi, double delta, int k);

// Exact-recovery threshold 1 + sqrt(2) (1 - sqrt(1 + sqrt(2))) ~ 0.2158.
double lemma1_threshold();
bool lemma1_condition(double delta);

enum class Ensemble { ComplexGaussian, RealGaussian };

// i.i.d. Gaussian test matrix with entry variance `variance` (default 1/rows).
CMatrix gaussian_matrix(int rows, int cols, Ensemble ensemble, std::uint64_t seed, double variance = 0.0);

} // namespace mmcs::ripcheck

#endif
