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

#ifndef MMCS_PROX_HPP
#define MMCS_PROX_HPP

#include "mmcs/types.hpp"

namespace mmcs::solvers {

// Complex soft threshold: v -> max(|v| - tau, 0) / |v| * v, with 0 -> 0.
CMatrix soft_threshold(const CMatrix &x, double tau);

// L1 norm as the sum of complex moduli.
inline double l1_norm(const CMatrix &x)
{
    return x.cwiseAbs().sum();
}

struct Shrunk {
    CMatrix matrix;
    Eigen::Index rank = 0;  // number of singular values strictly above tau
};

// Singular value shrinkage U diag(max(s - tau, 0)) V^H.
Shrunk svd_shrink(const CMatrix &m, double tau);

double nuclear_norm(const CMatrix &m);
double spectral_norm(const CMatrix &m);

} // namespace mmcs::solvers

#endif
