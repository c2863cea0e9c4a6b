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

#include <cmath>
#include <stdexcept>

namespace mmcs::solvers {

CMatrix soft_threshold(const CMatrix &x, double tau)
{
    if (tau < 0.0)
        throw std::invalid_argument("soft_threshold: tau must be >= 0");
    CMatrix out(x.rows(), x.cols());
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            const cdouble v = x(i, j);
            const double mag = std::abs(v);
            out(i, j) = mag > tau ? v * ((mag - tau) / mag) : cdouble{};
        }
    }
    return out;
}

Shrunk svd_shrink(const CMatrix &m, double tau)
{
    if (tau < 0.0)
        throw std::invalid_argument("svd_shrink: tau must be >= 0");
    Shrunk out;
    if (m.size() == 0) {
        out.matrix = m;
        return out;
    }
    Eigen::BDCSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector &s = svd.singularValues();
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > tau)
        ++r;
    out.rank = r;
    if (r == 0) {
        out.matrix = CMatrix::Zero(m.rows(), m.cols());
        return out;
    }
    const RVector shrunk = (s.head(r).array() - tau).matrix();
    out.matrix = svd.matrixU().leftCols(r) * shrunk.asDiagonal() * svd.matrixV().leftCols(r).adjoint();
    return out;
}

double nuclear_norm(const CMatrix &m)
{
    if (m.size() == 0)
        return 0.0;
    return Eigen::BDCSVD<CMatrix>(m).singularValues().sum();
}

double spectral_norm(const CMatrix &m)
{
    if (m.size() == 0)
        return 0.0;
    return Eigen::BDCSVD<CMatrix>(m).singularValues()(0);
}

} // namespace mmcs::solvers
