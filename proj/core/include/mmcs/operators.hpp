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

#ifndef MMCS_OPERATORS_HPP
#define MMCS_OPERATORS_HPP

#include "mmcs/sounding.hpp"
#include "mmcs/types.hpp"

#include <cstdint>
#include <vector>

namespace mmcs::solvers {

struct Shape {
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    friend bool operator==(const Shape &, const Shape &) = default;
};

// Linear map between complex matrix spaces together with its adjoint.
// Vectors are represented as single-column matrices.
class LinearOperator {
public:
    virtual ~LinearOperator() = default;

    virtual Shape in_shape() const = 0;
    virtual Shape out_shape() const = 0;
    virtual CMatrix apply(const CMatrix &x) const = 0;
    virtual CMatrix adjoint(const CMatrix &w) const = 0;
};

class IdentityOperator final : public LinearOperator {
public:
    explicit IdentityOperator(Shape shape) : shape_(shape) {}

    Shape in_shape() const override { return shape_; }
    Shape out_shape() const override { return shape_; }
    CMatrix apply(const CMatrix &x) const override { return x; }
    CMatrix adjoint(const CMatrix &w) const override { return w; }

private:
    Shape shape_;
};

// x (n x 1) -> M x
class MatrixOperator final : public LinearOperator {
public:
    explicit MatrixOperator(CMatrix m) : m_(std::move(m)) {}

    Shape in_shape() const override { return {m_.cols(), 1}; }
    Shape out_shape() const override { return {m_.rows(), 1}; }
    CMatrix apply(const CMatrix &x) const override { return m_ * x; }
    CMatrix adjoint(const CMatrix &w) const override { return m_.adjoint() * w; }

    const CMatrix &matrix() const { return m_; }

private:
    CMatrix m_;
};

// X -> A X B, adjoint W -> A^H W B^H.
class BilinearOperator final : public LinearOperator {
public:
    BilinearOperator(CMatrix left, CMatrix right);

    Shape in_shape() const override { return {a_.cols(), b_.rows()}; }
    Shape out_shape() const override { return {a_.rows(), b_.cols()}; }
    CMatrix apply(const CMatrix &x) const override;
    CMatrix adjoint(const CMatrix &w) const override;

    const CMatrix &left() const { return a_; }
    const CMatrix &right() const { return b_; }

private:
    CMatrix a_;
    CMatrix b_;
    CMatrix a_adj_;
    CMatrix b_adj_;
};

// X -> [(A X B)(i_t, j_t)]_t as a T x 1 column; the adjoint scatters onto the
// sampled entries and maps back through A^H (.) B^H.
class SampledBilinearOperator final : public LinearOperator {
public:
    SampledBilinearOperator(CMatrix left, CMatrix right, std::vector<sounding::Entry> omega);

    Shape in_shape() const override { return {a_.cols(), b_.rows()}; }
    Shape out_shape() const override { return {static_cast<Eigen::Index>(omega_.size()), 1}; }
    CMatrix apply(const CMatrix &x) const override;
    CMatrix adjoint(const CMatrix &w) const override;

private:
    CMatrix a_;
    CMatrix b_;
    CMatrix a_adj_;
    CMatrix b_adj_;
    std::vector<sounding::Entry> omega_;
};

// Largest relative inner-product mismatch |<Ax, w> - <x, A^H w>| / (||Ax|| ||w||)
// over `probes` random Gaussian pairs.
double adjoint_mismatch(const LinearOperator &op, int probes = 20, std::uint64_t seed = 0);

inline constexpr double kAdjointTolerance = 1e-10;

// Largest relative error between Re<grad f(x), d> with grad f = A^H (A x - y)
// and the central difference of f(x) = 0.5 ||y - A x||^2 along random d.
double gradient_check(const LinearOperator &op, const CMatrix &y, int points = 10, std::uint64_t seed = 0,
                      double step = 1e-4);

} // namespace mmcs::solvers

#endif
