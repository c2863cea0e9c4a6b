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

#include "mmcs/array_geometry.hpp"
#include "mmcs/sounding.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <stdexcept>

using namespace mmcs;
using namespace mmcs::sounding;

TEST(RcCodebook, ConstantModulus)
{
    const auto cb = gen_rc_codebook(64, 24, 7);
    ASSERT_EQ(cb.antennas(), 64);
    ASSERT_EQ(cb.beams(), 24);
    for (Eigen::Index j = 0; j < 24; ++j) {
        EXPECT_NEAR(cb.matrix.col(j).norm(), 1.0, 1e-12);
        for (Eigen::Index i = 0; i < 64; ++i)
            EXPECT_NEAR(std::abs(cb.matrix(i, j)), 0.125, 1e-14);
    }
}

TEST(RcCodebook, SingleAntenna)
{
    const auto cb = gen_rc_codebook(1, 3, 1);
    for (Eigen::Index j = 0; j < 3; ++j)
        EXPECT_NEAR(std::abs(cb.matrix(0, j)), 1.0, 1e-14);
}

TEST(MbcCodebook, SegmentsAreSteeringVectors)
{
    const auto cb = gen_mbc_codebook(8, 5, 4, 11);
    ASSERT_EQ(cb.matrix.rows(), 8);
    ASSERT_EQ(cb.matrix.cols(), 5);
    for (Eigen::Index j = 0; j < 5; ++j) {
        EXPECT_NEAR(cb.matrix.col(j).norm(), 1.0, 1e-12);
        for (int s = 0; s < 4; ++s) {
            const cdouble a = cb.matrix(2 * s, j);
            const cdouble b = cb.matrix(2 * s + 1, j);
            EXPECT_NEAR(std::abs(a), 1.0 / std::sqrt(8.0), 1e-14);
            // phase ratio exp(j pi sin(angle)) of a half-wavelength segment
            const double sine = std::arg(b / a) / kPi;
            EXPECT_LE(std::abs(sine), 1.0 + 1e-12);
        }
    }
}

TEST(MbcCodebook, SingleSubarrayIsFullSteeringVector)
{
    const auto cb = gen_mbc_codebook(16, 6, 1, 5);
    for (Eigen::Index j = 0; j < 6; ++j) {
        const cdouble ratio = cb.matrix(1, j) / cb.matrix(0, j);
        for (int n = 1; n < 16; ++n)
            EXPECT_NEAR(std::abs(cb.matrix(n, j) / cb.matrix(n - 1, j) - ratio), 0.0, 1e-12);
    }
}

TEST(MbcCodebook, DeterministicAndRejectsNonDivisor)
{
    EXPECT_EQ(gen_mbc_codebook(8, 5, 4, 3).matrix, gen_mbc_codebook(8, 5, 4, 3).matrix);
    EXPECT_NE(gen_mbc_codebook(8, 5, 4, 3).matrix, gen_mbc_codebook(8, 5, 4, 4).matrix);
    EXPECT_THROW(gen_mbc_codebook(10, 5, 4, 3), std::invalid_argument);
}

TEST(SizeCodebooks, Examples)
{
    EXPECT_EQ(size_codebooks(288, 0.5), std::make_pair(24, 24));
    EXPECT_EQ(size_codebooks(1, 1.0), std::make_pair(1, 1));
    EXPECT_EQ(size_codebooks(50, 0.5), std::make_pair(10, 10));
}

TEST(SizeCodebooks, TightWithinOneRow)
{
    for (int t = 1; t <= 800; t += 7)
        for (double r : {0.3, 0.5, 0.8, 1.0}) {
            const auto [nz, nf] = size_codebooks(t, r);
            EXPECT_EQ(nz, nf);
            EXPECT_EQ(nz, static_cast<int>(std::ceil(std::sqrt(t / r) - 1e-12)));
            EXPECT_LE(t, r * nz * nf + nz);
            EXPECT_LE(t, nz * nf);
        }
}

TEST(SampleSupport, ExhaustiveAndDistinct)
{
    const auto all = sample_support(2, 2, 4, 1);
    ASSERT_EQ(all.size(), 4u);
    EXPECT_EQ(all[0], (Entry{0, 0}));
    EXPECT_EQ(all[3], (Entry{1, 1}));

    const auto om = sample_support(24, 24, 288, 2);
    ASSERT_EQ(om.size(), 288u);
    std::set<std::pair<int, int>> seen;
    for (const auto &e : om) {
        EXPECT_GE(e.row, 0);
        EXPECT_LT(e.row, 24);
        EXPECT_GE(e.col, 0);
        EXPECT_LT(e.col, 24);
        seen.insert({e.row, e.col});
    }
    EXPECT_EQ(seen.size(), 288u);
    EXPECT_THROW(sample_support(2, 2, 5, 1), std::invalid_argument);
}

TEST(SampleSupport, UniformCellFrequencies)
{
    const int draws = 100000;
    std::vector<int> counts(16, 0);
    for (int s = 0; s < draws; ++s)
        for (const auto &e : sample_support(4, 4, 8, static_cast<std::uint64_t>(s)))
            ++counts[e.row * 4 + e.col];
    for (int c : counts)
        EXPECT_NEAR(static_cast<double>(c) / draws, 0.5, 0.01);
}

TEST(Observe, NoiselessMatchesPerEntryProducts)
{
    Rng rng(4);
    const CMatrix h = complex_gaussian_matrix(8, 6, rng);
    const auto z = gen_rc_codebook(8, 5, 1);
    const auto f = gen_rc_codebook(6, 4, 2);
    const auto om = sample_support(5, 4, 12, 3);
    const auto obs = observe(h, z, f, om, 0.0, 9);
    obs.validate();
    for (std::size_t t = 0; t < om.size(); ++t) {
        const cdouble direct = (z.matrix.col(om[t].row).adjoint() * h * f.matrix.col(om[t].col))(0, 0);
        EXPECT_NEAR(std::abs(obs.values(static_cast<Eigen::Index>(t)) - direct), 0.0, 1e-12);
    }
}

TEST(Observe, NoiseVarianceCalibrated)
{
    const CMatrix h = CMatrix::Zero(4, 4);
    const auto z = gen_rc_codebook(4, 100, 1);
    const auto f = gen_rc_codebook(4, 100, 2);
    const double sigma = 0.3;
    const auto obs = observe(h, z, f, sample_support(100, 100, 10000, 3), sigma, 4);
    const double var = obs.values.squaredNorm() / obs.size();
    EXPECT_NEAR(var / (sigma * sigma), 1.0, 0.05);
}

TEST(Observe, RankNotIncreased)
{
    Rng rng(8);
    const CMatrix h = complex_gaussian_matrix(16, 2, rng) * complex_gaussian_matrix(2, 16, rng);
    const auto z = gen_rc_codebook(16, 10, 1);
    const auto f = gen_rc_codebook(16, 12, 2);
    const CMatrix y = z.matrix.adjoint() * h * f.matrix;
    Eigen::BDCSVD<CMatrix> svd(y);
    EXPECT_LT(svd.singularValues()(2), 1e-10 * svd.singularValues()(0));
}

TEST(ObservationSet, ScatterGatherAndValidation)
{
    ObservationSet obs;
    obs.rows = 3;
    obs.cols = 2;
    obs.omega = {{0, 1}, {2, 0}};
    obs.values = CVector::Constant(2, cdouble(1.0, 2.0));
    obs.validate();
    const CMatrix m = obs.scatter();
    EXPECT_EQ(m(0, 1), cdouble(1.0, 2.0));
    EXPECT_EQ(m(1, 1), cdouble(0.0, 0.0));
    EXPECT_EQ(obs.gather(m), obs.values);

    obs.omega = {{0, 1}, {0, 1}};
    EXPECT_THROW(obs.validate(), std::invalid_argument);
    obs.omega = {{0, 1}, {3, 0}};
    EXPECT_THROW(obs.validate(), std::invalid_argument);
}

TEST(Snr, ExamplesAndRoundTrip)
{
    const CMatrix h = CMatrix::Ones(4, 8);  // ||H||_F^2 = N_BS N_MS
    EXPECT_NEAR(sigma_from_snr(h, 0.0), 1.0, 1e-14);
    EXPECT_NEAR(sigma_from_snr(h, 20.0), 0.1, 1e-14);
    Rng rng(1);
    const CMatrix g = complex_gaussian_matrix(6, 5, rng);
    for (double snr : {-5.0, 0.0, 12.5, 30.0})
        EXPECT_NEAR(snr_from_sigma(g, sigma_from_snr(g, snr)), snr, 1e-10);
    EXPECT_THROW(sigma_from_snr(CMatrix::Zero(2, 2), 10.0), std::invalid_argument);
}

TEST(Scheme, StringRoundTrip)
{
    EXPECT_EQ(scheme_from_string(to_string(Scheme::RC)), Scheme::RC);
    EXPECT_EQ(scheme_from_string(to_string(Scheme::MBC)), Scheme::MBC);
    EXPECT_THROW(scheme_from_string("XYZ"), std::invalid_argument);
}
