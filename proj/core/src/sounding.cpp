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

#include "mmcs/sounding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mmcs::sounding {

std::string_view to_string(Scheme s)
{
    return s == Scheme::RC ? "RC" : "MBC";
}

Scheme scheme_from_string(std::string_view s)
{
    if (s == "RC" || s == "rc")
        return Scheme::RC;
    if (s == "MBC" || s == "mbc")
        return Scheme::MBC;
    throw std::invalid_argument("unknown codebook scheme '" + std::string(s) + "'");
}

Codebook gen_rc_codebook(int num_antennas, int num_beams, std::uint64_t seed)
{
    if (num_antennas < 1 || num_beams < 1)
        throw std::invalid_argument("gen_rc_codebook: dimensions must be >= 1");
    Rng rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    const double modulus = 1.0 / std::sqrt(static_cast<double>(num_antennas));
    Codebook cb;
    cb.scheme = Scheme::RC;
    cb.matrix.resize(num_antennas, num_beams);
    for (int j = 0; j < num_beams; ++j)
        for (int i = 0; i < num_antennas; ++i)
            cb.matrix(i, j) = std::polar(modulus, phase(rng));
    return cb;
}

Codebook gen_mbc_codebook(int num_antennas, int num_beams, int num_subarrays, std::uint64_t seed,
                          double spacing_over_wavelength)
{
    if (num_antennas < 1 || num_beams < 1)
        throw std::invalid_argument("gen_mbc_codebook: dimensions must be >= 1");
    if (num_subarrays < 1 || num_antennas % num_subarrays != 0)
        throw std::invalid_argument("gen_mbc_codebook: num_subarrays (" + std::to_string(num_subarrays) +
                                    ") must divide num_antennas (" + std::to_string(num_antennas) + ")");
    Rng rng(seed);
    std::uniform_real_distribution<double> sine(-1.0, 1.0);
    const int seg = num_antennas / num_subarrays;
    const double modulus = 1.0 / std::sqrt(static_cast<double>(num_antennas));
    Codebook cb;
    cb.scheme = Scheme::MBC;
    cb.subarrays = num_subarrays;
    cb.matrix.resize(num_antennas, num_beams);
    for (int j = 0; j < num_beams; ++j) {
        for (int s = 0; s < num_subarrays; ++s) {
            const double step = 2.0 * kPi * spacing_over_wavelength * sine(rng);
            for (int k = 0; k < seg; ++k)
                cb.matrix(s * seg + k, j) = std::polar(modulus, step * k);
        }
    }
    return cb;
}

Codebook gen_codebook(Scheme scheme, int num_antennas, int num_beams, std::uint64_t seed, int num_subarrays)
{
    if (scheme == Scheme::RC)
        return gen_rc_codebook(num_antennas, num_beams, seed);
    return gen_mbc_codebook(num_antennas, num_beams, num_subarrays, seed);
}

std::pair<int, int> size_codebooks(int num_samples, double sampling_ratio)
{
    if (num_samples < 1)
        throw std::invalid_argument("size_codebooks: T must be >= 1");
    if (!(sampling_ratio > 0.0) || sampling_ratio > 1.0)
        throw std::invalid_argument("size_codebooks: sampling_ratio must lie in (0, 1]");
    const double target = num_samples / sampling_ratio;
    auto n = static_cast<long>(std::ceil(std::sqrt(target)));
    // guard against sqrt rounding either way
    while (n > 1 && static_cast<double>((n - 1) * (n - 1)) >= target)
        --n;
    while (static_cast<double>(n * n) < target)
        ++n;
    return {static_cast<int>(n), static_cast<int>(n)};
}

std::vector<Entry> sample_support(int rows, int cols, int num_samples, std::uint64_t seed)
{
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("sample_support: dimensions must be >= 1");
    const long total = static_cast<long>(rows) * cols;
    if (num_samples < 0 || num_samples > total)
        throw std::invalid_argument("sample_support: T = " + std::to_string(num_samples) + " exceeds " +
                                    std::to_string(total) + " entries");
    // partial Fisher-Yates over row-major linear indices
    std::vector<long> idx(static_cast<std::size_t>(total));
    std::iota(idx.begin(), idx.end(), 0L);
    Rng rng(seed);
    for (long t = 0; t < num_samples; ++t) {
        std::uniform_int_distribution<long> pick(t, total - 1);
        std::swap(idx[static_cast<std::size_t>(t)], idx[static_cast<std::size_t>(pick(rng))]);
    }
    idx.resize(static_cast<std::size_t>(num_samples));
    std::sort(idx.begin(), idx.end());
    std::vector<Entry> out;
    out.reserve(idx.size());
    for (long k : idx)
        out.push_back({static_cast<int>(k / cols), static_cast<int>(k % cols)});
    return out;
}

void ObservationSet::validate() const
{
    if (values.size() != static_cast<Eigen::Index>(omega.size()))
        throw std::invalid_argument("ObservationSet: values and omega lengths differ");
    if (sigma < 0.0)
        throw std::invalid_argument("ObservationSet: sigma must be >= 0");
    for (const auto &e : omega)
        if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols)
            throw std::invalid_argument("ObservationSet: index out of range");
    auto sorted = omega;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("ObservationSet: duplicate index in omega");
}

CMatrix ObservationSet::scatter(const CVector &v) const
{
    CMatrix m = CMatrix::Zero(rows, cols);
    for (std::size_t t = 0; t < omega.size(); ++t)
        m(omega[t].row, omega[t].col) = v(static_cast<Eigen::Index>(t));
    return m;
}

CVector ObservationSet::gather(const CMatrix &m) const
{
    CVector v(size());
    for (std::size_t t = 0; t < omega.size(); ++t)
        v(static_cast<Eigen::Index>(t)) = m(omega[t].row, omega[t].col);
    return v;
}

ObservationSet observe(const CMatrix &h, const Codebook &z, const Codebook &f, std::vector<Entry> omega,
                       double sigma, std::uint64_t seed)
{
    if (z.antennas() != h.rows() || f.antennas() != h.cols())
        throw std::invalid_argument("observe: codebook antenna counts do not match the channel");
    if (sigma < 0.0)
        throw std::invalid_argument("observe: sigma must be >= 0");

    ObservationSet obs;
    obs.rows = static_cast<int>(z.beams());
    obs.cols = static_cast<int>(f.beams());
    obs.omega = std::move(omega);
    obs.sigma = sigma;

    const CMatrix y = z.matrix.adjoint() * h * f.matrix;
    obs.values = obs.gather(y);
    if (sigma > 0.0) {
        Rng rng(seed);
        for (Eigen::Index t = 0; t < obs.values.size(); ++t)
            obs.values(t) += complex_gaussian(rng, sigma * sigma);
    }
    obs.validate();
    return obs;
}

double sigma_from_snr(const CMatrix &h, double snr_db)
{
    const double energy = h.squaredNorm();
    if (energy == 0.0)
        throw std::invalid_argument("sigma_from_snr: channel is identically zero");
    return std::sqrt(energy / (static_cast<double>(h.rows() * h.cols()) * std::pow(10.0, snr_db / 10.0)));
}

double snr_from_sigma(const CMatrix &h, double sigma)
{
    if (!(sigma > 0.0))
        throw std::invalid_argument("snr_from_sigma: sigma must be > 0");
    return 10.0 * std::log10(h.squaredNorm() / (static_cast<double>(h.rows() * h.cols()) * sigma * sigma));
}

} // namespace mmcs::sounding
