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

#ifndef MMCS_SOUNDING_HPP
#define MMCS_SOUNDING_HPP

#include "mmcs/types.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mmcs::sounding {

enum class Scheme { RC, MBC };

std::string_view to_string(Scheme s);
Scheme scheme_from_string(std::string_view s);

// Analog beamforming (F) or combining (Z) matrix, one unit-norm beam per column.
struct Codebook {
    CMatrix matrix;  // N_ant x N_beams
    Scheme scheme = Scheme::RC;
    int subarrays = 1;

    Eigen::Index antennas() const { return matrix.rows(); }
    Eigen::Index beams() const { return matrix.cols(); }
};

inline constexpr int kDefaultSubarrays = 4;

// Random coding: i.i.d. unit-circle phases scaled by 1/sqrt(N_ant).
Codebook gen_rc_codebook(int num_antennas, int num_beams, std::uint64_t seed);

// Multiple-beam coding: each column concatenates `num_subarrays` steering
// segments pointed at independent sine-uniform directions.
Codebook gen_mbc_codebook(int num_antennas, int num_beams, int num_subarrays, std::uint64_t seed,
                          double spacing_over_wavelength = 0.5);

Codebook gen_codebook(Scheme scheme, int num_antennas, int num_beams, std::uint64_t seed,
                      int num_subarrays = kDefaultSubarrays);

// N_Z = N_F = smallest n with n^2 >= T / sampling_ratio.
std::pair<int, int> size_codebooks(int num_samples, double sampling_ratio);

struct Entry {
    int row = 0;
    int col = 0;
    friend bool operator==(const Entry &, const Entry &) = default;
    friend auto operator<=>(const Entry &, const Entry &) = default;
};

// T distinct entries of an N_Z x N_F matrix, uniform without replacement,
// returned in row-major order.
std::vector<Entry> sample_support(int rows, int cols, int num_samples, std::uint64_t seed);

struct ObservationSet {
    int rows = 0;  // N_Z
    int cols = 0;  // N_F
    std::vector<Entry> omega;
    CVector values;
    double sigma = 0.0;

    Eigen::Index size() const { return static_cast<Eigen::Index>(omega.size()); }
    void validate() const;

    // Observed entries scattered into a zero N_Z x N_F matrix.
    CMatrix scatter() const { return scatter(values); }
    CMatrix scatter(const CVector &v) const;
    CVector gather(const CMatrix &m) const;
};

// values[t] = (Z^H H F)(i_t, j_t) + w_t with w_t ~ CN(0, sigma^2).
ObservationSet observe(const CMatrix &h, const Codebook &z, const Codebook &f, std::vector<Entry> omega,
                       double sigma, std::uint64_t seed);

// SNR = 10 log10(||H||_F^2 / (N_BS N_MS sigma^2)).
double sigma_from_snr(const CMatrix &h, double snr_db);
double snr_from_sigma(const CMatrix &h, double sigma);

} // namespace mmcs::sounding

#endif
