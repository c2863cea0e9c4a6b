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

#ifndef MMCS_ARRAY_GEOMETRY_HPP
#define MMCS_ARRAY_GEOMETRY_HPP

#include "mmcs/types.hpp"

#include <cstddef>
#include <vector>

namespace mmcs::array {

// Uniform linear array: element count and inter-element spacing in wavelengths.
struct ArrayConfig {
    int num_antennas = 1;
    double spacing_over_wavelength = 0.5;

    void validate() const;
};

// Angles (radians) uniformly spaced in the sine domain over [-1, 1).
//
// With spacing d/lambda = 1/2 and size == num_antennas the resulting
// dictionary is a column-permuted, phase-rotated DFT matrix, hence unitary.
class AngleGrid {
public:
    AngleGrid() = default;
    explicit AngleGrid(int size);

    int size() const { return static_cast<int>(points_.size()); }
    const std::vector<double> &points() const { return points_; }
    double operator[](std::size_t i) const { return points_[i]; }

    // Index of the grid point nearest to `angle`, measured in the sine domain
    // with wrap-around at +/-1.
    int nearest_index(double angle) const;

private:
    std::vector<double> points_;
};

CVector steering_vector(const ArrayConfig &cfg, double angle);

// Columns are steering vectors at the grid angles: num_antennas x grid.size().
CMatrix build_dictionary(const ArrayConfig &cfg, const AngleGrid &grid);

} // namespace mmcs::array

#endif
