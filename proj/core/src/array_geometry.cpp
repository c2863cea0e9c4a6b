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

#include <cmath>
#include <stdexcept>
#include <string>

namespace mmcs::array {

void ArrayConfig::validate() const
{
    if (num_antennas < 1)
        throw std::invalid_argument("ArrayConfig: num_antennas must be >= 1, got " + std::to_string(num_antennas));
    if (!(spacing_over_wavelength > 0.0))
        throw std::invalid_argument("ArrayConfig: spacing_over_wavelength must be > 0");
}

AngleGrid::AngleGrid(int size)
{
    if (size < 1)
        throw std::invalid_argument("AngleGrid: size must be >= 1");
    points_.resize(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i)
        points_[static_cast<std::size_t>(i)] = std::asin(-1.0 + 2.0 * i / size);
}

int AngleGrid::nearest_index(double angle) const
{
    const int n = size();
    if (n == 0)
        throw std::logic_error("AngleGrid: empty grid");
    const double step = 2.0 / n;
    const double pos = (std::sin(angle) + 1.0) / step;
    auto idx = static_cast<long>(std::lround(pos));
    idx %= n;
    if (idx < 0)
        idx += n;
    return static_cast<int>(idx);
}

CVector steering_vector(const ArrayConfig &cfg, double angle)
{
    cfg.validate();
    if (!(std::abs(angle) <= 0.5 * kPi + 1e-12))
        throw std::invalid_argument("steering_vector: angle must lie in [-pi/2, pi/2]");
    const int n = cfg.num_antennas;
    const double phase_step = 2.0 * kPi * cfg.spacing_over_wavelength * std::sin(angle);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    CVector a(n);
    for (int k = 0; k < n; ++k)
        a(k) = std::polar(scale, phase_step * k);
    return a;
}

CMatrix build_dictionary(const ArrayConfig &cfg, const AngleGrid &grid)
{
    cfg.validate();
    CMatrix dict(cfg.num_antennas, grid.size());
    for (int i = 0; i < grid.size(); ++i)
        dict.col(i) = steering_vector(cfg, grid[static_cast<std::size_t>(i)]);
    return dict;
}

} // namespace mmcs::array
