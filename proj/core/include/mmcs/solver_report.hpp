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

#ifndef MMCS_SOLVER_REPORT_HPP
#define MMCS_SOLVER_REPORT_HPP

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace mmcs::solvers {

struct SolverReport {
    std::string solver;
    int iterations = 0;
    double final_residual = 0.0;  // relative data misfit of the returned estimate
    std::vector<double> objective_trace;
    bool converged = false;
};

void to_json(nlohmann::json &j, const SolverReport &r);
void from_json(const nlohmann::json &j, SolverReport &r);

} // namespace mmcs::solvers

#endif
