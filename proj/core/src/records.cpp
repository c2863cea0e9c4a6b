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

#include "mmcs/records.hpp"

#include "mmcs/solver_report.hpp"

#include <stdexcept>
#include <string>

namespace mmcs {

namespace solvers {

void to_json(nlohmann::json &j, const SolverReport &r)
{
    j = nlohmann::json{{"solver", r.solver},
                       {"iterations", r.iterations},
                       {"final_residual", r.final_residual},
                       {"objective_trace", r.objective_trace},
                       {"converged", r.converged}};
}

void from_json(const nlohmann::json &j, SolverReport &r)
{
    r.solver = j.value("solver", std::string{});
    r.iterations = j.at("iterations").get<int>();
    r.final_residual = j.at("final_residual").get<double>();
    r.objective_trace = j.value("objective_trace", std::vector<double>{});
    r.converged = j.at("converged").get<bool>();
}

} // namespace solvers

namespace records {

using nlohmann::json;

namespace {

void expect_type(const json &j, const char *type)
{
    if (!j.is_object() || j.value("type", std::string{}) != type)
        throw std::invalid_argument(std::string("record is not of type '") + type + "'");
}

json rays_to_json(const std::vector<channel::RayComponent> &rays)
{
    json arr = json::array();
    for (const auto &r : rays)
        arr.push_back({{"cluster", r.cluster},
                       {"shift", r.shift},
                       {"angle", r.angle},
                       {"gain_re", r.gain.real()},
                       {"gain_im", r.gain.imag()},
                       {"grid_index", r.grid_index}});
    return arr;
}

std::vector<channel::RayComponent> rays_from_json(const json &arr)
{
    std::vector<channel::RayComponent> rays;
    for (const auto &e : arr) {
        channel::RayComponent r;
        r.cluster = e.at("cluster").get<int>();
        r.shift = e.at("shift").get<double>();
        r.angle = e.at("angle").get<double>();
        r.gain = {e.at("gain_re").get<double>(), e.at("gain_im").get<double>()};
        r.grid_index = e.value("grid_index", -1);
        rays.push_back(r);
    }
    return rays;
}

} // namespace

json matrix_to_json(const CMatrix &m)
{
    std::vector<double> re(static_cast<std::size_t>(m.size()));
    std::vector<double> im(static_cast<std::size_t>(m.size()));
    for (Eigen::Index k = 0; k < m.size(); ++k) {
        re[static_cast<std::size_t>(k)] = m(k).real();
        im[static_cast<std::size_t>(k)] = m(k).imag();
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

CMatrix matrix_from_json(const json &j)
{
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (rows < 0 || cols < 0 || re.size() != static_cast<std::size_t>(rows * cols) || im.size() != re.size())
        throw std::invalid_argument("matrix record has inconsistent dimensions");
    CMatrix m(rows, cols);
    for (Eigen::Index k = 0; k < m.size(); ++k)
        m(k) = {re[static_cast<std::size_t>(k)], im[static_cast<std::size_t>(k)]};
    return m;
}

json to_record(const channel::ChannelRealization &ch)
{
    json j{{"type", "channel_realization"},
           {"version", 1},
           {"num_clusters", ch.num_clusters},
           {"p_measured", ch.p_measured},
           {"rank_truth", ch.rank_truth},
           {"h", matrix_to_json(ch.h)},
           {"aoa_rays", rays_to_json(ch.aoa_rays)},
           {"aod_rays", rays_to_json(ch.aod_rays)}};
    if (ch.hv_truth) {
        j["hv_truth"] = matrix_to_json(*ch.hv_truth);
        json a = json::array(), b = json::array();
        for (const auto &v : ch.aoa_coefficients)
            a.push_back(matrix_to_json(v));
        for (const auto &v : ch.aod_coefficients)
            b.push_back(matrix_to_json(v));
        j["aoa_coefficients"] = std::move(a);
        j["aod_coefficients"] = std::move(b);
    }
    return j;
}

channel::ChannelRealization channel_from_record(const json &j)
{
    expect_type(j, "channel_realization");
    channel::ChannelRealization ch;
    ch.num_clusters = j.at("num_clusters").get<int>();
    ch.p_measured = j.at("p_measured").get<int>();
    ch.rank_truth = j.at("rank_truth").get<int>();
    ch.h = matrix_from_json(j.at("h"));
    ch.aoa_rays = rays_from_json(j.at("aoa_rays"));
    ch.aod_rays = rays_from_json(j.at("aod_rays"));
    if (j.contains("hv_truth")) {
        ch.hv_truth = matrix_from_json(j.at("hv_truth"));
        for (const auto &v : j.at("aoa_coefficients"))
            ch.aoa_coefficients.push_back(matrix_from_json(v));
        for (const auto &v : j.at("aod_coefficients"))
            ch.aod_coefficients.push_back(matrix_from_json(v));
    }
    return ch;
}

json to_record(const sounding::Codebook &cb)
{
    return {{"type", "codebook"},
            {"version", 1},
            {"scheme", std::string(sounding::to_string(cb.scheme))},
            {"subarrays", cb.subarrays},
            {"matrix", matrix_to_json(cb.matrix)}};
}

sounding::Codebook codebook_from_record(const json &j)
{
    expect_type(j, "codebook");
    sounding::Codebook cb;
    cb.scheme = sounding::scheme_from_string(j.at("scheme").get<std::string>());
    cb.subarrays = j.at("subarrays").get<int>();
    cb.matrix = matrix_from_json(j.at("matrix"));
    return cb;
}

json to_record(const sounding::ObservationSet &obs)
{
    json omega = json::array();
    for (const auto &e : obs.omega)
        omega.push_back({e.row, e.col});
    return {{"type", "observation_set"},
            {"version", 1},
            {"rows", obs.rows},
            {"cols", obs.cols},
            {"sigma", obs.sigma},
            {"omega", std::move(omega)},
            {"values", matrix_to_json(obs.values)}};
}

sounding::ObservationSet observations_from_record(const json &j)
{
    expect_type(j, "observation_set");
    sounding::ObservationSet obs;
    obs.rows = j.at("rows").get<int>();
    obs.cols = j.at("cols").get<int>();
    obs.sigma = j.at("sigma").get<double>();
    for (const auto &e : j.at("omega"))
        obs.omega.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    obs.values = matrix_from_json(j.at("values"));
    obs.validate();
    return obs;
}

} // namespace records
} // namespace mmcs
