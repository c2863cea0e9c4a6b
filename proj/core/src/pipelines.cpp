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

#include "mmcs/pipelines.hpp"

#include "mmcs/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mmcs::pipelines {

std::string_view to_string(Pipeline p)
{
    switch (p) {
    case Pipeline::TwoStage:
        return "two-stage";
    case Pipeline::DirectCS:
        return "direct-cs";
    case Pipeline::FullMC:
        return "full-mc";
    }
    return "unknown";
}

Pipeline pipeline_from_string(std::string_view s)
{
    if (s == "two-stage" || s == "two_stage")
        return Pipeline::TwoStage;
    if (s == "direct-cs" || s == "direct_cs")
        return Pipeline::DirectCS;
    if (s == "full-mc" || s == "full_mc")
        return Pipeline::FullMC;
    throw std::invalid_argument("unknown pipeline '" + std::string(s) + "'");
}

int EstimateBundle::total_iterations() const
{
    int n = 0;
    for (const auto &s : stages)
        n += s.report.iterations;
    return n;
}

solvers::BilinearOperator beamspace_operator(const sounding::Codebook &z, const sounding::Codebook &f,
                                             const CMatrix &dict_bs, const CMatrix &dict_ms)
{
    if (z.antennas() != dict_bs.rows() || f.antennas() != dict_ms.rows())
        throw std::invalid_argument("beamspace_operator: codebooks and dictionaries disagree on antenna counts");
    return {z.matrix.adjoint() * dict_bs, dict_ms.adjoint() * f.matrix};
}

solvers::SampledBilinearOperator direct_operator(const sounding::ObservationSet &obs, const sounding::Codebook &z,
                                                 const sounding::Codebook &f, const CMatrix &dict_bs,
                                                 const CMatrix &dict_ms)
{
    if (z.antennas() != dict_bs.rows() || f.antennas() != dict_ms.rows())
        throw std::invalid_argument("direct_operator: codebooks and dictionaries disagree on antenna counts");
    if (z.beams() != obs.rows || f.beams() != obs.cols)
        throw std::invalid_argument("direct_operator: observation grid does not match the codebooks");
    return {z.matrix.adjoint() * dict_bs, dict_ms.adjoint() * f.matrix, obs.omega};
}

CMatrix synthesize(const CMatrix &hv, const CMatrix &dict_bs, const CMatrix &dict_ms)
{
    return dict_bs * hv * dict_ms.adjoint();
}

namespace {

struct Candidate {
    double lambda = 0.0;
    double residual = 0.0;  // absolute
    CMatrix x;
    solvers::SolverReport report;
};

// Picks lambda so the attained residual lies in target * [1 - band, 1 + band].
// The residual is nondecreasing in lambda; descend geometrically from
// lambda_start, then bisect in log-lambda once the band is bracketed.
template <class Solve>
Candidate calibrate(double lambda_start, double target, double band, double factor, int max_solves, int &total_iters,
                    Solve &&solve)
{
    const double lower = (1.0 - band) * target;
    const double upper = (1.0 + band) * target;
    auto in_band = [&](const Candidate &c) { return c.residual >= lower && c.residual <= upper; };
    auto closeness = [&](const Candidate &c) {
        return std::abs(std::log(std::max(c.residual, std::numeric_limits<double>::min()) / target));
    };

    int solves = 0;
    auto run = [&](double lambda, const CMatrix *warm) {
        Candidate c = solve(lambda, warm);
        total_iters += c.report.iterations;
        ++solves;
        return c;
    };

    Candidate cur = run(lambda_start, nullptr);
    Candidate best = cur;
    std::optional<Candidate> hi;  // residual above the band
    std::optional<Candidate> lo;  // residual below the band
    while (!in_band(cur) && solves < max_solves) {
        if (cur.residual > upper) {
            hi = cur;
            if (lo)
                break;
            cur = run(cur.lambda * factor, &cur.x);
        } else {
            lo = cur;
            if (hi)
                break;
            cur = run(cur.lambda / factor, &cur.x);
        }
        if (closeness(cur) < closeness(best))
            best = cur;
    }
    if (in_band(cur))
        return cur;

    while (hi && lo && solves < max_solves) {
        const double mid = std::sqrt(hi->lambda * lo->lambda);
        cur = run(mid, &lo->x);
        if (closeness(cur) < closeness(best))
            best = cur;
        if (in_band(cur))
            return cur;
        if (cur.residual > upper)
            hi = cur;
        else
            lo = cur;
    }
    return best;
}

StageReport stage_from(const std::string &name, const Candidate &c, double target, int iters)
{
    StageReport s;
    s.stage = name;
    s.report = c.report;
    s.report.iterations = iters;
    s.lambda = c.lambda;
    s.target_residual = target;
    s.attained_residual = c.residual;
    return s;
}

void check_inputs(const sounding::ObservationSet &obs, const sounding::Codebook &z, const sounding::Codebook &f)
{
    obs.validate();
    if (z.beams() != obs.rows || f.beams() != obs.cols)
        throw std::invalid_argument("observation grid does not match the codebook sizes");
}

} // namespace

StageReport robust_completion(const sounding::ObservationSet &obs, const SolverSettings &settings, CMatrix &estimate)
{
    const double target = obs.sigma * std::sqrt(static_cast<double>(obs.size()));
    const double y_norm = obs.values.norm();
    if (y_norm <= (1.0 + settings.calibration_band) * target || y_norm == 0.0) {
        estimate = CMatrix::Zero(obs.rows, obs.cols);
        Candidate c{solvers::fpc_lambda_max(obs), y_norm, estimate, {}};
        c.report.solver = "fpc";
        c.report.converged = true;
        c.report.final_residual = y_norm > 0.0 ? 1.0 : 0.0;
        return stage_from("completion", c, target, 0);
    }

    auto solve = [&](double lambda, const CMatrix *warm) {
        solvers::FpcOptions o;
        o.lambda_final = lambda;
        o.use_schedule = warm == nullptr;
        o.schedule = settings.fpc_schedule;
        o.max_iter = settings.fpc_max_iter;
        o.tol = settings.fpc_tol;
        if (warm)
            o.warm_start = *warm;
        auto r = solvers::fpc_complete(obs, o);
        Candidate c;
        c.lambda = lambda;
        c.residual = (obs.gather(r.estimate) - obs.values).norm();
        c.x = std::move(r.estimate);
        c.report = std::move(r.report);
        return c;
    };
    int iters = 0;
    const double start = settings.fpc_schedule.start_factor * solvers::fpc_lambda_max(obs);
    Candidate c = calibrate(start, target, settings.calibration_band, settings.fpc_schedule.factor,
                            settings.calibration_max_solves, iters, solve);
    estimate = c.x;
    return stage_from("completion", c, target, iters);
}

EstimateBundle two_stage_estimate(const sounding::ObservationSet &obs, const sounding::Codebook &z,
                                  const sounding::Codebook &f, const CMatrix &dict_bs, const CMatrix &dict_ms,
                                  bool noisy, const SolverSettings &settings)
{
    check_inputs(obs, z, f);
    const auto op = beamspace_operator(z, f, dict_bs, dict_ms);
    EstimateBundle out;

    // Stage 1: low-rank completion of Y = Z^H H F.
    CMatrix y_hat;
    if (noisy) {
        out.stages.push_back(robust_completion(obs, settings, y_hat));
    } else {
        auto r = solvers::svt_complete(obs, settings.svt);
        y_hat = std::move(r.estimate);
        StageReport s;
        s.stage = "completion";
        s.report = std::move(r.report);
        out.stages.push_back(std::move(s));
    }

    // Stage 2: sparse beamspace recovery against the completed matrix.
    solvers::FistaOptions fopts = settings.fista;
    fopts.check_adjoint = false;
    if (solvers::adjoint_mismatch(op, 3, fopts.seed) > solvers::kAdjointTolerance)
        throw std::invalid_argument("two_stage_estimate: beamspace operator failed the adjoint test");
    if (!fopts.step) {
        const double lip = solvers::lipschitz_estimate(op, fopts.power_iters, fopts.seed);
        fopts.step = lip > 0.0 ? 1.0 / (fopts.lipschitz_safety * lip) : 1.0;
    }

    if (!noisy) {
        auto r = solvers::fista_l1_continuation(op, y_hat, settings.continuation, fopts);
        StageReport s;
        s.stage = "sparse-recovery";
        s.report = std::move(r.report);
        out.stages.push_back(std::move(s));
        out.hv_hat = std::move(r.estimate);
    } else {
        const double target = obs.sigma * std::sqrt(static_cast<double>(obs.rows) * obs.cols);
        const double lambda_max = op.adjoint(y_hat).cwiseAbs().maxCoeff();
        if (lambda_max == 0.0 || y_hat.norm() <= (1.0 + settings.calibration_band) * target) {
            StageReport s;
            s.stage = "sparse-recovery";
            s.report.solver = "fista";
            s.report.converged = true;
            s.target_residual = target;
            s.attained_residual = y_hat.norm();
            out.stages.push_back(std::move(s));
            out.hv_hat = CMatrix::Zero(dict_bs.cols(), dict_ms.cols());
        } else {
            auto solve = [&](double lambda, const CMatrix *warm) {
                solvers::FistaOptions o = fopts;
                if (warm)
                    o.warm_start = *warm;
                auto r = solvers::fista_l1(op, y_hat, lambda, o);
                Candidate c;
                c.lambda = lambda;
                c.residual = (op.apply(r.estimate) - y_hat).norm();
                c.x = std::move(r.estimate);
                c.report = std::move(r.report);
                return c;
            };
            int iters = 0;
            Candidate c = calibrate(settings.continuation.start_factor * lambda_max, target, settings.calibration_band,
                                    settings.continuation.factor, settings.calibration_max_solves, iters, solve);
            out.hv_hat = c.x;
            out.stages.push_back(stage_from("sparse-recovery", c, target, iters));
        }
    }

    out.h_hat = synthesize(*out.hv_hat, dict_bs, dict_ms);
    for (const auto &s : out.stages)
        out.degraded = out.degraded || !s.report.converged;
    return out;
}

EstimateBundle direct_cs_estimate(const sounding::ObservationSet &obs, const sounding::Codebook &z,
                                  const sounding::Codebook &f, const CMatrix &dict_bs, const CMatrix &dict_ms,
                                  bool noisy, const SolverSettings &settings)
{
    check_inputs(obs, z, f);
    const auto op = direct_operator(obs, z, f, dict_bs, dict_ms);
    const CMatrix y = obs.values;  // T x 1

    solvers::FistaOptions fopts = settings.fista;
    EstimateBundle out;
    StageReport s;
    s.stage = "sparse-recovery";
    if (!noisy) {
        auto r = solvers::fista_l1_continuation(op, y, settings.continuation, fopts);
        s.report = std::move(r.report);
        out.hv_hat = std::move(r.estimate);
    } else {
        const double n = static_cast<double>(dict_bs.cols()) * static_cast<double>(dict_ms.cols());
        const double lambda = settings.direct_lambda.value_or(2.0 * obs.sigma * std::sqrt(std::log(n)));
        s.lambda = lambda;
        if (!(lambda > 0.0) || y.norm() == 0.0) {
            out.hv_hat = CMatrix::Zero(dict_bs.cols(), dict_ms.cols());
            s.report.solver = "fista";
            s.report.converged = true;
        } else {
            auto r = solvers::fista_l1(op, y, lambda, fopts);
            s.report = std::move(r.report);
            out.hv_hat = std::move(r.estimate);
        }
        s.attained_residual = (op.apply(*out.hv_hat) - y).norm();
    }
    out.stages.push_back(std::move(s));
    out.h_hat = synthesize(*out.hv_hat, dict_bs, dict_ms);
    out.degraded = !out.stages.back().report.converged;
    return out;
}

EstimateBundle full_mc_estimate(const sounding::ObservationSet &obs, const sounding::Codebook &z,
                                const sounding::Codebook &f, bool noisy, const SolverSettings &settings)
{
    check_inputs(obs, z, f);
    if (z.antennas() != z.beams() || f.antennas() != f.beams())
        throw std::invalid_argument("full_mc_estimate: Z and F must be square (N_Z = N_BS, N_F = N_MS)");
    for (const auto *cb : {&z, &f}) {
        const RVector s = Eigen::BDCSVD<CMatrix>(cb->matrix).singularValues();
        const double cond = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1) : std::numeric_limits<double>::infinity();
        if (!(cond <= kMaxCodebookCondition))
            throw std::invalid_argument("full_mc_estimate: codebook is singular or ill-conditioned");
    }

    EstimateBundle out;
    CMatrix y_hat;
    if (noisy) {
        out.stages.push_back(robust_completion(obs, settings, y_hat));
    } else {
        auto r = solvers::svt_complete(obs, settings.svt);
        y_hat = std::move(r.estimate);
        StageReport s;
        s.stage = "completion";
        s.report = std::move(r.report);
        out.stages.push_back(std::move(s));
    }
    // H = (Z^H)^{-1} Y F^{-1}
    const CMatrix left = z.matrix.adjoint().partialPivLu().solve(y_hat);
    out.h_hat = f.matrix.transpose().partialPivLu().solve(left.transpose()).transpose();
    out.degraded = !out.stages.back().report.converged;
    return out;
}

void TheoryBoundConfig::validate() const
{
    for (double c : {c1, c2, c3, c4, c5, c6, c_mc, c_cs, eta})
        if (!(c > 0.0))
            throw std::invalid_argument("TheoryBoundConfig: all constants must be > 0");
}

SampleRequirements theorem1_required(const SparsityParams &params, const TheoryBoundConfig &tb)
{
    tb.validate();
    if (params.p < 1 || params.num_clusters < 1)
        throw std::invalid_argument("theorem1_required: p and L must be >= 1");
    if (!(params.n_bs >= 1.0) || !(params.n_ms >= 1.0))
        throw std::invalid_argument("theorem1_required: array sizes must be >= 1");
    const double pl = static_cast<double>(params.p) * params.num_clusters;
    if (pl >= std::min(params.n_bs, params.n_ms))
        throw std::domain_error("theorem1_required: pL >= min(N_BS, N_MS), the sizing bound is vacuous");

    const double big_l = params.num_clusters;
    const double n1 = params.n1 > 0 ? params.n1 : params.n_bs;
    const double n2 = params.n2 > 0 ? params.n2 : params.n_ms;
    auto up = [](double v) { return static_cast<long>(std::ceil(v - 1e-12)); };

    SampleRequirements r;
    r.n_z_min = up(tb.c1 * pl * std::log(params.n_bs / pl));
    r.n_f_min = up(tb.c2 * pl * std::log(params.n_ms / pl));
    const double n = static_cast<double>(std::max(r.n_z_min, r.n_f_min));
    r.t_min_two_stage = n > 0.0 ? up(tb.c3 * std::pow(n, 1.25) * big_l * std::log(n)) : 0;
    r.t_min_direct = up(tb.c_cs * params.p * pl * std::log(n1 * n2));
    const double m = std::max(params.n_bs, params.n_ms);
    r.t_min_full_mc = up(tb.c_mc * std::pow(m, 1.25) * big_l * std::log(m));
    return r;
}

} // namespace mmcs::pipelines
