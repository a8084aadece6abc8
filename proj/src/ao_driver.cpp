// SPDX-License-Identifier: Apache-2.0
//
// wptrelay - rate optimization for wireless-powered MIMO AF relay links
// Copyright (C) 2026 wptrelay contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "wptrelay/ao_driver.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "wptrelay/errors.hpp"
#include "wptrelay/relay_solver.hpp"
#include "wptrelay/source_solver.hpp"

namespace wpt {

namespace {
constexpr double kLn2 = 0.69314718055994530941723212145818;
}

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::P3B: return "p3b";
        case Scheme::P3C: return "p3c";
        case Scheme::NOEF: return "noef";
    }
    return "?";
}

double rate_diagonal(const PowerAllocation& alloc, const DiagonalizedSystem& sys,
                     const SystemParams& params) {
    if ((alloc.lambda_f.array() < 0.0).any() || (alloc.lambda_rs.array() < 0.0).any())
        throw std::invalid_argument("rate_diagonal: allocation must be nonnegative");
    const auto lf = alloc.lambda_f.array();
    const auto x = alloc.lambda_rs.array();
    const auto ld = sys.lambda_dr.array();
    const Eigen::ArrayXd snr =
        (1.0 - params.rho) * x * lf * ld / (params.sigma2 * (1.0 + lf * ld));
    return 0.5 * (1.0 + snr).log().sum() / kLn2;
}

namespace {

void require_psd(const Eigen::MatrixXcd& Q, const char* name) {
    if (Q.rows() != Q.cols()) throw std::invalid_argument("covariance must be square");
    const double asym = (Q - Q.adjoint()).cwiseAbs().maxCoeff();
    const double scale = std::max(Q.cwiseAbs().maxCoeff(), 1e-300);
    if (asym > 1e-9 * scale)
        throw std::invalid_argument(std::string(name) + " is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Q, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < -1e-9 * scale)
        throw std::invalid_argument(std::string(name) + " is not positive semidefinite");
}

double logdet_hermitian(const Eigen::MatrixXcd& M) {
    const Eigen::MatrixXcd sym = 0.5 * (M + M.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues().array().log().sum();
}

}  // namespace

double rate_exact_matrix(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& Q_S,
                         const Eigen::MatrixXcd& Q_D, const ChannelSet& channels,
                         const SystemParams& params) {
    require_psd(Q_S, "Q_S");
    require_psd(Q_D, "Q_D");
    const int r = params.r;
    const Eigen::MatrixXcd HF = channels.H_DR * F;
    const Eigen::MatrixXcd noise =
        params.sigma2 * (HF * HF.adjoint() + Eigen::MatrixXcd::Identity(r, r));
    const Eigen::MatrixXcd HFS = HF * channels.H_RS;
    const Eigen::MatrixXcd signal =
        (1.0 - params.rho) * (HFS * Q_S * HFS.adjoint());
    // Q_D is echoed through the relay but cancelled at the destination, so
    // it never enters the mutual information.
    return 0.5 * (logdet_hermitian(noise + signal) - logdet_hermitian(noise)) / kLn2;
}

double min_objective(const Eigen::VectorXd& lambda_rs, const Eigen::VectorXd& lambda_f,
                     const Eigen::VectorXd& lambda_dr, double rho, double sigma2) {
    return -p3b_objective(lambda_rs, lambda_f, lambda_dr, rho, sigma2);
}

namespace {

Eigen::VectorXd initial_source_power(const DiagonalizedSystem& sys,
                                     const SystemParams& params) {
    // Uniform per-mode trace shares, reordered ascending to match the mode
    // pairing, then rescaled onto the budget. Deterministic and feasible.
    Eigen::VectorXd lt = (params.P_S / (params.r * sys.w.array())).matrix();
    std::sort(lt.data(), lt.data() + lt.size());
    lt *= params.P_S / sys.w.dot(lt);
    return lt;
}

}  // namespace

RunResult run_ao(const ChannelSet& channels, const SystemParams& params, Scheme scheme,
                 const AoOptions& opts) {
    params.validate();
    if (scheme == Scheme::NOEF)
        throw std::invalid_argument("run_ao drives the energy-flow schemes only");

    const DiagonalizedSystem sys = diagonalize(channels, params);

    RunResult res;
    res.scheme = scheme;
    Eigen::VectorXd lt =
        opts.init ? opts.init->lambda_rs : initial_source_power(sys, params);
    Eigen::VectorXd lf;

    double prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < params.max_iter; ++it) {
        try {
            const RelaySolution rs = solve_relay_power(RelayProblem::make(sys, lt, params));
            lf = rs.lambda_f;
            const SourceProblem sp = SourceProblem::make(sys, lf, params);
            const Eigen::VectorXd lt_new =
                (scheme == Scheme::P3B) ? solve_p3b(sp, lt) : solve_p3c(sp).lambda_rs;
            // The previous iterate stays feasible under the refreshed relay
            // gains, so a source step is only accepted when it helps; this
            // keeps the trace monotone down at solver-tolerance level.
            if (min_objective(lt_new, lf, sys.lambda_dr, params.rho, params.sigma2) <=
                min_objective(lt, lf, sys.lambda_dr, params.rho, params.sigma2))
                lt = lt_new;
        } catch (const SolverError& e) {
            res.allocation = {lf, lt};
            res.iterations = int(res.trace.size());
            throw PartialResultError(std::string("run_ao: iteration failed: ") + e.what(),
                                     res);
        } catch (const InfeasibleError& e) {
            res.allocation = {lf, lt};
            res.iterations = int(res.trace.size());
            throw PartialResultError(std::string("run_ao: iteration infeasible: ") + e.what(),
                                     res);
        }

        const double obj = min_objective(lt, lf, sys.lambda_dr, params.rho, params.sigma2);
        if (!res.trace.empty() && obj > res.trace.back() + 1e-9) {
            if (opts.monotone == MonotoneCheck::Throw)
                throw SolverError("run_ao: objective increased beyond tolerance");
            std::cerr << "wptrelay: warning: non-monotone objective step ("
                      << res.trace.back() << " -> " << obj << ")\n";
        }
        res.trace.push_back(obj);

        if (std::abs(obj - prev) < params.eps) {
            res.converged = true;
            break;
        }
        prev = obj;
    }

    res.iterations = int(res.trace.size());
    res.allocation = {lf, lt};
    res.rate_exact = rate_diagonal(res.allocation, sys, params);
    res.rate_highsnr = -res.trace.back() / (2.0 * kLn2);
    return res;
}

}  // namespace wpt
