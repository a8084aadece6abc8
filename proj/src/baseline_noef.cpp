// SPDX-License-Identifier: Apache-2.0
//
// wptrelay - rate optimization for wireless-powered MIMO AF relay links
// Copyright (C) 2026 wptrelay contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "wptrelay/baseline_noef.hpp"

#include <cmath>

#include "wptrelay/diagonalization.hpp"
#include "wptrelay/relay_solver.hpp"

namespace wpt {

namespace {
constexpr double kLn2 = 0.69314718055994530941723212145818;
}

double noef_rate_exact(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& Q_S,
                       const ChannelSet& channels, const SystemParams& params) {
    return rate_exact_matrix(F, Q_S,
                             Eigen::MatrixXcd::Zero(params.r, params.r), channels,
                             params);
}

RunResult solve_noef_design(const ChannelSet& channels, const SystemParams& params,
                            NoEFDesign* design) {
    params.validate();
    const int r = params.r;

    const SvdOrdered svd_rs = svd_ordered(channels.H_RS);
    const SvdOrdered svd_dr = svd_ordered(channels.H_DR);

    NoEFProblem np;
    np.lambda_rs_prime = (params.P_S / r) * svd_rs.s.array().square();
    np.lambda_dr = svd_dr.s.array().square();
    np.rho = params.rho;
    np.sigma2 = params.sigma2;

    // Ascending-ascending pairing; the leak machinery degenerates away.
    const RelayProblem rp = RelayProblem::from_parts(
        np.lambda_rs_prime, np.lambda_dr, Eigen::VectorXd::Zero(r), params.rho,
        params.sigma2, /*P_D=*/0.0, np.lambda_dr(r - 1));
    const RelaySolution rs = solve_relay_power(rp);

    RunResult res;
    res.scheme = Scheme::NOEF;
    res.allocation = {rs.lambda_f, np.lambda_rs_prime};
    res.converged = true;
    res.iterations = 1;

    const auto lf = rs.lambda_f.array();
    const auto lt = np.lambda_rs_prime.array();
    const auto ld = np.lambda_dr.array();
    const Eigen::ArrayXd per_mode =
        (1.0 - params.rho) * lt * lf * ld / (params.sigma2 * (1.0 + lf * ld));
    res.rate_exact = 0.5 * (1.0 + per_mode).log().sum() / kLn2;
    // Zero modes contribute -inf to the surrogate; report them as absent.
    double surrogate = 0.0;
    for (Eigen::Index m = 0; m < per_mode.size(); ++m)
        if (per_mode(m) > 0.0) surrogate += std::log(per_mode(m));
    res.rate_highsnr = surrogate / (2.0 * kLn2);
    res.trace.push_back(-surrogate);

    if (design) {
        design->problem = np;
        design->F =
            svd_dr.V * rs.lambda_f.cwiseSqrt().asDiagonal() * svd_rs.U.adjoint();
        design->Q_S = (params.P_S / r) * (svd_rs.V * svd_rs.V.adjoint());
    }
    return res;
}

RunResult solve_noef(const ChannelSet& channels, const SystemParams& params) {
    return solve_noef_design(channels, params, nullptr);
}

}  // namespace wpt
