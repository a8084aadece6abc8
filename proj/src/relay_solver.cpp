// SPDX-License-Identifier: Apache-2.0
//
// wptrelay - rate optimization for wireless-powered MIMO AF relay links
// Copyright (C) 2026 wptrelay contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "wptrelay/relay_solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "wptrelay/errors.hpp"

namespace wpt {

RelayProblem RelayProblem::from_parts(const Eigen::VectorXd& lambda_rs,
                                      const Eigen::VectorXd& lambda_dr,
                                      const Eigen::VectorXd& beta, double rho,
                                      double sigma2, double P_D,
                                      double lambda_dr_max) {
    if (lambda_rs.size() != lambda_dr.size() || lambda_rs.size() != beta.size())
        throw std::invalid_argument("relay problem vectors must share one length");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("sigma2 must be > 0");
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must be in (0,1)");
    if ((lambda_rs.array() < 0.0).any() || (lambda_dr.array() <= 0.0).any())
        throw std::invalid_argument("mode gains must be positive");

    RelayProblem p;
    p.lambda_rs = lambda_rs;
    p.lambda_dr = lambda_dr;
    p.beta = beta;
    p.rho = rho;
    p.sigma2 = sigma2;
    p.P_D = P_D;
    p.lambda_dr_max = lambda_dr_max;
    p.z = (1.0 - rho) * lambda_rs.array() + sigma2 + beta.array();
    p.budget = rho * lambda_rs.sum() + rho * P_D * lambda_dr_max;
    return p;
}

RelayProblem RelayProblem::make(const DiagonalizedSystem& sys,
                                const Eigen::VectorXd& lambda_rs,
                                const SystemParams& params) {
    return from_parts(lambda_rs, sys.lambda_dr, sys.beta, params.rho, params.sigma2,
                      params.P_D, sys.lambda_dr_max);
}

Eigen::VectorXd lambda_f_closed_form(const RelayProblem& prob, double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("nu must be > 0");
    const auto& l = prob.lambda_dr.array();
    const auto& z = prob.z.array();
    // Algebraically -1/(2l) + (1/2)sqrt(1/l^2 + 4/(nu l z)), rewritten so
    // small values do not cancel.
    return (2.0 / (nu * z * (1.0 + (1.0 + 4.0 * l / (nu * z)).sqrt()))).matrix();
}

RelaySolution solve_relay_power(const RelayProblem& prob, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
    if ((prob.z.array() <= 0.0).any())
        throw std::invalid_argument("z entries must be positive");
    if (prob.budget < 0.0) throw std::invalid_argument("budget must be nonnegative");

    RelaySolution sol;
    if (prob.budget == 0.0) {
        sol.lambda_f = Eigen::VectorXd::Zero(prob.z.size());
        sol.nu = std::numeric_limits<double>::infinity();
        return sol;
    }

    const auto spent = [&](double nu) {
        return lambda_f_closed_form(prob, nu).dot(prob.z);
    };

    // spent(nu) decreases monotonically from +inf to 0, so a sign change
    // brackets the unique dual value.
    double lo = 1e-12;
    double hi = 1.0;
    int expand = 0;
    while (spent(lo) < prob.budget) {
        lo *= 0.5;
        if (++expand > 200)
            throw NoSolutionError("solve_relay_power: budget unattainable at any dual");
    }
    expand = 0;
    while (spent(hi) >= prob.budget) {
        hi *= 2.0;
        if (++expand > 200)
            throw NoSolutionError("solve_relay_power: bracket expansion failed");
    }

    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 2000; ++it) {
        mid = 0.5 * (lo + hi);
        const double s = spent(mid);
        if (std::abs(s - prob.budget) <= tol * prob.budget) break;
        if (s > prob.budget)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-16 * mid) break;
    }

    // Newton polish toward machine precision so alternating updates do not
    // wobble at the bisection tolerance.
    double nu = mid;
    for (int it = 0; it < 12; ++it) {
        const auto l = prob.lambda_dr.array();
        const auto z = prob.z.array();
        const Eigen::ArrayXd s = (1.0 + 4.0 * l / (nu * z)).sqrt();
        const Eigen::ArrayXd lf = 2.0 / (nu * z * (1.0 + s));
        const double g = (lf * z).sum() - prob.budget;
        if (std::abs(g) <= 4e-16 * prob.budget) break;
        // d lambda_f / d nu = -lf/nu + lf * t / (2 s nu (1+s)), t = 4l/(nu z)
        const Eigen::ArrayXd t = 4.0 * l / (nu * z);
        const double dg =
            ((-lf / nu + lf * t / (2.0 * s * nu * (1.0 + s))) * z).sum();
        if (!(dg < 0.0)) break;
        double step = -g / dg;
        while (nu + step <= 0.0) step *= 0.5;
        nu += step;
    }

    sol.nu = nu;
    sol.lambda_f = lambda_f_closed_form(prob, nu);
    const double residual =
        std::abs(sol.lambda_f.dot(prob.z) - prob.budget) / prob.budget;
    if (residual > tol * 10.0)
        throw SolverError("solve_relay_power: bisection stalled above tolerance");
    return sol;
}

}  // namespace wpt
