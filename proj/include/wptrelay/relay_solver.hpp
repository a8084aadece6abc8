// SPDX-License-Identifier: Apache-2.0
//
// wptrelay - rate optimization for wireless-powered MIMO AF relay links
// Copyright (C) 2026 wptrelay contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef WPTRELAY_RELAY_SOLVER_HPP
#define WPTRELAY_RELAY_SOLVER_HPP

#include <Eigen/Dense>

#include "wptrelay/channel_model.hpp"
#include "wptrelay/diagonalization.hpp"

namespace wpt {

/// Relay power allocation instance: fixed per-mode source powers, the
/// forwarding-mode gains they are paired with, and the harvested budget.
struct RelayProblem {
    Eigen::VectorXd lambda_rs;  ///< source effective-channel powers per mode
    Eigen::VectorXd lambda_dr;  ///< forwarding power gains per mode
    Eigen::VectorXd beta;       ///< leak powers per mode
    double rho = 0.0;
    double sigma2 = 0.0;
    double P_D = 0.0;
    double lambda_dr_max = 0.0;

    Eigen::VectorXd z;     ///< (1-rho)*lambda_rs + sigma2 + beta, per mode
    double budget = 0.0;   ///< rho*sum(lambda_rs) + rho*P_D*lambda_dr_max

    static RelayProblem make(const DiagonalizedSystem& sys,
                             const Eigen::VectorXd& lambda_rs,
                             const SystemParams& params);

    /// Direct construction for baselines and tests; derives z and budget.
    static RelayProblem from_parts(const Eigen::VectorXd& lambda_rs,
                                   const Eigen::VectorXd& lambda_dr,
                                   const Eigen::VectorXd& beta, double rho,
                                   double sigma2, double P_D,
                                   double lambda_dr_max);
};

/// Water-filling-like stationarity solution at a fixed dual value nu > 0:
///   lambda_f_m = -1/(2 l_m) + (1/2) sqrt(1/l_m^2 + 4/(nu l_m z_m))
/// evaluated in a cancellation-free form. All entries strictly positive.
Eigen::VectorXd lambda_f_closed_form(const RelayProblem& prob, double nu);

struct RelaySolution {
    Eigen::VectorXd lambda_f;
    double nu = 0.0;  ///< dual value matching the power-conservation equality
};

/// Bisects the dual so that dot(lambda_f, z) meets the budget with
/// relative residual <= tol. A zero budget returns the all-zero
/// allocation. Throws NoSolutionError when no bracket exists after 200
/// doublings.
RelaySolution solve_relay_power(const RelayProblem& prob, double tol = 1e-10);

}  // namespace wpt

#endif
