// SPDX-License-Identifier: Apache-2.0
//
// wptrelay - rate optimization for wireless-powered MIMO AF relay links
// Copyright (C) 2026 wptrelay contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef WPTRELAY_BASELINE_NOEF_HPP
#define WPTRELAY_BASELINE_NOEF_HPP

#include <Eigen/Dense>

#include "wptrelay/ao_driver.hpp"
#include "wptrelay/channel_model.hpp"

namespace wpt {

/// Scalarized form of the no-energy-flow baseline under uniform source
/// power: effective source-relay gains (P_S/r)*lambda_rs,m and the
/// forwarding gains they pair with, both nondecreasing.
struct NoEFProblem {
    Eigen::VectorXd lambda_rs_prime;  ///< (P_S/r) * channel power gains of H_RS, nondecreasing
    Eigen::VectorXd lambda_dr;        ///< nondecreasing
    double rho = 0.0;
    double sigma2 = 0.0;
};

/// Matrices realizing a no-energy-flow allocation.
struct NoEFDesign {
    NoEFProblem problem;
    Eigen::MatrixXcd F;    ///< V_dr diag(sqrt(lambda_f)) U_rs^H
    Eigen::MatrixXcd Q_S;  ///< (P_S/r) V_rs V_rs^H
};

/// Two-phase relaying without the energy flow: uniform source power over
/// the source-channel eigenmodes, one closed-form relay solve, no
/// alternating loop. Returned RunResult has scheme NOEF and a single
/// trace entry.
RunResult solve_noef(const ChannelSet& channels, const SystemParams& params);

/// Same, also exposing the assembled matrices for verification.
RunResult solve_noef_design(const ChannelSet& channels, const SystemParams& params,
                            NoEFDesign* design);

/// Determinant-form rate of the baseline (no energy covariance).
double noef_rate_exact(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& Q_S,
                       const ChannelSet& channels, const SystemParams& params);

}  // namespace wpt

#endif
