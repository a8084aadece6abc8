// SPDX-License-Identifier: Apache-2.0
//
// wptrelay - rate optimization for wireless-powered MIMO AF relay links
// Copyright (C) 2026 wptrelay contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef WPTRELAY_BARRIER_HPP
#define WPTRELAY_BARRIER_HPP

#include <Eigen/Dense>

namespace wpt {

/// Small dense log-barrier problem:
///
///   minimize   -sum_j log( (R x)_j )
///   subject to C x <= d          (kept strictly interior by the barrier)
///              E x  = f          (eliminated through a null-space basis)
///
/// The feasible sets here have at most ~10 variables, so damped Newton on
/// the reduced problem is exact enough and keeps the solver dependency
/// free.
struct BarrierSpec {
    Eigen::MatrixXd R;  ///< rows of the log objective; (R x) must stay > 0
    Eigen::MatrixXd C;  ///< inequality rows (may be empty)
    Eigen::VectorXd d;
    Eigen::MatrixXd E;  ///< equality rows (may be empty)
    Eigen::VectorXd f;
};

struct BarrierOptions {
    double mu_init = 1.0;
    double mu_final = 1e-9;
    double mu_shrink = 0.1;
    int newton_cap = 80;         ///< Newton iterations per barrier stage
    double newton_tol = 1e-12;   ///< stop stage when decrement^2/2 falls below
};

/// Minimizes from a strictly feasible x0 ((R x0) > 0, C x0 < d, E x0 = f).
/// Throws SolverError when a stage fails to converge within its cap.
Eigen::VectorXd barrier_minimize(const BarrierSpec& spec, const Eigen::VectorXd& x0,
                                 const BarrierOptions& opts = {});

}  // namespace wpt

#endif
