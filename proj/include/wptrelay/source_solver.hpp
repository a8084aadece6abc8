// SPDX-License-Identifier: Apache-2.0
//
// wptrelay - rate optimization for wireless-powered MIMO AF relay links
// Copyright (C) 2026 wptrelay contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef WPTRELAY_SOURCE_SOLVER_HPP
#define WPTRELAY_SOURCE_SOLVER_HPP

#include <Eigen/Dense>
#include <optional>

#include "wptrelay/channel_model.hpp"
#include "wptrelay/diagonalization.hpp"

namespace wpt {

/// Source power allocation instance with fixed relay gains. The
/// power-conservation equality is restated as dot(a, x) = b, which is
/// algebraically identical to the relay-side form.
struct SourceProblem {
    Eigen::VectorXd lambda_f;   ///< fixed relay amplification powers
    Eigen::VectorXd lambda_dr;  ///< forwarding power gains, nondecreasing
    Eigen::VectorXd beta;       ///< leak powers (single nonzero at last index)
    Eigen::VectorXd w;          ///< per-mode trace weights of the source covariance
    double rho = 0.0;
    double sigma2 = 0.0;
    double P_S = 0.0;
    double P_D = 0.0;
    double lambda_dr_max = 0.0;

    Eigen::VectorXd a;       ///< lambda_f*(1-rho) - rho, per mode
    double b = 0.0;          ///< rho*P_D*lambda_dr_max - sum((sigma2+beta)*lambda_f)
    double h_e_max2 = 0.0;   ///< max entry of w

    static SourceProblem make(const DiagonalizedSystem& sys,
                              const Eigen::VectorXd& lambda_f,
                              const SystemParams& params);

    static SourceProblem from_parts(const Eigen::VectorXd& lambda_f,
                                    const Eigen::VectorXd& lambda_dr,
                                    const Eigen::VectorXd& beta,
                                    const Eigen::VectorXd& w, double rho,
                                    double sigma2, double P_S, double P_D,
                                    double lambda_dr_max);
};

enum class P3cBranch {
    Interior,  ///< budget multiplier zero; one-parameter closed form
    Active     ///< budget tight; two-multiplier system
};

struct P3cSolution {
    Eigen::VectorXd lambda_rs;
    P3cBranch branch = P3cBranch::Interior;
    double mu = 0.0;      ///< equality multiplier
    double gamma2 = 0.0;  ///< budget multiplier (zero on the interior branch)
};

/// Uniform-weight relaxation: positivity + sum(x) <= P_S/h_e_max2 +
/// equality. Closed form on the interior branch; otherwise a
/// two-multiplier root find with a barrier fallback. Throws
/// InfeasibleError / SolverError / std::invalid_argument (a_m == 0).
P3cSolution solve_p3c(const SourceProblem& prob);

/// Exact problem: positivity, nondecreasing ordering, weighted budget
/// dot(w, x) <= P_S, equality dot(a, x) = b. Solved by a log-barrier
/// method on the increments of x, which makes the ordering constraints
/// plain sign constraints and the equality exactly representable.
Eigen::VectorXd solve_p3b(const SourceProblem& prob,
                          const std::optional<Eigen::VectorXd>& warm_start = {});

/// High-SNR sum-rate surrogate in nats (rate orientation):
///   sum_m log((1-rho) x_m lf_m ldr_m / (sigma2 (1 + lf_m ldr_m)))
double p3b_objective(const Eigen::VectorXd& lambda_rs,
                     const Eigen::VectorXd& lambda_f,
                     const Eigen::VectorXd& lambda_dr, double rho,
                     double sigma2);

}  // namespace wpt

#endif
