// SPDX-License-Identifier: Apache-2.0
//
// wptrelay - rate optimization for wireless-powered MIMO AF relay links
// Copyright (C) 2026 wptrelay contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef WPTRELAY_AO_DRIVER_HPP
#define WPTRELAY_AO_DRIVER_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "wptrelay/channel_model.hpp"
#include "wptrelay/diagonalization.hpp"

namespace wpt {

enum class Scheme { P3B, P3C, NOEF };

std::string scheme_name(Scheme s);

struct PowerAllocation {
    Eigen::VectorXd lambda_f;   ///< relay amplification powers
    Eigen::VectorXd lambda_rs;  ///< source effective-channel powers
};

struct RunResult {
    PowerAllocation allocation;
    double rate_exact = 0.0;    ///< bits/channel use, determinant-form rate with the 1/2 factor
    double rate_highsnr = 0.0;  ///< high-SNR surrogate, bits/channel use, halved
    std::vector<double> trace;  ///< per-iteration objective, minimization orientation (nats)
    int iterations = 0;
    bool converged = false;
    Scheme scheme = Scheme::P3B;
};

/// What to do when an iteration increases the objective by more than 1e-9:
/// numerical noise sits well below that, anything larger is a logic bug.
enum class MonotoneCheck { Warn, Throw };

struct AoOptions {
    std::optional<PowerAllocation> init;
    MonotoneCheck monotone = MonotoneCheck::Warn;
};

/// Carries the last valid iterate out of a run that failed mid-way.
class PartialResultError : public std::runtime_error {
  public:
    PartialResultError(const std::string& what, RunResult partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}
    const RunResult& partial() const { return partial_; }

  private:
    RunResult partial_;
};

/// Exact per-mode rate, bits/channel use:
///   (1/2) sum_m log2(1 + (1-rho) x_m lf_m ldr_m / (sigma2 (1 + lf_m ldr_m)))
double rate_diagonal(const PowerAllocation& alloc, const DiagonalizedSystem& sys,
                     const SystemParams& params);

/// Determinant-form rate evaluated directly from matrices. Q_D enters the
/// power constraint only; the energy echo is cancelled at the destination
/// and does not appear in the mutual information.
double rate_exact_matrix(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& Q_S,
                         const Eigen::MatrixXcd& Q_D, const ChannelSet& channels,
                         const SystemParams& params);

/// Minimization-orientation objective in nats (negative of p3b_objective).
double min_objective(const Eigen::VectorXd& lambda_rs,
                     const Eigen::VectorXd& lambda_f,
                     const Eigen::VectorXd& lambda_dr, double rho, double sigma2);

/// Alternates the relay closed form with the chosen source solver until
/// the objective change falls below params.eps or max_iter is reached.
/// scheme must be P3B or P3C. Source-solver failures mid-run raise
/// PartialResultError with the last valid iterate attached.
RunResult run_ao(const ChannelSet& channels, const SystemParams& params,
                 Scheme scheme, const AoOptions& opts = {});

}  // namespace wpt

#endif
