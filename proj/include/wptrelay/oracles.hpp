// SPDX-License-Identifier: Apache-2.0
//
// wptrelay - rate optimization for wireless-powered MIMO AF relay links
// Copyright (C) 2026 wptrelay contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef WPTRELAY_ORACLES_HPP
#define WPTRELAY_ORACLES_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "wptrelay/ao_driver.hpp"
#include "wptrelay/diagonalization.hpp"
#include "wptrelay/relay_solver.hpp"
#include "wptrelay/source_solver.hpp"

namespace wpt {

/// Brute-force and randomized verifiers. Never used on the production
/// path; tests and the `validate` command call them against solver
/// output. Oracle tolerances are deliberately looser than solver
/// residuals so discretization error cannot mask a solver bug.
struct OracleReport {
    std::string name;
    int instances = 0;
    double max_violation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::uint64_t seed = 0;
    std::string note;  ///< "inconclusive: ..." when a sampler found nothing

    static OracleReport make(std::string name, int instances, double max_violation,
                             double tolerance, std::uint64_t seed, std::string note = "");
};

struct GridSearchResult {
    Eigen::VectorXd best_point;
    double best_value = 0.0;
    bool feasible = false;
};

/// r = 2 only: the equality constraint leaves one degree of freedom;
/// lambda_f1 is swept on a grid and lambda_f2 solved from the constraint.
/// Returns the grid maximizer of the high-SNR objective.
GridSearchResult grid_search_relay(const RelayProblem& prob, int grid_n);

/// Enumerates every pairing of the overlapped channel gains with the
/// forwarding gains and every placement of the leak (r! * r candidates,
/// r <= 4), solving the relay problem for each, and checks that the
/// ascending/leak-on-top configuration attains the maximum objective.
OracleReport exhaustive_pairing_check(const RelayProblem& prob, double tol = 1e-9,
                                      std::uint64_t seed = 0);

/// Samples n_samples feasible points of the source problem (P3B: ordered
/// weighted-budget set; P3C: uniform-budget set) and checks the candidate
/// objective dominates each sample up to 1e-6.
OracleReport random_feasible_dominance(const SourceProblem& prob,
                                       const Eigen::VectorXd& candidate,
                                       Scheme which, int n_samples,
                                       std::uint64_t seed);

/// Samples random PSD covariances with trace P_D and checks the rank-one
/// beam harvests at least as much through H_RD.
OracleReport energy_beam_dominance(const Eigen::MatrixXcd& H_RD, const EnergyBeam& beam,
                                   double P_D, int n_samples, std::uint64_t seed);

/// Leak-retransmission bound: over random permutations of the forced
/// receive basis, the assembled configuration's harvested-minus-leaked
/// power never exceeds the ordered configuration's value.
OracleReport leakage_bound_check(const ChannelSet& channels, const SystemParams& params,
                                 int n_perms, std::uint64_t seed);

/// Full oracle battery over freshly drawn instances; backs `validate`.
std::vector<OracleReport> run_validation_suite(std::uint64_t seed);

}  // namespace wpt

#endif
