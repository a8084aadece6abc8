// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "wptrelay/baseline_noef.hpp"
#include "wptrelay/oracles.hpp"
#include "wptrelay/relay_solver.hpp"
#include "test_util.hpp"

using namespace wpt;

TEST_SUITE("baseline_noef") {

TEST_CASE("rate vanishes with the source budget") {
    SystemParams p = test::default_params();
    p.P_S = 1e-20;
    const ChannelSet ch = test::make_channels(4, p);
    const RunResult res = solve_noef(ch, p);
    CHECK(res.rate_exact < 1e-8);
    CHECK(res.converged);
}

TEST_CASE("scalar closed form carries over with a zero leak") {
    // Same algebraic shape as the energy-flow closed form: z = 1 via
    // (1-rho)*lt' + sigma2 = 1, dual 4 inverts to 0.207107.
    RelayProblem prob = RelayProblem::from_parts(
        Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1), Eigen::VectorXd::Zero(1),
        0.5, 0.5, 0.0, 1.0);
    prob.budget = 0.20710678118654752;
    const RelaySolution sol = solve_relay_power(prob);
    CHECK(sol.nu == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(sol.lambda_f(0) == doctest::Approx(0.20710678118654752).epsilon(1e-9));
}

TEST_CASE("baseline dominates the brute-force grid at r = 2") {
    SystemParams p = test::default_params();
    p.r = 2;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const ChannelSet ch = test::make_channels(seed, p);
        NoEFDesign design;
        const RunResult res = solve_noef_design(ch, p, &design);

        const RelayProblem prob = RelayProblem::from_parts(
            design.problem.lambda_rs_prime, design.problem.lambda_dr,
            Eigen::VectorXd::Zero(2), p.rho, p.sigma2, 0.0,
            design.problem.lambda_dr(1));
        const GridSearchResult grid = grid_search_relay(prob, 10000);
        REQUIRE(grid.feasible);
        const double obj = p3b_objective(prob.lambda_rs, res.allocation.lambda_f,
                                         prob.lambda_dr, p.rho, p.sigma2);
        CHECK(obj >= grid.best_value - 1e-6);
    }
}

TEST_CASE("baseline equals the energy-flow relay solve with the leak removed") {
    const SystemParams p = test::default_params();
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const ChannelSet ch = test::make_channels(seed, p);
        NoEFDesign design;
        const RunResult res = solve_noef_design(ch, p, &design);

        const RelayProblem degenerate = RelayProblem::from_parts(
            design.problem.lambda_rs_prime, design.problem.lambda_dr,
            Eigen::VectorXd::Zero(p.r), p.rho, p.sigma2, /*P_D=*/0.0,
            design.problem.lambda_dr(p.r - 1));
        const RelaySolution again = solve_relay_power(degenerate);
        for (int m = 0; m < p.r; ++m)
            CHECK(test::rel_diff(again.lambda_f(m), res.allocation.lambda_f(m)) < 1e-9);
    }
}

TEST_CASE("power conservation and gain ordering hold") {
    const SystemParams p = test::default_params();
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const ChannelSet ch = test::make_channels(seed, p);
        NoEFDesign design;
        const RunResult res = solve_noef_design(ch, p, &design);

        const auto lf = res.allocation.lambda_f.array();
        const auto lt = design.problem.lambda_rs_prime.array();
        const double lhs = ((1.0 - p.rho) * lf * lt + p.sigma2 * lf).sum();
        const double rhs = p.rho * lt.sum();
        CHECK(std::abs(lhs - rhs) / rhs <= 1e-8);

        for (int m = 1; m < p.r; ++m)
            CHECK(res.allocation.lambda_f(m) <=
                  res.allocation.lambda_f(m - 1) * (1.0 + 1e-12));
    }
}

TEST_CASE("matrix-form rate agrees with the diagonalized sum") {
    SystemParams p = test::default_params();
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const ChannelSet ch = test::make_channels(seed, p);
        NoEFDesign design;
        const RunResult res = solve_noef_design(ch, p, &design);
        const double exact = noef_rate_exact(design.F, design.Q_S, ch, p);
        CHECK(test::rel_diff(exact, res.rate_exact) < 1e-9);
    }
}

TEST_CASE("zero relay matrix gives zero rate") {
    const SystemParams p = test::default_params();
    const ChannelSet ch = test::make_channels(3, p);
    const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(p.r, p.r);
    CHECK(noef_rate_exact(zero, 0.01 * Eigen::MatrixXcd::Identity(p.r, p.r), ch, p) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("scalar system matches the per-mode formula") {
    SystemParams p = test::default_params();
    p.r = 1;
    const ChannelSet ch = test::make_channels(8, p);
    NoEFDesign design;
    const RunResult res = solve_noef_design(ch, p, &design);
    const double lt = design.problem.lambda_rs_prime(0);
    const double lf = res.allocation.lambda_f(0);
    const double ld = design.problem.lambda_dr(0);
    const double snr = (1.0 - p.rho) * lt * lf * ld / (p.sigma2 * (1.0 + lf * ld));
    CHECK(test::rel_diff(res.rate_exact, 0.5 * std::log2(1.0 + snr)) < 1e-12);
    CHECK(test::rel_diff(noef_rate_exact(design.F, design.Q_S, ch, p), res.rate_exact) <
          1e-9);
}

}  // TEST_SUITE
