// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "wptrelay/barrier.hpp"
#include "wptrelay/errors.hpp"
#include "wptrelay/oracles.hpp"
#include "wptrelay/relay_solver.hpp"
#include "wptrelay/source_solver.hpp"
#include "test_util.hpp"

using namespace wpt;

namespace {

// Abstract instance with the multiplier-level fields set directly; the
// mode-gain fields only matter for objective evaluation.
SourceProblem abstract_problem(const Eigen::VectorXd& a, double b, double P_S,
                               const Eigen::VectorXd& w) {
    SourceProblem p;
    const Eigen::Index r = a.size();
    p.a = a;
    p.b = b;
    p.P_S = P_S;
    p.w = w;
    p.h_e_max2 = w.maxCoeff();
    p.rho = 0.5;
    p.sigma2 = 1.0;
    p.lambda_f = Eigen::VectorXd::Ones(r);
    p.lambda_dr = Eigen::VectorXd::Ones(r);
    p.beta = Eigen::VectorXd::Zero(r);
    return p;
}

// Pipeline instance: channels -> diagonalization -> one relay solve.
SourceProblem pipeline_problem(std::uint64_t seed, const SystemParams& params,
                               DiagonalizedSystem* sys_out = nullptr) {
    const ChannelSet ch = test::make_channels(seed, params);
    const DiagonalizedSystem sys = diagonalize(ch, params);
    Eigen::VectorXd lt0 = (params.P_S / (params.r * sys.w.array())).matrix();
    std::sort(lt0.data(), lt0.data() + lt0.size());
    lt0 *= params.P_S / sys.w.dot(lt0);
    const RelaySolution rs = solve_relay_power(RelayProblem::make(sys, lt0, params));
    if (sys_out) *sys_out = sys;
    return SourceProblem::make(sys, rs.lambda_f, params);
}

double neg_log_sum(const Eigen::VectorXd& x) { return -x.array().log().sum(); }

}  // namespace

TEST_SUITE("source_solver") {

TEST_CASE("single-mode interior branch, negative-sign case") {
    const SourceProblem p = abstract_problem(Eigen::VectorXd::Constant(1, -1.0), -2.0,
                                             100.0, Eigen::VectorXd::Ones(1));
    const P3cSolution sol = solve_p3c(p);
    CHECK(sol.branch == P3cBranch::Interior);
    CHECK(sol.mu == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(sol.lambda_rs(0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("symmetric two-mode instance pinned by both constraints") {
    // Equality sum(x) = 2 coincides with the tight budget cap 2; the
    // symmetric optimum (1,1) comes back through the tight-budget branch.
    const SourceProblem p = abstract_problem(Eigen::VectorXd::Constant(2, -1.0), -2.0,
                                             2.0, Eigen::VectorXd::Ones(2));
    const P3cSolution sol = solve_p3c(p);
    CHECK(sol.branch == P3cBranch::Active);
    CHECK(sol.lambda_rs(0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sol.lambda_rs(1) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("zero coefficient is degenerate") {
    Eigen::VectorXd a(2);
    a << -1.0, 0.0;
    const SourceProblem p = abstract_problem(a, -2.0, 10.0, Eigen::VectorXd::Ones(2));
    CHECK_THROWS_AS(solve_p3c(p), std::invalid_argument);
}

TEST_CASE("closed forms match an independent numeric solve") {
    SystemParams params = test::default_params();
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        params.rho = 0.3 + 0.05 * double(seed);
        const SourceProblem p = pipeline_problem(seed, params);
        const P3cSolution sol = solve_p3c(p);

        // Numeric oracle: log-barrier on the same constraint set, started
        // from an independently constructed interior point.
        const Eigen::Index r = p.a.size();
        const double cap = p.P_S / p.h_e_max2;
        BarrierSpec spec;
        spec.R = Eigen::MatrixXd::Identity(r, r);
        spec.C = Eigen::MatrixXd::Ones(1, r);
        spec.d = Eigen::VectorXd::Constant(1, cap);
        spec.E = p.a.transpose();
        spec.f = Eigen::VectorXd::Constant(1, p.b);
        // Feasible start: shrink the solver's own output toward a vertex
        // blend would bias the oracle; instead perturb and re-project.
        Eigen::VectorXd x0 = sol.lambda_rs;
        x0 *= 0.999;
        Eigen::Index kmax;
        p.a.cwiseAbs().maxCoeff(&kmax);
        x0(kmax) += (p.b - p.a.dot(x0)) / p.a(kmax);
        if ((x0.array() > 0.0).all() && x0.sum() < cap) {
            const Eigen::VectorXd oracle = barrier_minimize(spec, x0);
            CHECK(std::abs(neg_log_sum(oracle) - neg_log_sum(sol.lambda_rs)) < 1e-6);
        }

        // Constraint fidelity.
        const double eq_scale =
            std::max(std::abs(p.b), (p.a.array().abs() * sol.lambda_rs.array()).sum());
        CHECK(std::abs(p.a.dot(sol.lambda_rs) - p.b) <= 1e-8 * eq_scale);
        CHECK(sol.lambda_rs.sum() <= cap * (1.0 + 1e-10));
        CHECK((sol.lambda_rs.array() > 0.0).all());
    }
}

TEST_CASE("uniform weights and a clean interior overlap p3b") {
    // lambda_f nonincreasing, all a-coefficients positive, budget slack:
    // the relaxation and the exact problem share the optimum.
    Eigen::VectorXd lf(3);
    lf << 4.0, 3.0, 2.0;
    Eigen::VectorXd a = lf.array() * 0.8 - 0.2;  // rho = 0.2
    SourceProblem p = abstract_problem(a, 2.0, 2.0, Eigen::VectorXd::Ones(3));
    p.rho = 0.2;
    p.lambda_f = lf;
    const P3cSolution c = solve_p3c(p);
    REQUIRE(c.branch == P3cBranch::Interior);
    for (int m = 1; m < 3; ++m) CHECK(c.lambda_rs(m) >= c.lambda_rs(m - 1));

    const Eigen::VectorXd bsol = solve_p3b(p);
    for (int m = 0; m < 3; ++m)
        CHECK(test::rel_diff(bsol(m), c.lambda_rs(m)) < 1e-6);
}

TEST_CASE("single-mode p3b is pinned by the equality") {
    const SourceProblem p = abstract_problem(Eigen::VectorXd::Constant(1, 2.0), 3.0,
                                             2.0, Eigen::VectorXd::Ones(1));
    const Eigen::VectorXd sol = solve_p3b(p);
    CHECK(sol(0) == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("p3b output dominates random feasible points") {
    SystemParams params = test::default_params();
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const SourceProblem p = pipeline_problem(seed, params);
        const Eigen::VectorXd sol = solve_p3b(p);
        const OracleReport rep =
            random_feasible_dominance(p, sol, Scheme::P3B, 10000, seed);
        CHECK(rep.passed);
        CHECK(rep.note.empty());

        // Ordering, positivity, budgets.
        for (Eigen::Index m = 1; m < sol.size(); ++m) CHECK(sol(m) >= sol(m - 1));
        CHECK((sol.array() > 0.0).all());
        CHECK(p.w.dot(sol) <= p.P_S * (1.0 + 1e-10));
        const double eq_scale =
            std::max(std::abs(p.b), (p.a.array().abs() * sol.array()).sum());
        CHECK(std::abs(p.a.dot(sol) - p.b) <= 1e-8 * eq_scale);
    }
}

TEST_CASE("p3c output dominates random feasible points of its own set") {
    SystemParams params = test::default_params();
    for (std::uint64_t seed = 11; seed <= 14; ++seed) {
        const SourceProblem p = pipeline_problem(seed, params);
        const P3cSolution sol = solve_p3c(p);
        const OracleReport rep =
            random_feasible_dominance(p, sol.lambda_rs, Scheme::P3C, 10000, seed);
        CHECK(rep.passed);
    }
}

TEST_CASE("objective frozen points") {
    SUBCASE("unit per-mode SNR gives zero") {
        // (1-rho) x lf ld = sigma2 (1 + lf ld) with rho=0.5, lf=ld=1,
        // sigma2=1 pins x = 4.
        const double val = p3b_objective(Eigen::VectorXd::Constant(1, 4.0),
                                         Eigen::VectorXd::Ones(1),
                                         Eigen::VectorXd::Ones(1), 0.5, 1.0);
        CHECK(val == doctest::Approx(0.0).epsilon(1e-14));
    }
    SUBCASE("doubling the source power adds r log 2") {
        Rng rng(77);
        Eigen::VectorXd x(3), lf(3), ld(3);
        for (int m = 0; m < 3; ++m) {
            x(m) = 0.5 + rng.uniform01();
            lf(m) = 0.5 + rng.uniform01();
            ld(m) = 0.5 + rng.uniform01();
        }
        const double base = p3b_objective(x, lf, ld, 0.4, 0.01);
        const double doubled = p3b_objective(2.0 * x, lf, ld, 0.4, 0.01);
        CHECK(doubled - base == doctest::Approx(3.0 * std::log(2.0)).epsilon(1e-12));
    }
    SUBCASE("nonpositive arguments are rejected") {
        CHECK_THROWS_AS(p3b_objective(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1),
                                      Eigen::VectorXd::Ones(1), 0.5, 1.0),
                        std::invalid_argument);
    }
}

TEST_CASE("infeasible instances are reported, not guessed") {
    // Equality demands sum(x) = 10 while the budget allows at most 1.
    const SourceProblem p = abstract_problem(Eigen::VectorXd::Constant(3, -1.0), -10.0,
                                             1.0, Eigen::VectorXd::Ones(3));
    CHECK_THROWS_AS(solve_p3b(p), InfeasibleError);
    CHECK_THROWS_AS(solve_p3c(p), InfeasibleError);
}

TEST_CASE("budget-exact uniform warm start does not strand the solver") {
    // Uniform allocation spending the budget exactly is a vertex of the
    // equality slice; the solver must handle the possibly-empty interior.
    const int r = 3;
    const double rho = 0.6, sigma2 = 1e-4, P_S = 0.3, P_D = 0.4;
    const Eigen::VectorXd w = Eigen::VectorXd::Ones(r);
    const Eigen::VectorXd warm = Eigen::VectorXd::Constant(r, P_S / r);
    Eigen::VectorXd ld(r);
    ld << 0.5, 1.0, 2.0;
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(r);
    beta(r - 1) = (1.0 - rho) * P_D * ld(r - 1);

    const RelayProblem rp =
        RelayProblem::from_parts(warm, ld, beta, rho, sigma2, P_D, ld(r - 1));
    const RelaySolution rs = solve_relay_power(rp);
    const SourceProblem sp = SourceProblem::from_parts(rs.lambda_f, ld, beta, w, rho,
                                                       sigma2, P_S, P_D, ld(r - 1));

    const Eigen::VectorXd sol = solve_p3b(sp, warm);
    CHECK((sol.array() > 0.0).all());
    for (int m = 1; m < r; ++m) CHECK(sol(m) >= sol(m - 1) - 1e-12);
    CHECK(sp.w.dot(sol) <= P_S * (1.0 + 1e-9));
    const double eq_scale =
        std::max(std::abs(sp.b), (sp.a.array().abs() * sol.array()).sum());
    CHECK(std::abs(sp.a.dot(sol) - sp.b) <= 1e-7 * eq_scale);
}

TEST_CASE("objective is midpoint convex along feasible segments") {
    SystemParams params = test::default_params();
    const SourceProblem p = pipeline_problem(21, params);
    Rng rng(210);
    const auto min_obj = [&](const Eigen::VectorXd& x) {
        return -p3b_objective(x, p.lambda_f, p.lambda_dr, p.rho, p.sigma2);
    };
    int checked = 0;
    for (int trial = 0; trial < 500 && checked < 50; ++trial) {
        Eigen::VectorXd x(p.a.size()), y(p.a.size());
        for (Eigen::Index m = 0; m < x.size(); ++m) {
            x(m) = 0.01 + rng.uniform01();
            y(m) = 0.01 + rng.uniform01();
        }
        const Eigen::VectorXd mid = 0.5 * (x + y);
        CHECK(min_obj(mid) <= 0.5 * min_obj(x) + 0.5 * min_obj(y) + 1e-12);
        ++checked;
    }
    CHECK(checked == 50);
}

TEST_CASE("equality restatement matches the relay-side form") {
    SystemParams params = test::default_params();
    Rng rng(31);
    for (std::uint64_t seed = 31; seed <= 34; ++seed) {
        DiagonalizedSystem sys;
        const SourceProblem p = pipeline_problem(seed, params, &sys);
        Eigen::VectorXd x(p.a.size());
        for (Eigen::Index m = 0; m < x.size(); ++m) x(m) = 0.1 + rng.uniform01();
        // dot(a,x) - b  ==  sum(lf*((1-rho)x + sigma2 + beta)) - rho*sum(x)
        //                 - rho*P_D*lambda_max, elementwise algebra.
        const double lhs = p.a.dot(x) - p.b;
        const double rhs =
            (p.lambda_f.array() * ((1.0 - p.rho) * x.array() + p.sigma2 + p.beta.array()))
                .sum() -
            p.rho * x.sum() - p.rho * p.P_D * p.lambda_dr_max;
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
    }
}

}  // TEST_SUITE
