// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "wptrelay/ao_driver.hpp"
#include "wptrelay/diagonalization.hpp"
#include "wptrelay/errors.hpp"
#include "test_util.hpp"

using namespace wpt;

namespace {

// Power-conservation identity on the reconstructed matrices: forwarded
// power (signal + echoed energy + noise amplification) equals the
// harvested fraction of everything received.
double power_conservation_residual(const ChannelSet& ch, const SystemParams& params,
                                   const DiagonalizedSystem& sys,
                                   const PowerAllocation& alloc) {
    const Eigen::MatrixXcd F = assemble_relay_matrix(sys, alloc.lambda_f);
    const Eigen::MatrixXcd Q_S = assemble_source_covariance(sys, alloc.lambda_rs);
    const Eigen::MatrixXcd Q_D = design_energy_beam(ch.H_RD, params.P_D).Q_D;
    const Eigen::MatrixXcd FS = F * ch.H_RS;
    const Eigen::MatrixXcd FD = F * ch.H_RD;
    const double lhs =
        ((1.0 - params.rho) *
             (FS * Q_S * FS.adjoint() + FD * Q_D * FD.adjoint()).trace() +
         params.sigma2 * (F * F.adjoint()).trace())
            .real();
    const double rhs = params.rho * (ch.H_RD * Q_D * ch.H_RD.adjoint() +
                                     ch.H_RS * Q_S * ch.H_RS.adjoint())
                                        .trace()
                                        .real();
    return std::abs(lhs - rhs) / std::abs(rhs);
}

}  // namespace

TEST_SUITE("ao_driver") {

TEST_CASE("diagonal rate: scalar frozen point and vanishing-signal limit") {
    DiagonalizedSystem sys;
    sys.lambda_dr = Eigen::VectorXd::Ones(1);
    SystemParams p;
    p.r = 1;
    p.rho = 0.5;
    p.sigma2 = 1.0;

    PowerAllocation alloc;
    alloc.lambda_f = Eigen::VectorXd::Ones(1);
    alloc.lambda_rs = Eigen::VectorXd::Constant(1, 12.0);
    // (1-rho)*12*1*1 / (1*(1+1)) = 3  ->  rate = log2(4)/2 = 1
    CHECK(rate_diagonal(alloc, sys, p) == doctest::Approx(1.0).epsilon(1e-12));

    alloc.lambda_rs(0) = 1e-30;
    CHECK(rate_diagonal(alloc, sys, p) < 1e-12);
}

TEST_CASE("matrix rate: zero relay matrix carries nothing") {
    const SystemParams p = test::default_params();
    const ChannelSet ch = test::make_channels(2, p);
    const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(p.r, p.r);
    const Eigen::MatrixXcd Q_S =
        0.01 * Eigen::MatrixXcd::Identity(p.r, p.r);
    CHECK(rate_exact_matrix(zero, Q_S, zero, ch, p) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("matrix rate rejects non-PSD covariances") {
    const SystemParams p = test::default_params();
    const ChannelSet ch = test::make_channels(2, p);
    Eigen::MatrixXcd bad = -Eigen::MatrixXcd::Identity(p.r, p.r);
    CHECK_THROWS_AS(rate_exact_matrix(Eigen::MatrixXcd::Identity(p.r, p.r), bad, bad,
                                      ch, p),
                    std::invalid_argument);
}

TEST_CASE("diagonal and matrix rates agree on structured instances") {
    const SystemParams p = test::default_params();
    Rng rng(61);
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const ChannelSet ch = test::make_channels(seed, p);
        const DiagonalizedSystem sys = diagonalize(ch, p);
        PowerAllocation alloc;
        alloc.lambda_f.resize(p.r);
        alloc.lambda_rs.resize(p.r);
        for (int m = 0; m < p.r; ++m) {
            alloc.lambda_f(m) = 0.05 + rng.uniform01();
            alloc.lambda_rs(m) = 0.05 + rng.uniform01();
        }
        const Eigen::MatrixXcd F = assemble_relay_matrix(sys, alloc.lambda_f);
        const Eigen::MatrixXcd Q_S = assemble_source_covariance(sys, alloc.lambda_rs);
        const Eigen::MatrixXcd Q_D = design_energy_beam(ch.H_RD, p.P_D).Q_D;
        const double d = rate_diagonal(alloc, sys, p);
        const double e = rate_exact_matrix(F, Q_S, Q_D, ch, p);
        CHECK(test::rel_diff(d, e) < 1e-9);
    }
}

TEST_CASE("scalar system: matrix form reduces to the per-mode formula") {
    SystemParams p = test::default_params();
    p.r = 1;
    const ChannelSet ch = test::make_channels(9, p);
    const DiagonalizedSystem sys = diagonalize(ch, p);
    PowerAllocation alloc;
    alloc.lambda_f = Eigen::VectorXd::Constant(1, 0.3);
    alloc.lambda_rs = Eigen::VectorXd::Constant(1, 0.002);
    const Eigen::MatrixXcd F = assemble_relay_matrix(sys, alloc.lambda_f);
    const Eigen::MatrixXcd Q_S = assemble_source_covariance(sys, alloc.lambda_rs);
    const double d = rate_diagonal(alloc, sys, p);
    const double e = rate_exact_matrix(
        F, Q_S, Eigen::MatrixXcd::Zero(1, 1), ch, p);
    CHECK(test::rel_diff(d, e) < 1e-9);
}

TEST_CASE("a single iteration runs one relay and one source update") {
    SystemParams p = test::default_params();
    p.max_iter = 1;
    p.eps = 1e-30;
    const ChannelSet ch = test::make_channels(5, p);
    const RunResult res = run_ao(ch, p, Scheme::P3B);
    CHECK(res.iterations == 1);
    CHECK_FALSE(res.converged);
    CHECK(res.trace.size() == 1);
    CHECK((res.allocation.lambda_f.array() > 0.0).all());
    CHECK((res.allocation.lambda_rs.array() > 0.0).all());
}

TEST_CASE("both schemes converge with monotone traces on a seed batch") {
    SystemParams p = test::default_params();
    AoOptions opts;
    opts.monotone = MonotoneCheck::Throw;
    for (const Scheme scheme : {Scheme::P3B, Scheme::P3C}) {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const ChannelSet ch = test::make_channels(seed, p);
            const RunResult res = run_ao(ch, p, scheme, opts);
            CHECK(res.converged);
            CHECK(res.iterations <= p.max_iter);
            for (std::size_t k = 1; k < res.trace.size(); ++k)
                CHECK(res.trace[k] <= res.trace[k - 1] + 1e-12);
            CHECK(res.rate_exact > 0.0);
        }
    }
}

TEST_CASE("converged allocations satisfy the cross-form identities") {
    SystemParams p = test::default_params();
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const ChannelSet ch = test::make_channels(seed, p);
        const DiagonalizedSystem sys = diagonalize(ch, p);
        const RunResult res = run_ao(ch, p, Scheme::P3B);
        REQUIRE(res.converged);

        const Eigen::MatrixXcd F = assemble_relay_matrix(sys, res.allocation.lambda_f);
        const Eigen::MatrixXcd Q_S =
            assemble_source_covariance(sys, res.allocation.lambda_rs);
        const Eigen::MatrixXcd Q_D = design_energy_beam(ch.H_RD, p.P_D).Q_D;
        CHECK(test::rel_diff(res.rate_exact, rate_exact_matrix(F, Q_S, Q_D, ch, p)) <
              1e-9);
        CHECK(power_conservation_residual(ch, p, sys, res.allocation) <= 1e-8);
    }
}

TEST_CASE("high-SNR surrogate tracks the exact rate above SNR 100") {
    SystemParams p = test::default_params();
    p.sigma2 = 1e-9;  // push every mode deep into the high-SNR regime
    const ChannelSet ch = test::make_channels(12, p);
    const DiagonalizedSystem sys = diagonalize(ch, p);
    const RunResult res = run_ao(ch, p, Scheme::P3B);
    REQUIRE(res.converged);
    const auto lf = res.allocation.lambda_f.array();
    const auto lt = res.allocation.lambda_rs.array();
    const Eigen::ArrayXd snr = (1.0 - p.rho) * lt * lf * sys.lambda_dr.array() /
                               (p.sigma2 * (1.0 + lf * sys.lambda_dr.array()));
    REQUIRE(snr.minCoeff() > 100.0);
    CHECK(std::abs(res.rate_highsnr - res.rate_exact) / res.rate_exact < 0.01);
}

TEST_CASE("different feasible starts land on comparable rates (logged)") {
    SystemParams p = test::default_params();
    const ChannelSet ch = test::make_channels(33, p);
    const RunResult a = run_ao(ch, p, Scheme::P3B);

    const DiagonalizedSystem sys = diagonalize(ch, p);
    AoOptions opts;
    PowerAllocation init;
    init.lambda_rs = Eigen::VectorXd::Constant(p.r, 0.9 * p.P_S / sys.w.sum());
    init.lambda_f = Eigen::VectorXd::Ones(p.r);
    opts.init = init;
    const RunResult b = run_ao(ch, p, Scheme::P3B, opts);
    WARN_MESSAGE(test::rel_diff(a.rate_exact, b.rate_exact) < 1e-4,
                 "init sensitivity: ", a.rate_exact, " vs ", b.rate_exact);
}

TEST_CASE("run_ao refuses the baseline scheme") {
    const SystemParams p = test::default_params();
    const ChannelSet ch = test::make_channels(2, p);
    CHECK_THROWS_AS(run_ao(ch, p, Scheme::NOEF), std::invalid_argument);
}

}  // TEST_SUITE
