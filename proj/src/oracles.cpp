// SPDX-License-Identifier: Apache-2.0
//
// wptrelay - rate optimization for wireless-powered MIMO AF relay links
// Copyright (C) 2026 wptrelay contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "wptrelay/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "wptrelay/errors.hpp"
#include "wptrelay/rng.hpp"

namespace wpt {

OracleReport OracleReport::make(std::string name, int instances, double max_violation,
                                double tolerance, std::uint64_t seed, std::string note) {
    OracleReport r;
    r.name = std::move(name);
    r.instances = instances;
    r.max_violation = max_violation;
    r.tolerance = tolerance;
    r.passed = max_violation <= tolerance;
    r.seed = seed;
    r.note = std::move(note);
    return r;
}

namespace {

double relay_objective(const RelayProblem& prob, const Eigen::VectorXd& lambda_f) {
    const auto lf = lambda_f.array();
    const auto lt = prob.lambda_rs.array();
    const auto ld = prob.lambda_dr.array();
    return ((1.0 - prob.rho) * lt * lf * ld / (prob.sigma2 * (1.0 + lf * ld)))
        .log()
        .sum();
}

}  // namespace

GridSearchResult grid_search_relay(const RelayProblem& prob, int grid_n) {
    if (prob.z.size() != 2)
        throw std::invalid_argument("grid_search_relay handles r = 2 only");
    if (grid_n < 100) throw std::invalid_argument("grid_n must be >= 100");

    GridSearchResult out;
    out.best_point = Eigen::VectorXd::Zero(2);
    out.best_value = -std::numeric_limits<double>::infinity();
    if (!(prob.budget > 0.0)) return out;  // segment collapses to the origin

    const double max1 = prob.budget / prob.z(0);
    for (int i = 1; i < grid_n; ++i) {
        const double lf1 = max1 * double(i) / grid_n;
        const double lf2 = (prob.budget - lf1 * prob.z(0)) / prob.z(1);
        if (!(lf2 > 0.0)) continue;
        Eigen::VectorXd lf(2);
        lf << lf1, lf2;
        const double val = relay_objective(prob, lf);
        if (val > out.best_value) {
            out.best_value = val;
            out.best_point = lf;
        }
    }
    out.feasible = std::isfinite(out.best_value);
    return out;
}

OracleReport exhaustive_pairing_check(const RelayProblem& prob, double tol,
                                      std::uint64_t seed) {
    const Eigen::Index r = prob.z.size();
    if (r > 4)
        throw std::invalid_argument("exhaustive_pairing_check handles r <= 4 only");

    const double c = prob.beta.sum();
    const Eigen::ArrayXd l = (1.0 - prob.rho) * prob.lambda_rs.array() + prob.sigma2;

    const auto config_objective = [&](const std::vector<int>& perm, int leak_slot) {
        Eigen::VectorXd lt(r), beta(r);
        for (Eigen::Index m = 0; m < r; ++m) {
            lt(m) = prob.lambda_rs(perm[m]);
            beta(m) = (perm[m] == leak_slot) ? c : 0.0;
        }
        const RelayProblem cfg = RelayProblem::from_parts(
            lt, prob.lambda_dr, beta, prob.rho, prob.sigma2, prob.P_D,
            prob.lambda_dr_max);
        const RelaySolution sol = solve_relay_power(cfg);
        return relay_objective(cfg, sol.lambda_f);
    };

    std::vector<int> idx(r);
    std::iota(idx.begin(), idx.end(), 0);
    const double reference = config_objective(idx, int(r) - 1);

    double best_other = -std::numeric_limits<double>::infinity();
    int configs = 0;
    std::vector<int> perm = idx;
    std::sort(perm.begin(), perm.end());
    do {
        for (int leak = 0; leak < r; ++leak) {
            best_other = std::max(best_other, config_objective(perm, leak));
            ++configs;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    const double violation = std::max(0.0, best_other - reference);
    return OracleReport::make("pairing_exhaustive", configs, violation, tol, seed);
}

namespace {

Eigen::VectorXd cumulative(const Eigen::VectorXd& u) {
    Eigen::VectorXd x(u.size());
    double acc = 0.0;
    for (Eigen::Index k = 0; k < u.size(); ++k) {
        acc += u(k);
        x(k) = acc;
    }
    return x;
}

// Random point of {y > 0 (after flooring), dot(coef, y) = target, extra
// budget respected}: a Dirichlet mixture of the single-coordinate
// solutions plus a uniform floor, with the equality restored exactly.
bool sample_equality_slice(Rng& rng, const Eigen::VectorXd& coef, double target,
                           Eigen::VectorXd& out) {
    const Eigen::Index r = coef.size();
    std::vector<Eigen::Index> verts;
    for (Eigen::Index k = 0; k < r; ++k)
        if (coef(k) != 0.0 && target / coef(k) > 0.0) verts.push_back(k);
    if (verts.empty()) return false;

    Eigen::VectorXd theta(Eigen::Index(verts.size()));
    for (Eigen::Index k = 0; k < theta.size(); ++k)
        theta(k) = -std::log(rng.uniform01());
    theta /= theta.sum();

    const double scale = std::abs(target) / coef.cwiseAbs().sum();
    Eigen::VectorXd y = Eigen::VectorXd::Constant(r, rng.uniform01() * 0.05 * scale);
    for (Eigen::Index k = 0; k < theta.size(); ++k)
        y(verts[size_t(k)]) += theta(k) * target / coef(verts[size_t(k)]);

    const Eigen::Index kfix = verts[size_t(rng.next_u64() % verts.size())];
    y(kfix) += (target - coef.dot(y)) / coef(kfix);
    if (!(y.array() > 0.0).all()) return false;
    out = y;
    return true;
}

}  // namespace

OracleReport random_feasible_dominance(const SourceProblem& prob,
                                       const Eigen::VectorXd& candidate,
                                       Scheme which, int n_samples,
                                       std::uint64_t seed) {
    if (n_samples < 100) throw std::invalid_argument("n_samples must be >= 100");
    if (which != Scheme::P3B && which != Scheme::P3C)
        throw std::invalid_argument("dominance oracle covers the source schemes only");

    Rng rng(seed ^ 0x6f7261636c65ULL);  // stream separated from production seeds
    const double cand_obj = p3b_objective(candidate, prob.lambda_f, prob.lambda_dr,
                                          prob.rho, prob.sigma2);
    const double cap = prob.P_S / prob.h_e_max2;

    Eigen::VectorXd p, budget_w;
    double budget_cap;
    if (which == Scheme::P3B) {
        p.resize(prob.a.size());
        budget_w.resize(prob.a.size());
        double accp = 0.0, accq = 0.0;
        for (Eigen::Index k = prob.a.size() - 1; k >= 0; --k) {
            accp += prob.a(k);
            accq += prob.w(k);
            p(k) = accp;
            budget_w(k) = accq;
        }
        budget_cap = prob.P_S;
    } else {
        p = prob.a;
        budget_w = Eigen::VectorXd::Ones(prob.a.size());
        budget_cap = cap;
    }

    double worst = 0.0;
    int accepted = 0;
    const int attempts = n_samples * 60;
    for (int t = 0; t < attempts && accepted < n_samples; ++t) {
        Eigen::VectorXd y;
        if (!sample_equality_slice(rng, p, prob.b, y)) break;
        if (budget_w.dot(y) > budget_cap) continue;
        const Eigen::VectorXd x = (which == Scheme::P3B) ? cumulative(y) : y;
        if (!(x.array() > 0.0).all()) continue;
        ++accepted;
        const double obj =
            p3b_objective(x, prob.lambda_f, prob.lambda_dr, prob.rho, prob.sigma2);
        worst = std::max(worst, obj - cand_obj);
    }

    const std::string name = (which == Scheme::P3B) ? "p3b_dominance" : "p3c_dominance";
    if (accepted == 0)
        return OracleReport::make(name, 0, 0.0, 1e-6, seed,
                                  "inconclusive: sampler found no feasible points");
    return OracleReport::make(name, accepted, worst, 1e-6, seed);
}

OracleReport energy_beam_dominance(const Eigen::MatrixXcd& H_RD, const EnergyBeam& beam,
                                   double P_D, int n_samples, std::uint64_t seed) {
    Rng rng(seed ^ 0x6265616dULL);
    const Eigen::Index r = H_RD.rows();
    const auto harvested = [&](const Eigen::MatrixXcd& Q) {
        return (H_RD * Q * H_RD.adjoint()).trace().real();
    };
    const double beam_power = harvested(beam.Q_D);
    const double scale = std::max(beam_power, 1e-300);

    double worst = 0.0;
    for (int t = 0; t < n_samples; ++t) {
        Eigen::MatrixXcd G(r, r);
        for (Eigen::Index j = 0; j < r; ++j)
            for (Eigen::Index i = 0; i < r; ++i) G(i, j) = rng.cgaussian();
        Eigen::MatrixXcd Q = G * G.adjoint();
        const double tr = Q.trace().real();
        Q *= (tr > 0.0 ? P_D / tr : 0.0);
        worst = std::max(worst, (harvested(Q) - beam_power) / scale);
    }
    return OracleReport::make("energy_beam_dominance", n_samples, worst, 1e-9, seed);
}

OracleReport leakage_bound_check(const ChannelSet& channels, const SystemParams& params,
                                 int n_perms, std::uint64_t seed) {
    Rng rng(seed ^ 0x6c65616bULL);
    const DiagonalizedSystem sys = diagonalize(channels, params);
    const int r = params.r;
    const EnergyBeam beam = design_energy_beam(channels.H_RD, params.P_D);
    const Eigen::MatrixXcd harvested_mat =
        channels.H_RD * beam.Q_D * channels.H_RD.adjoint();

    // Random strictly decreasing amplification profile.
    Eigen::VectorXd lambda_f(r);
    for (int m = 0; m < r; ++m) lambda_f(m) = 0.1 + std::abs(rng.gaussian());
    std::sort(lambda_f.data(), lambda_f.data() + r, std::greater<double>());

    const double bound = (params.rho - (1.0 - params.rho) * lambda_f(r - 1)) *
                         params.P_D * sys.lambda_dr_max;
    const double scale = std::max(1.0, std::abs(bound));

    const Eigen::VectorXcd weight =
        (params.rho - (1.0 - params.rho) * lambda_f.array())
            .matrix()
            .cast<std::complex<double>>();
    const auto expression = [&](const Eigen::MatrixXd& P) {
        const Eigen::MatrixXcd basis = sys.V_dr.conjugate() * P.transpose();
        return (weight.asDiagonal() * (basis.adjoint() * harvested_mat * basis))
            .trace()
            .real();
    };

    double violation =
        std::abs(expression(Eigen::MatrixXd::Identity(r, r)) - bound) / scale;
    for (int t = 0; t < n_perms; ++t) {
        std::vector<int> idx(r);
        std::iota(idx.begin(), idx.end(), 0);
        for (int k = r - 1; k > 0; --k)
            std::swap(idx[size_t(k)], idx[rng.next_u64() % std::uint64_t(k + 1)]);
        Eigen::MatrixXd P = Eigen::MatrixXd::Zero(r, r);
        for (int m = 0; m < r; ++m) P(idx[size_t(m)], m) = 1.0;
        violation = std::max(violation, (expression(P) - bound) / scale);
    }
    return OracleReport::make("leakage_bound", n_perms + 1, violation, 1e-10, seed);
}

namespace {

RelayProblem random_relay_problem(Rng& rng, int r, bool with_leak) {
    Eigen::VectorXd lt(r), ld(r);
    for (int m = 0; m < r; ++m) lt(m) = std::exp(rng.gaussian());
    for (int m = 0; m < r; ++m) ld(m) = std::exp(rng.gaussian());
    std::sort(lt.data(), lt.data() + r);
    std::sort(ld.data(), ld.data() + r);
    const double rho = 0.2 + 0.6 * rng.uniform01();
    const double sigma2 = 1e-3 * (0.5 + rng.uniform01());
    const double P_D = with_leak ? rng.uniform01() : 0.0;
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(r);
    beta(r - 1) = (1.0 - rho) * P_D * ld(r - 1);
    return RelayProblem::from_parts(lt, ld, beta, rho, sigma2, P_D, ld(r - 1));
}

struct SuiteAccumulator {
    OracleReport report;
    bool first = true;

    void add(const OracleReport& r) {
        if (first) {
            report = r;
            first = false;
            return;
        }
        report.instances += r.instances;
        report.max_violation = std::max(report.max_violation, r.max_violation);
        report.passed = report.passed && r.passed;
        if (!r.note.empty()) report.note = r.note;
    }
};

}  // namespace

std::vector<OracleReport> run_validation_suite(std::uint64_t seed) {
    std::vector<OracleReport> reports;
    Rng rng(seed);

    {  // closed form vs brute-force grid, r = 2
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const RelayProblem prob = random_relay_problem(rng, 2, true);
            const RelaySolution sol = solve_relay_power(prob);
            const GridSearchResult grid = grid_search_relay(prob, 10000);
            worst = std::max(worst,
                             std::abs(relay_objective(prob, sol.lambda_f) - grid.best_value));
        }
        reports.push_back(OracleReport::make("relay_closed_form_vs_grid", 20, worst,
                                             1e-5, seed));
    }

    {  // pairing optimality, exhaustive
        SuiteAccumulator acc;
        for (int i = 0; i < 10; ++i)
            acc.add(exhaustive_pairing_check(random_relay_problem(rng, 3, true), 1e-9, seed));
        for (int i = 0; i < 3; ++i)
            acc.add(exhaustive_pairing_check(random_relay_problem(rng, 4, true), 1e-9, seed));
        acc.report.name = "pairing_exhaustive";
        reports.push_back(acc.report);
    }

    {  // end-to-end instances for the source solvers and the beam
        SuiteAccumulator p3b_acc, p3c_acc, beam_acc, leak_acc;
        SystemParams params;
        for (int i = 0; i < 8; ++i) {
            params.rho = 0.3 + 0.5 * rng.uniform01();
            Geometry geom{10.0, 0.3 + 0.5 * rng.uniform01()};
            const std::uint64_t ch_seed = rng.next_u64();
            const ChannelSet ch = generate_channels(params, geom, ch_seed);
            const DiagonalizedSystem sys = diagonalize(ch, params);

            Eigen::VectorXd lt0 = (params.P_S / (params.r * sys.w.array())).matrix();
            std::sort(lt0.data(), lt0.data() + lt0.size());
            lt0 *= params.P_S / sys.w.dot(lt0);
            const RelaySolution rs =
                solve_relay_power(RelayProblem::make(sys, lt0, params));
            const SourceProblem sp = SourceProblem::make(sys, rs.lambda_f, params);

            p3b_acc.add(random_feasible_dominance(sp, solve_p3b(sp), Scheme::P3B, 1000,
                                                  ch_seed));
            p3c_acc.add(random_feasible_dominance(sp, solve_p3c(sp).lambda_rs,
                                                  Scheme::P3C, 1000, ch_seed));
            const EnergyBeam beam = design_energy_beam(ch.H_RD, params.P_D);
            beam_acc.add(energy_beam_dominance(ch.H_RD, beam, params.P_D, 100, ch_seed));
            leak_acc.add(leakage_bound_check(ch, params, 50, ch_seed));
        }
        p3b_acc.report.name = "p3b_dominance";
        p3c_acc.report.name = "p3c_dominance";
        beam_acc.report.name = "energy_beam_dominance";
        leak_acc.report.name = "leakage_bound";
        reports.push_back(p3b_acc.report);
        reports.push_back(p3c_acc.report);
        reports.push_back(beam_acc.report);
        reports.push_back(leak_acc.report);
    }

    return reports;
}

}  // namespace wpt
