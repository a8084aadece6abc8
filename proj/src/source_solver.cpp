// SPDX-License-Identifier: Apache-2.0
//
// wptrelay - rate optimization for wireless-powered MIMO AF relay links
// Copyright (C) 2026 wptrelay contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "wptrelay/source_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "wptrelay/barrier.hpp"
#include "wptrelay/errors.hpp"

namespace wpt {

SourceProblem SourceProblem::from_parts(const Eigen::VectorXd& lambda_f,
                                        const Eigen::VectorXd& lambda_dr,
                                        const Eigen::VectorXd& beta,
                                        const Eigen::VectorXd& w, double rho,
                                        double sigma2, double P_S, double P_D,
                                        double lambda_dr_max) {
    const Eigen::Index r = lambda_f.size();
    if (lambda_dr.size() != r || beta.size() != r || w.size() != r)
        throw std::invalid_argument("source problem vectors must share one length");
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must be in (0,1)");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("sigma2 must be > 0");
    if (!(P_S > 0.0)) throw std::invalid_argument("P_S must be > 0");
    if ((w.array() <= 0.0).any())
        throw std::invalid_argument("weights must be positive");

    SourceProblem p;
    p.lambda_f = lambda_f;
    p.lambda_dr = lambda_dr;
    p.beta = beta;
    p.w = w;
    p.rho = rho;
    p.sigma2 = sigma2;
    p.P_S = P_S;
    p.P_D = P_D;
    p.lambda_dr_max = lambda_dr_max;
    p.a = lambda_f.array() * (1.0 - rho) - rho;
    p.b = rho * P_D * lambda_dr_max -
          ((sigma2 + beta.array()) * lambda_f.array()).sum();
    p.h_e_max2 = w.maxCoeff();
    return p;
}

SourceProblem SourceProblem::make(const DiagonalizedSystem& sys,
                                  const Eigen::VectorXd& lambda_f,
                                  const SystemParams& params) {
    return from_parts(lambda_f, sys.lambda_dr, sys.beta, sys.w, params.rho,
                      params.sigma2, params.P_S, params.P_D, sys.lambda_dr_max);
}

double p3b_objective(const Eigen::VectorXd& lambda_rs,
                     const Eigen::VectorXd& lambda_f,
                     const Eigen::VectorXd& lambda_dr, double rho, double sigma2) {
    if ((lambda_rs.array() <= 0.0).any() || (lambda_f.array() <= 0.0).any() ||
        (lambda_dr.array() <= 0.0).any())
        throw std::invalid_argument("p3b_objective: all mode values must be positive");
    const auto x = lambda_rs.array();
    const auto lf = lambda_f.array();
    const auto ld = lambda_dr.array();
    return ((1.0 - rho) * x * lf * ld / (sigma2 * (1.0 + lf * ld))).log().sum();
}

namespace {

struct ActiveRoot {
    Eigen::VectorXd lambda_rs;
    double mu = 0.0;
    double gamma2 = 0.0;
    bool ok = false;
};

double active_res1(const Eigen::ArrayXd& denom, double cap) {
    return denom.inverse().sum() - cap;
}

// Both multiplier equations reduce, for b != 0, to a one-dimensional root
// find in gamma2: the equality constraint fixes mu(gamma2) =
// (r - gamma2*cap)/b, leaving only the tight-budget condition.
ActiveRoot solve_active_branch(const SourceProblem& prob, double cap) {
    ActiveRoot out;
    const Eigen::Index r = prob.a.size();
    if (prob.b == 0.0) return out;  // degenerate reduction; caller falls back

    const Eigen::ArrayXd slope = 1.0 - cap * prob.a.array() / prob.b;
    const Eigen::ArrayXd offset = double(r) * prob.a.array() / prob.b;
    // Denominators g2*slope + offset must all be positive.
    double glo = 0.0;
    double ghi = std::numeric_limits<double>::infinity();
    for (Eigen::Index m = 0; m < r; ++m) {
        if (slope(m) > 0.0)
            glo = std::max(glo, -offset(m) / slope(m));
        else if (slope(m) < 0.0)
            ghi = std::min(ghi, -offset(m) / slope(m));
        else if (offset(m) <= 0.0)
            return out;
    }
    if (!(glo < ghi)) return out;

    const auto denom_at = [&](double g2) -> Eigen::ArrayXd {
        return g2 * slope + offset;
    };
    const auto phi = [&](double g2) { return active_res1(denom_at(g2), cap); };

    // Bracket: phi -> +inf at a pole end; scan for the sign change.
    const double span = std::isfinite(ghi) ? (ghi - glo) : std::max(1.0, glo);
    double gl = glo + 1e-13 * std::max(span, 1.0);
    double gr;
    if (std::isfinite(ghi)) {
        gr = ghi - 1e-13 * std::max(span, 1.0);
    } else {
        gr = std::max(glo * 2.0 + 1.0, glo + double(r) / cap);
        int expand = 0;
        while (phi(gr) > 0.0 && expand++ < 200) gr = glo + (gr - glo) * 2.0;
        if (phi(gr) > 0.0) return out;
    }
    if (phi(gl) < 0.0 || phi(gr) > 0.0) {
        // Endpoints did not bracket; look for an interior sign change.
        const int K = 1024;
        bool found = false;
        double prev_g = gl, prev_phi = phi(gl);
        for (int k = 1; k <= K; ++k) {
            const double g = gl + (gr - gl) * double(k) / K;
            const double ph = phi(g);
            if (prev_phi > 0.0 && ph <= 0.0) {
                gl = prev_g;
                gr = g;
                found = true;
                break;
            }
            prev_g = g;
            prev_phi = ph;
        }
        if (!found) return out;
    }

    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (gl + gr);
        if (phi(mid) > 0.0)
            gl = mid;
        else
            gr = mid;
        if (gr - gl <= 1e-15 * std::max(1.0, gr)) break;
    }
    double g2 = 0.5 * (gl + gr);
    double mu = (double(r) - g2 * cap) / prob.b;

    // Newton polish on the full two-equation system.
    for (int it = 0; it < 25; ++it) {
        const Eigen::ArrayXd d = g2 + mu * prob.a.array();
        if ((d <= 0.0).any()) break;
        const Eigen::ArrayXd lt = d.inverse();
        const double F1 = lt.sum() - cap;
        const double F2 = (prob.a.array() * lt).sum() - prob.b;
        const Eigen::ArrayXd lt2 = lt.square();
        const double J11 = -lt2.sum();
        const double J12 = -(prob.a.array() * lt2).sum();
        const double J22 = -(prob.a.array().square() * lt2).sum();
        const double det = J11 * J22 - J12 * J12;
        if (std::abs(det) < 1e-300) break;
        double dg = -(J22 * F1 - J12 * F2) / det;
        double dm = -(-J12 * F1 + J11 * F2) / det;
        double alpha = 1.0;
        while (alpha > 1e-12 &&
               (((g2 + alpha * dg) + (mu + alpha * dm) * prob.a.array()) <= 0.0).any())
            alpha *= 0.5;
        g2 += alpha * dg;
        mu += alpha * dm;
        if (std::abs(F1) <= 1e-12 * cap && std::abs(F2) <= 1e-12 * (1.0 + std::abs(prob.b)))
            break;
    }
    if (g2 < 0.0) return out;

    const Eigen::ArrayXd d = g2 + mu * prob.a.array();
    if ((d <= 0.0).any()) return out;
    const Eigen::VectorXd lt = d.inverse().matrix();
    const double res1 = std::abs(lt.sum() - cap) / cap;
    const double scale2 = std::max(std::abs(prob.b), (prob.a.array().abs() * lt.array()).sum());
    const double res2 = std::abs(prob.a.dot(lt) - prob.b) / std::max(scale2, 1e-300);
    if (res1 > 1e-8 || res2 > 1e-8) return out;

    out.lambda_rs = lt;
    out.mu = mu;
    out.gamma2 = g2;
    out.ok = true;
    return out;
}

// Strictly feasible point of {x > 0, sum(x) < cap (strict), dot(a,x) = b}.
// The cheapest-budget vertex of the equality slice sits on a single
// coordinate, so blending a vertex with a small uniform component scans
// the whole feasible range.
Eigen::VectorXd p3c_strict_point(const Eigen::VectorXd& a, double b, double cap) {
    const Eigen::Index r = a.size();
    const double scale = std::max(std::abs(b) / std::max(a.cwiseAbs().sum(), 1e-300),
                                  1e-6 * cap);
    std::vector<Eigen::Index> order;
    for (Eigen::Index k = 0; k < r; ++k)
        if (a(k) != 0.0 && b / a(k) > 0.0) order.push_back(k);
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index i, Eigen::Index j) { return b / a(i) < b / a(j); });

    const double asum = a.sum();
    for (const double eps : {1e-2, 1e-4, 1e-6, 1e-9, 1e-12}) {
        const double floor_val = eps * scale;
        for (const Eigen::Index k : order) {
            Eigen::VectorXd x = Eigen::VectorXd::Constant(r, floor_val);
            x(k) += (b - floor_val * asum) / a(k);
            if ((x.array() > 0.0).all() && x.sum() < cap * (1.0 - 1e-12)) return x;
        }
        if (b == 0.0) {
            // A sign-mixed pair spans the equality away from the origin.
            for (Eigen::Index i = 0; i < r; ++i) {
                if (a(i) <= 0.0) continue;
                for (Eigen::Index j = 0; j < r; ++j) {
                    if (a(j) >= 0.0) continue;
                    Eigen::VectorXd dir = Eigen::VectorXd::Zero(r);
                    dir(i) = -a(j);
                    dir(j) = a(i);  // dot(a, dir) = 0, both entries positive
                    Eigen::VectorXd x = Eigen::VectorXd::Constant(r, floor_val);
                    x += (0.1 * cap / dir.sum()) * dir;
                    x(i) += (b - a.dot(x)) / a(i);
                    if ((x.array() > 0.0).all() && x.sum() < cap * (1.0 - 1e-12)) return x;
                }
            }
        }
    }
    throw InfeasibleError(
        "source power allocation (uniform-weight relaxation) is infeasible: no "
        "positive point meets the power-conservation equality within the budget");
}

Eigen::VectorXd p3c_barrier(const SourceProblem& prob, double cap) {
    const Eigen::Index r = prob.a.size();
    BarrierSpec spec;
    spec.R = Eigen::MatrixXd::Identity(r, r);
    spec.C = Eigen::MatrixXd::Ones(1, r);
    spec.d = Eigen::VectorXd::Constant(1, cap);
    spec.E = prob.a.transpose();
    spec.f = Eigen::VectorXd::Constant(1, prob.b);
    const Eigen::VectorXd x0 = p3c_strict_point(prob.a, prob.b, cap);
    return barrier_minimize(spec, x0);
}

}  // namespace

P3cSolution solve_p3c(const SourceProblem& prob) {
    const Eigen::Index r = prob.a.size();
    for (Eigen::Index m = 0; m < r; ++m)
        if (prob.a(m) == 0.0)
            throw std::invalid_argument(
                "solve_p3c: degenerate instance, a coefficient is exactly zero");
    const double cap = prob.P_S / prob.h_e_max2;

    if (prob.b != 0.0) {
        const double mu = double(r) / prob.b;
        const Eigen::ArrayXd cand = (mu * prob.a.array()).inverse();
        // The boundary case (sum exactly at the cap) is classified as the
        // tight-budget branch; both branches coincide there.
        if ((cand > 0.0).all() && cand.sum() <= cap * (1.0 - 1e-10))
            return {cand.matrix(), P3cBranch::Interior, mu, 0.0};

        const ActiveRoot root = solve_active_branch(prob, cap);
        if (root.ok) return {root.lambda_rs, P3cBranch::Active, root.mu, root.gamma2};
    }

    // Root find unavailable or failed; numeric solve on the same set.
    const Eigen::VectorXd lt = p3c_barrier(prob, cap);
    // Recover multipliers from stationarity 1/x = gamma2 + mu*a.
    Eigen::MatrixXd A(r, 2);
    A.col(0) = Eigen::VectorXd::Ones(r);
    A.col(1) = prob.a;
    const Eigen::VectorXd rhs = lt.array().inverse().matrix();
    const Eigen::Vector2d mult = A.colPivHouseholderQr().solve(rhs);
    return {lt, P3cBranch::Active, mult(1), mult(0)};
}

namespace {

Eigen::VectorXd suffix_sums(const Eigen::VectorXd& v) {
    Eigen::VectorXd s(v.size());
    double acc = 0.0;
    for (Eigen::Index k = v.size() - 1; k >= 0; --k) {
        acc += v(k);
        s(k) = acc;
    }
    return s;
}

Eigen::VectorXd cumulative(const Eigen::VectorXd& u) {
    Eigen::VectorXd x(u.size());
    double acc = 0.0;
    for (Eigen::Index k = 0; k < u.size(); ++k) {
        acc += u(k);
        x(k) = acc;
    }
    return x;
}

bool p3b_point_ok(const Eigen::VectorXd& u, const Eigen::VectorXd& p,
                  const Eigen::VectorXd& q, double b, double P_S) {
    if (!(u.array() > 0.0).all()) return false;
    if (!(q.dot(u) < P_S * (1.0 - 1e-12))) return false;
    return std::abs(p.dot(u) - b) <= 1e-9 * std::max(1.0, std::abs(b));
}

// Strictly feasible increment vector for the ordered problem; empty when
// no strictly interior point was found.
std::optional<Eigen::VectorXd> p3b_strict_point(
    const Eigen::VectorXd& p, const Eigen::VectorXd& q, double b, double P_S,
    const std::optional<Eigen::VectorXd>& warm) {
    const Eigen::Index r = p.size();

    if (warm && warm->size() == r && (warm->array() > 0.0).all()) {
        Eigen::VectorXd base(r);
        base(0) = (*warm)(0);
        for (Eigen::Index k = 1; k < r; ++k) base(k) = (*warm)(k) - (*warm)(k - 1);
        const double floor_val = 1e-10 * warm->maxCoeff();
        Eigen::Index kfix;
        p.cwiseAbs().maxCoeff(&kfix);
        // Warm iterates often sit on the budget boundary; shrink a little
        // before restoring the equality along the stiffest coordinate.
        for (const double shrink : {1.0, 1.0 - 1e-6, 1.0 - 1e-3}) {
            Eigen::VectorXd u = (shrink * base).cwiseMax(floor_val);
            if (p(kfix) == 0.0) break;
            u(kfix) += (b - p.dot(u)) / p(kfix);
            if (p3b_point_ok(u, p, q, b, P_S)) return u;
        }
    }

    const double scale = std::max(std::abs(b) / std::max(p.cwiseAbs().sum(), 1e-300),
                                  1e-9 * P_S / q.maxCoeff());
    std::vector<Eigen::Index> order;
    for (Eigen::Index k = 0; k < r; ++k)
        if (p(k) != 0.0 && b / p(k) > 0.0) order.push_back(k);
    std::sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        return q(i) * b / p(i) < q(j) * b / p(j);
    });

    const double psum = p.sum();
    for (const double eps : {1e-2, 1e-4, 1e-6, 1e-9, 1e-12}) {
        const double floor_val = eps * scale;
        for (const Eigen::Index k : order) {
            Eigen::VectorXd u = Eigen::VectorXd::Constant(r, floor_val);
            u(k) += (b - floor_val * psum) / p(k);
            if (p3b_point_ok(u, p, q, b, P_S)) return u;
        }
        if (b == 0.0) {
            // A sign-mixed pair spans the equality away from the origin.
            for (Eigen::Index i = 0; i < r; ++i) {
                if (p(i) <= 0.0) continue;
                for (Eigen::Index j = 0; j < r; ++j) {
                    if (p(j) >= 0.0) continue;
                    Eigen::VectorXd dir = Eigen::VectorXd::Zero(r);
                    dir(i) = -p(j);
                    dir(j) = p(i);  // dot(p, dir) = 0, both entries positive
                    Eigen::VectorXd u = Eigen::VectorXd::Constant(r, floor_val);
                    u += (0.1 * P_S / q.dot(dir)) * dir;
                    u(i) += (b - p.dot(u)) / p(i);
                    if (p3b_point_ok(u, p, q, b, P_S)) return u;
                }
            }
        }
    }
    return std::nullopt;
}

// When every feasible point spends the budget exactly, pin it as a second
// equality and solve on that slice. Basic solutions of the two-equality
// system live on coordinate pairs; a floored pair seeds the barrier.
Eigen::VectorXd solve_p3b_tight_budget(const Eigen::VectorXd& p,
                                       const Eigen::VectorXd& q, double b,
                                       double P_S) {
    const Eigen::Index r = p.size();
    const double scale = std::max(std::abs(b) / std::max(p.cwiseAbs().sum(), 1e-300),
                                  1e-9 * P_S / q.maxCoeff());

    Eigen::MatrixXd E(2, r);
    E.row(0) = p.transpose();
    E.row(1) = q.transpose();
    Eigen::VectorXd f(2);
    f << b, P_S;

    const auto corrected = [&](Eigen::VectorXd u, Eigen::Index i,
                               Eigen::Index j) -> std::optional<Eigen::VectorXd> {
        Eigen::Matrix2d M;
        M << p(i), p(j), q(i), q(j);
        if (std::abs(M.determinant()) < 1e-14 * p.cwiseAbs().maxCoeff() *
                                            q.cwiseAbs().maxCoeff())
            return std::nullopt;
        Eigen::Vector2d rhs;
        rhs << b - p.dot(u), P_S - q.dot(u);
        const Eigen::Vector2d delta = M.partialPivLu().solve(rhs);
        u(i) += delta(0);
        u(j) += delta(1);
        // Basic solutions sit exactly on the boundary; absorb rounding.
        const double slack = 1e-12 * std::max(scale, u.cwiseAbs().maxCoeff());
        if (!(u.array() >= -slack).all()) return std::nullopt;
        u = u.cwiseMax(0.0);
        return u;
    };

    std::optional<Eigen::VectorXd> basic;  // non-strict fallback point
    for (const double eps : {1e-2, 1e-4, 1e-6, 1e-9, 0.0}) {
        for (Eigen::Index i = 0; i < r && !basic; ++i)
            for (Eigen::Index j = i + 1; j < r; ++j) {
                const auto u =
                    corrected(Eigen::VectorXd::Constant(r, eps * scale), i, j);
                if (!u) continue;
                if (eps > 0.0 && (u->array() > 0.0).all()) {
                    BarrierSpec spec;
                    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(r, r);
                    for (Eigen::Index ii = 0; ii < r; ++ii)
                        for (Eigen::Index jj = 0; jj <= ii; ++jj) L(ii, jj) = 1.0;
                    spec.R = L;
                    spec.C = -Eigen::MatrixXd::Identity(r, r);
                    spec.d = Eigen::VectorXd::Zero(r);
                    spec.E = E;
                    spec.f = f;
                    return cumulative(barrier_minimize(spec, *u));
                }
                if (eps == 0.0 && (*u)(0) > 0.0) basic = u;
            }
        if (basic) break;
    }
    if (basic) return cumulative(*basic);  // slice has no relative interior
    throw InfeasibleError(
        "source power allocation is infeasible: no ordered positive point meets the "
        "power-conservation equality within the weighted budget");
}

}  // namespace

Eigen::VectorXd solve_p3b(const SourceProblem& prob,
                          const std::optional<Eigen::VectorXd>& warm_start) {
    const Eigen::Index r = prob.a.size();
    // Work on increments u (x = cumulative(u)): ordering and positivity
    // become sign constraints and the equality stays a single row.
    const Eigen::VectorXd p = suffix_sums(prob.a);
    const Eigen::VectorXd q = suffix_sums(prob.w);

    const std::optional<Eigen::VectorXd> u0 =
        p3b_strict_point(p, q, prob.b, prob.P_S, warm_start);
    if (!u0) return solve_p3b_tight_budget(p, q, prob.b, prob.P_S);

    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(r, r);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) L(i, j) = 1.0;

    BarrierSpec spec;
    spec.R = L;
    spec.C.resize(r + 1, r);
    spec.C.topRows(r) = -Eigen::MatrixXd::Identity(r, r);
    spec.C.bottomRows(1) = q.transpose();
    spec.d = Eigen::VectorXd::Zero(r + 1);
    spec.d(r) = prob.P_S;
    spec.E = p.transpose();
    spec.f = Eigen::VectorXd::Constant(1, prob.b);

    const Eigen::VectorXd u = barrier_minimize(spec, *u0);
    return cumulative(u);
}

}  // namespace wpt
