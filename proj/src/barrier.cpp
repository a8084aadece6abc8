// SPDX-License-Identifier: Apache-2.0
//
// wptrelay - rate optimization for wireless-powered MIMO AF relay links
// Copyright (C) 2026 wptrelay contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "wptrelay/barrier.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "wptrelay/errors.hpp"

namespace wpt {

namespace {

bool strictly_feasible(const BarrierSpec& spec, const Eigen::VectorXd& x) {
    if (spec.R.rows() > 0 && ((spec.R * x).array() <= 0.0).any()) return false;
    if (spec.C.rows() > 0 && ((spec.d - spec.C * x).array() <= 0.0).any()) return false;
    return true;
}

double barrier_value(const BarrierSpec& spec, const Eigen::VectorXd& x, double mu) {
    double val = 0.0;
    if (spec.R.rows() > 0) val -= (spec.R * x).array().log().sum();
    if (spec.C.rows() > 0) val -= mu * (spec.d - spec.C * x).array().log().sum();
    return val;
}

}  // namespace

Eigen::VectorXd barrier_minimize(const BarrierSpec& spec, const Eigen::VectorXd& x0,
                                 const BarrierOptions& opts) {
    const Eigen::Index n = x0.size();

    // Null-space basis of the equality rows; rank-revealing so dependent
    // rows (consistent by assumption) do not eat a direction they do not own.
    Eigen::MatrixXd Z;
    if (spec.E.rows() > 0) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(spec.E.transpose());
        const Eigen::Index rank = qr.rank();
        Eigen::MatrixXd Q = qr.householderQ();
        Z = Q.rightCols(n - rank);
        if ((spec.E * x0 - spec.f).cwiseAbs().maxCoeff() >
            1e-8 * (1.0 + spec.f.cwiseAbs().maxCoeff()))
            throw std::invalid_argument("barrier_minimize: x0 violates the equality rows");
    } else {
        Z = Eigen::MatrixXd::Identity(n, n);
    }

    if (!strictly_feasible(spec, x0))
        throw std::invalid_argument("barrier_minimize: x0 is not strictly interior");

    Eigen::VectorXd x = x0;
    if (Z.cols() == 0) return x;  // fully pinned by equalities

    for (double mu = opts.mu_init; mu >= opts.mu_final * 0.999; mu *= opts.mu_shrink) {
        double decrement2 = std::numeric_limits<double>::infinity();
        for (int it = 0; it < opts.newton_cap; ++it) {
            Eigen::VectorXd grad = Eigen::VectorXd::Zero(n);
            Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(n, n);
            if (spec.R.rows() > 0) {
                const Eigen::ArrayXd rinv = (spec.R * x).array().inverse();
                grad -= spec.R.transpose() * rinv.matrix();
                hess += spec.R.transpose() * rinv.square().matrix().asDiagonal() * spec.R;
            }
            if (spec.C.rows() > 0) {
                const Eigen::ArrayXd sinv = (spec.d - spec.C * x).array().inverse();
                grad += mu * (spec.C.transpose() * sinv.matrix());
                hess += mu * (spec.C.transpose() * sinv.square().matrix().asDiagonal() *
                              spec.C);
            }

            const Eigen::VectorXd g = Z.transpose() * grad;
            Eigen::MatrixXd H = Z.transpose() * hess * Z;
            Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
            Eigen::VectorXd dy = -ldlt.solve(g);
            if (ldlt.info() != Eigen::Success || !dy.allFinite()) {
                H.diagonal().array() += 1e-12 * H.trace();
                dy = -H.ldlt().solve(g);
            }

            decrement2 = -g.dot(dy);
            if (!(decrement2 > 0.0)) break;
            if (0.5 * decrement2 < opts.newton_tol) break;

            // Backtrack first into the domain, then on sufficient decrease.
            const Eigen::VectorXd dx = Z * dy;
            const double f0 = barrier_value(spec, x, mu);
            double alpha = 1.0;
            int halvings = 0;
            while (halvings < 90) {
                const Eigen::VectorXd xn = x + alpha * dx;
                if (strictly_feasible(spec, xn) &&
                    barrier_value(spec, xn, mu) <= f0 - 0.25 * alpha * decrement2) {
                    x = xn;
                    break;
                }
                alpha *= 0.5;
                ++halvings;
            }
            if (halvings >= 90) break;  // step vanished; decrement test decides below
        }
        if (0.5 * decrement2 > 1e-8)
            throw SolverError("barrier_minimize: Newton stage failed to converge");
    }
    return x;
}

}  // namespace wpt
