// SPDX-License-Identifier: Apache-2.0
//
// wptrelay - rate optimization for wireless-powered MIMO AF relay links
// Copyright (C) 2026 wptrelay contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "wptrelay/diagonalization.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "wptrelay/errors.hpp"

namespace wpt {

SvdOrdered svd_ordered(const Eigen::MatrixXcd& M) {
    const Eigen::Index n = M.rows();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();  // nonincreasing
    if (!(sv(n - 1) > 1e-12 * sv(0)))
        throw SingularMatrixError("svd_ordered: matrix is numerically rank deficient");

    SvdOrdered out;
    out.U.resize(n, n);
    out.V.resize(n, n);
    out.s.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::Index src = n - 1 - j;  // flip to nondecreasing
        out.s(j) = sv(src);
        Eigen::VectorXcd u = svd.matrixU().col(src);
        Eigen::VectorXcd v = svd.matrixV().col(src);
        // Phase convention: largest-magnitude entry of the V column real
        // positive; U gets the same rotation so U diag(s) V^H is unchanged.
        Eigen::Index imax = 0;
        v.cwiseAbs().maxCoeff(&imax);
        const std::complex<double> phase = v(imax) / std::abs(v(imax));
        out.V.col(j) = v * std::conj(phase);
        out.U.col(j) = u * std::conj(phase);
    }
    return out;
}

EnergyBeam design_energy_beam(const Eigen::MatrixXcd& H_RD, double P_D) {
    if (!(P_D >= 0.0)) throw std::invalid_argument("P_D must be >= 0");
    const SvdOrdered svd = svd_ordered(H_RD);
    EnergyBeam beam;
    beam.v_max = svd.V.col(svd.V.cols() - 1);
    beam.Q_D = P_D * (beam.v_max * beam.v_max.adjoint());
    return beam;
}

DiagonalizedSystem diagonalize(const ChannelSet& channels, const SystemParams& params) {
    params.validate();
    const int r = params.r;
    if (channels.H_DR.rows() != r || channels.H_RS.rows() != r)
        throw std::invalid_argument("channel dimensions do not match params.r");

    DiagonalizedSystem sys;
    const SvdOrdered svd = svd_ordered(channels.H_DR);
    sys.U_dr = svd.U;
    sys.V_dr = svd.V;
    sys.lambda_dr = svd.s.array().square();
    sys.lambda_dr_max = sys.lambda_dr(r - 1);

    // The harvested-power-maximizing beam lands the leak on the top
    // forwarding mode once everything is sorted ascending, so the forced
    // receive basis needs no further permutation.
    sys.rx_basis = sys.V_dr.conjugate();

    const Eigen::MatrixXcd G = sys.rx_basis.adjoint() * channels.H_RS;
    {
        Eigen::JacobiSVD<Eigen::MatrixXcd> gsvd(G);
        const auto& gs = gsvd.singularValues();
        if (!(gs(r - 1) > 0.0) || gs(0) / gs(r - 1) > 1e10)
            throw IllConditionedError(
                "diagonalize: effective source channel is ill conditioned");
    }
    sys.H_e = G.partialPivLu().solve(Eigen::MatrixXcd::Identity(r, r));
    sys.w = sys.H_e.colwise().squaredNorm().real();

    sys.c = (1.0 - params.rho) * params.P_D * sys.lambda_dr_max;
    sys.beta = Eigen::VectorXd::Zero(r);
    sys.beta(r - 1) = sys.c;
    return sys;
}

Eigen::MatrixXcd assemble_relay_matrix(const DiagonalizedSystem& sys,
                                       const Eigen::VectorXd& lambda_f) {
    if ((lambda_f.array() < 0.0).any())
        throw std::invalid_argument("lambda_f entries must be nonnegative");
    return sys.V_dr * lambda_f.cwiseSqrt().asDiagonal() * sys.rx_basis.adjoint();
}

Eigen::MatrixXcd assemble_source_covariance(const DiagonalizedSystem& sys,
                                            const Eigen::VectorXd& lambda_rs) {
    if ((lambda_rs.array() < 0.0).any())
        throw std::invalid_argument("lambda_rs entries must be nonnegative");
    return sys.H_e * lambda_rs.asDiagonal() * sys.H_e.adjoint();
}

}  // namespace wpt
