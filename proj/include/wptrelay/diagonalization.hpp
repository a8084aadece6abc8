// SPDX-License-Identifier: Apache-2.0
//
// wptrelay - rate optimization for wireless-powered MIMO AF relay links
// Copyright (C) 2026 wptrelay contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef WPTRELAY_DIAGONALIZATION_HPP
#define WPTRELAY_DIAGONALIZATION_HPP

#include <Eigen/Dense>

#include "wptrelay/channel_model.hpp"

namespace wpt {

/// SVD with a fixed ordering and phase convention so repeated runs and
/// warm starts see identical factors.
struct SvdOrdered {
    Eigen::MatrixXcd U;
    Eigen::VectorXd s;  ///< singular values, nondecreasing
    Eigen::MatrixXcd V;
};

/// M = U * diag(s) * V^H with s nondecreasing and the largest-magnitude
/// entry of each V column made real positive. Throws SingularMatrixError
/// when s_min <= 1e-12 * s_max.
SvdOrdered svd_ordered(const Eigen::MatrixXcd& M);

/// Rank-one energy covariance at the destination.
struct EnergyBeam {
    Eigen::MatrixXcd Q_D;    ///< PSD, rank one, trace P_D
    Eigen::VectorXcd v_max;  ///< right singular vector of H_RD for its top singular value
};

/// Beam along the strongest right singular direction of H_RD; harvested
/// power proxy trace(H_RD Q_D H_RD^H) equals P_D * lambda_max exactly.
EnergyBeam design_energy_beam(const Eigen::MatrixXcd& H_RD, double P_D);

/// Output of the channel diagonalization: the relay-to-destination
/// eigenmodes (ascending power gains), the receive basis forced on the
/// source-relay link, the effective source channel obtained by inverting
/// through that basis, and the energy-leak vector sitting on the top mode.
struct DiagonalizedSystem {
    Eigen::VectorXd lambda_dr;  ///< power gains of H_DR, nondecreasing
    Eigen::MatrixXcd U_dr;      ///< H_DR = U_dr diag(sqrt(lambda_dr)) V_dr^H
    Eigen::MatrixXcd V_dr;
    double lambda_dr_max = 0.0;
    Eigen::MatrixXcd rx_basis;  ///< forced left singular basis of the effective S-R channel (= conj(V_dr))
    Eigen::MatrixXcd H_e;       ///< effective source channel, (rx_basis^H H_RS)^{-1}
    Eigen::VectorXd w;          ///< squared 2-norms of the columns of H_e
    Eigen::VectorXd beta;       ///< leak powers; single nonzero at the last index
    double c = 0.0;             ///< (1-rho) P_D lambda_dr_max
};

/// Decomposes the channels for the energy-flow-assisted scheme. Throws
/// IllConditionedError when the effective-channel inversion has condition
/// number above 1e10 (caller resamples the channel draw).
DiagonalizedSystem diagonalize(const ChannelSet& channels, const SystemParams& params);

/// F = V_dr * diag(sqrt(lambda_f)) * rx_basis^H. Entries of lambda_f must
/// be nonnegative.
Eigen::MatrixXcd assemble_relay_matrix(const DiagonalizedSystem& sys,
                                       const Eigen::VectorXd& lambda_f);

/// Q_S = H_e * diag(lambda_rs) * H_e^H; trace equals dot(w, lambda_rs).
Eigen::MatrixXcd assemble_source_covariance(const DiagonalizedSystem& sys,
                                            const Eigen::VectorXd& lambda_rs);

}  // namespace wpt

#endif
