// SPDX-License-Identifier: Apache-2.0
//
// wptrelay - rate optimization for wireless-powered MIMO AF relay links
// Copyright (C) 2026 wptrelay contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef WPTRELAY_CHANNEL_MODEL_HPP
#define WPTRELAY_CHANNEL_MODEL_HPP

#include <Eigen/Dense>
#include <cstdint>

namespace wpt {

/// Node and link-budget parameters shared by every solver.
struct SystemParams {
    int r = 4;             ///< antennas per node
    double P_S = 0.1;      ///< source transmit budget [W]
    double P_D = 0.5;      ///< destination energy budget [W]
    double sigma2 = 1e-6;  ///< noise power at each receiver [W]
    double rho = 0.7;      ///< power-splitting ratio, fraction routed to harvesting
    double eps = 1e-6;     ///< alternating-optimization stopping tolerance
    int max_iter = 500;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Relay placement on the destination-source axis.
struct Geometry {
    double d_DS = 10.0;     ///< total destination-source distance [m]
    double ratio_DR = 0.5;  ///< d_DR / d_DS, in (0,1)

    double d_DR() const { return ratio_DR * d_DS; }
    double d_RS() const { return d_DS - d_DR(); }

    void validate() const;
};

/// One channel realization. H_DR is the transpose of H_RD by reciprocity.
struct ChannelSet {
    Eigen::MatrixXcd H_RS;  ///< source -> relay
    Eigen::MatrixXcd H_RD;  ///< destination -> relay
    Eigen::MatrixXcd H_DR;  ///< relay -> destination
};

/// Amplitude scale d^(-3/2) applied on top of unit-variance fading.
double path_loss_amplitude(double d);

/// Draws i.i.d. Rayleigh flat-fading matrices, applies path loss, and
/// enforces reciprocity. Deterministic in (params, geom, seed); resamples
/// on the (measure-zero) event that a draw is numerically rank deficient.
ChannelSet generate_channels(const SystemParams& params, const Geometry& geom,
                             std::uint64_t seed);

}  // namespace wpt

#endif
