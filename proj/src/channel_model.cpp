// SPDX-License-Identifier: Apache-2.0
//
// wptrelay - rate optimization for wireless-powered MIMO AF relay links
// Copyright (C) 2026 wptrelay contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "wptrelay/channel_model.hpp"

#include <cmath>
#include <stdexcept>

#include "wptrelay/rng.hpp"

namespace wpt {

void SystemParams::validate() const {
    if (r <= 0) throw std::invalid_argument("r must be a positive integer");
    if (!(P_S > 0.0)) throw std::invalid_argument("P_S must be > 0");
    if (!(P_D >= 0.0)) throw std::invalid_argument("P_D must be >= 0");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("sigma2 must be > 0");
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must be in (0,1)");
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
    if (max_iter <= 0) throw std::invalid_argument("max_iter must be a positive integer");
}

void Geometry::validate() const {
    if (!(d_DS > 0.0)) throw std::invalid_argument("d_DS must be > 0");
    if (!(ratio_DR > 0.0 && ratio_DR < 1.0))
        throw std::invalid_argument("ratio_DR must be in (0,1)");
}

double path_loss_amplitude(double d) {
    if (!(d > 0.0)) throw std::invalid_argument("distance must be > 0");
    return std::pow(d, -1.5);
}

namespace {

Eigen::MatrixXcd draw_fading(Rng& rng, int r) {
    Eigen::MatrixXcd m(r, r);
    // Column-major fill order is part of the determinism contract.
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < r; ++i) m(i, j) = rng.cgaussian();
    return m;
}

bool numerically_full_rank(const Eigen::MatrixXcd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& s = svd.singularValues();
    return s(s.size() - 1) > 1e-12 * s(0);
}

}  // namespace

ChannelSet generate_channels(const SystemParams& params, const Geometry& geom,
                             std::uint64_t seed) {
    params.validate();
    geom.validate();

    const double amp_rs = path_loss_amplitude(geom.d_RS());
    const double amp_dr = path_loss_amplitude(geom.d_DR());

    Rng rng(seed);
    ChannelSet ch;
    // Resampling keeps consuming the same stream, so the output stays a
    // pure function of (params, geom, seed).
    for (;;) {
        const Eigen::MatrixXcd fading_rs = draw_fading(rng, params.r);
        const Eigen::MatrixXcd fading_rd = draw_fading(rng, params.r);
        if (!numerically_full_rank(fading_rs) || !numerically_full_rank(fading_rd))
            continue;
        ch.H_RS = amp_rs * fading_rs;
        ch.H_RD = amp_dr * fading_rd;
        ch.H_DR = ch.H_RD.transpose();
        return ch;
    }
}

}  // namespace wpt
