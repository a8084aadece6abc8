// SPDX-License-Identifier: Apache-2.0
#ifndef WPTRELAY_TEST_UTIL_HPP
#define WPTRELAY_TEST_UTIL_HPP

#include <Eigen/Dense>
#include <cstdint>

#include "wptrelay/channel_model.hpp"
#include "wptrelay/diagonalization.hpp"
#include "wptrelay/rng.hpp"

namespace wpt::test {

inline Eigen::MatrixXcd random_complex(Rng& rng, int rows, int cols) {
    Eigen::MatrixXcd m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = rng.cgaussian();
    return m;
}

inline SystemParams default_params() {
    SystemParams p;
    p.r = 4;
    p.P_S = 0.1;
    p.P_D = 0.5;
    p.sigma2 = 1e-6;
    p.rho = 0.7;
    p.eps = 1e-6;
    p.max_iter = 500;
    return p;
}

inline ChannelSet make_channels(std::uint64_t seed, const SystemParams& params,
                                double ratio = 0.65, double d_DS = 10.0) {
    return generate_channels(params, Geometry{d_DS, ratio}, seed);
}

inline double rel_diff(double x, double y) {
    const double scale = std::max(std::abs(x), std::abs(y));
    return scale > 0.0 ? std::abs(x - y) / scale : 0.0;
}

}  // namespace wpt::test

#endif
