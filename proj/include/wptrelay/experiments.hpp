// SPDX-License-Identifier: Apache-2.0
//
// wptrelay - rate optimization for wireless-powered MIMO AF relay links
// Copyright (C) 2026 wptrelay contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef WPTRELAY_EXPERIMENTS_HPP
#define WPTRELAY_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "wptrelay/ao_driver.hpp"
#include "wptrelay/channel_model.hpp"

namespace wpt {

/// Monte Carlo sweep configuration. Trial t draws its channel from
/// base_seed + t, and that draw is shared by every (scheme, rho, ratio)
/// cell of the trial, so scheme differences are paired.
struct SweepConfig {
    std::vector<double> rho_grid;    ///< defaults to 0.02:0.02:0.98
    std::vector<double> ratio_grid;  ///< defaults to 0.1:0.1:0.9
    int n_trials = 200;
    std::vector<Scheme> schemes = {Scheme::P3B, Scheme::P3C, Scheme::NOEF};
    SystemParams params;   ///< params.rho is overridden by the grid during sweeps
    double d_DS = 10.0;
    double ratio = 0.65;   ///< fixed distance ratio for rho sweeps
    std::uint64_t base_seed = 1;
    int threads = 1;       ///< 0 = hardware concurrency

    static std::vector<double> default_rho_grid();
    static std::vector<double> default_ratio_grid();
    void fill_defaults();
};

struct CellStats {
    double mean_rate = 0.0;
    double stderr_mean = 0.0;
    int n_ok = 0;
    int n_skip = 0;
};

/// Aggregated sweep output. For a rho sweep the axis is the rho grid; for
/// a distance sweep it is the ratio grid and each cell reports the
/// scheme's best rho (argmax of the mean-rate curve over the rho grid).
struct SweepResult {
    enum class Kind { Rho, Distance };
    Kind kind = Kind::Rho;
    SweepConfig config;
    std::vector<double> axis;
    std::vector<Scheme> schemes;
    std::vector<std::vector<CellStats>> cells;              ///< [scheme][axis]
    std::vector<std::vector<double>> best_rho;              ///< [scheme][axis]
    std::vector<std::vector<std::vector<double>>> trials;   ///< [scheme][axis][trial] rate, NaN = skipped
    std::string generator_name;
    std::uint64_t config_hash = 0;
};

/// Mean rate versus rho at a fixed distance ratio, common channel draws
/// across the grid.
SweepResult sweep_rho(const SweepConfig& config);

/// For each distance ratio, searches the rho grid per scheme and reports
/// the best-rho mean rate and the best rho itself.
SweepResult sweep_distance(const SweepConfig& config);

/// Writes the table to `path` (CSV with '#' metadata lines) and a gnuplot
/// companion script next to it. Identical config + seed reproduces the
/// bytes exactly.
void emit_results(const SweepResult& result, const std::string& path);

/// One-sided paired sign test (H1: x > y), ties and NaNs dropped.
struct SignTest {
    int n_pos = 0;
    int n_neg = 0;
    double zscore = 0.0;
    bool significant_95 = false;
};
SignTest paired_sign_test(const std::vector<double>& x, const std::vector<double>& y);

/// FNV-1a over the metadata block; stable across runs and platforms.
std::uint64_t fnv1a_hash(const std::string& text);

}  // namespace wpt

#endif
