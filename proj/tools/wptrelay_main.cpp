// SPDX-License-Identifier: Apache-2.0
//
// wptrelay - rate optimization for wireless-powered MIMO AF relay links
// Copyright (C) 2026 wptrelay contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "wptrelay/ao_driver.hpp"
#include "wptrelay/baseline_noef.hpp"
#include "wptrelay/channel_model.hpp"
#include "wptrelay/experiments.hpp"
#include "wptrelay/oracles.hpp"
#include "wptrelay/rng.hpp"

namespace {

struct CliConfig {
    std::uint64_t seed = 1;
    double rho = 0.7;
    double ratio = 0.65;
    double pd = 0.5;
    double ps = 0.1;
    double sigma2 = 1e-6;
    double d_ds = 10.0;
    int r = 4;
    int trials = 200;
    int threads = 1;
    double eps = 1e-6;
    int max_iter = 500;
    std::string out_dir = ".";
    std::string scheme = "all";
};

const CLI::Validator kRhoOpen{[](std::string& s) {
                                  const double v = std::stod(s);
                                  if (!(v > 0.0 && v < 1.0))
                                      return std::string("rho must be in (0,1)");
                                  return std::string();
                              },
                              "RHO(0,1)"};

const CLI::Validator kRatioOpen{[](std::string& s) {
                                    const double v = std::stod(s);
                                    if (!(v > 0.0 && v < 1.0))
                                        return std::string("ratio must be in (0,1)");
                                    return std::string();
                                },
                                "RATIO(0,1)"};

void add_common_options(CLI::App* cmd, CliConfig& cfg) {
    cmd->add_option("--seed", cfg.seed, "Base seed for channel draws")
        ->envname("WPT_RELAY_SEED");
    cmd->add_option("--rho", cfg.rho, "Power-splitting ratio")->check(kRhoOpen);
    cmd->add_option("--ratio", cfg.ratio, "d_DR/d_DS distance ratio")->check(kRatioOpen);
    cmd->add_option("--pd", cfg.pd, "Destination energy budget [W]")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--ps", cfg.ps, "Source transmit budget [W]")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--sigma2", cfg.sigma2, "Noise power [W]")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--dds", cfg.d_ds, "Total D-S distance [m]")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--r", cfg.r, "Antennas per node")->check(CLI::PositiveNumber);
    cmd->add_option("--trials", cfg.trials, "Monte Carlo trials")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--threads", cfg.threads, "Worker threads (0 = hardware)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--eps", cfg.eps, "AO stopping tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", cfg.max_iter, "AO iteration cap")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", cfg.out_dir, "Output directory");
    cmd->add_option("--scheme", cfg.scheme, "Scheme selection")
        ->check(CLI::IsMember({"p3b", "p3c", "noef", "all"}));
}

wpt::SystemParams make_params(const CliConfig& cfg) {
    wpt::SystemParams p;
    p.r = cfg.r;
    p.P_S = cfg.ps;
    p.P_D = cfg.pd;
    p.sigma2 = cfg.sigma2;
    p.rho = cfg.rho;
    p.eps = cfg.eps;
    p.max_iter = cfg.max_iter;
    return p;
}

std::vector<wpt::Scheme> selected_schemes(const std::string& s) {
    if (s == "p3b") return {wpt::Scheme::P3B};
    if (s == "p3c") return {wpt::Scheme::P3C};
    if (s == "noef") return {wpt::Scheme::NOEF};
    return {wpt::Scheme::P3B, wpt::Scheme::P3C, wpt::Scheme::NOEF};
}

void echo_config(const CliConfig& cfg, const char* subcommand) {
    std::printf("# wptrelay %s\n", subcommand);
    std::printf("# seed=%llu r=%d rho=%.17g ratio=%.17g pd=%.17g ps=%.17g\n",
                static_cast<unsigned long long>(cfg.seed), cfg.r, cfg.rho, cfg.ratio,
                cfg.pd, cfg.ps);
    std::printf("# sigma2=%.17g dds=%.17g eps=%.17g max_iter=%d trials=%d threads=%d\n",
                cfg.sigma2, cfg.d_ds, cfg.eps, cfg.max_iter, cfg.trials, cfg.threads);
    std::printf("# generator=%s scheme=%s\n", wpt::Rng::kGeneratorName,
                cfg.scheme.c_str());
}

void print_vector(const char* label, const Eigen::VectorXd& v) {
    std::printf("  %s=[", label);
    for (Eigen::Index i = 0; i < v.size(); ++i)
        std::printf("%s%.10g", i ? ", " : "", v(i));
    std::printf("]\n");
}

int cmd_single(const CliConfig& cfg) {
    echo_config(cfg, "single");
    const wpt::SystemParams params = make_params(cfg);
    const wpt::Geometry geom{cfg.d_ds, cfg.ratio};
    const wpt::ChannelSet ch = wpt::generate_channels(params, geom, cfg.seed);
    for (const wpt::Scheme s : selected_schemes(cfg.scheme)) {
        const wpt::RunResult res = (s == wpt::Scheme::NOEF)
                                       ? wpt::solve_noef(ch, params)
                                       : wpt::run_ao(ch, params, s);
        std::printf("scheme=%s rate_exact=%.10g rate_highsnr=%.10g iterations=%d converged=%d\n",
                    wpt::scheme_name(s).c_str(), res.rate_exact, res.rate_highsnr,
                    res.iterations, res.converged ? 1 : 0);
        print_vector("lambda_f", res.allocation.lambda_f);
        print_vector("lambda_rs", res.allocation.lambda_rs);
    }
    return 0;
}

wpt::SweepConfig make_sweep_config(const CliConfig& cfg) {
    wpt::SweepConfig sc;
    sc.params = make_params(cfg);
    sc.n_trials = cfg.trials;
    sc.d_DS = cfg.d_ds;
    sc.ratio = cfg.ratio;
    sc.base_seed = cfg.seed;
    sc.threads = cfg.threads;
    sc.schemes = selected_schemes(cfg.scheme);
    return sc;
}

int cmd_sweep(const CliConfig& cfg, bool distance) {
    echo_config(cfg, distance ? "sweep-distance" : "sweep-rho");
    const wpt::SweepConfig sc = make_sweep_config(cfg);
    const wpt::SweepResult res = distance ? wpt::sweep_distance(sc) : wpt::sweep_rho(sc);

    std::filesystem::create_directories(cfg.out_dir);
    const std::string path =
        cfg.out_dir + (distance ? "/sweep_distance.csv" : "/sweep_rho.csv");
    wpt::emit_results(res, path);
    std::printf("# wrote %s (+.gp)\n", path.c_str());

    for (std::size_t s = 0; s < res.schemes.size(); ++s) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < res.axis.size(); ++i)
            if (res.cells[s][i].mean_rate > res.cells[s][best].mean_rate) best = i;
        std::printf("scheme=%s best_axis=%.6g mean_rate=%.10g\n",
                    wpt::scheme_name(res.schemes[s]).c_str(), res.axis[best],
                    res.cells[s][best].mean_rate);
    }
    return 0;
}

int cmd_validate(const CliConfig& cfg) {
    echo_config(cfg, "validate");
    const auto reports = wpt::run_validation_suite(cfg.seed);
    std::printf("name,instances,max_violation,tolerance,passed,seed,note\n");
    bool all_ok = true;
    for (const auto& r : reports) {
        std::printf("%s,%d,%.3g,%.3g,%d,%llu,%s\n", r.name.c_str(), r.instances,
                    r.max_violation, r.tolerance, r.passed ? 1 : 0,
                    static_cast<unsigned long long>(r.seed), r.note.c_str());
        all_ok = all_ok && r.passed;
    }
    std::printf("# validation %s\n", all_ok ? "passed" : "FAILED");
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rate optimization for a wireless-powered MIMO AF relay link"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Config file (INI key=value; [section] per subcommand)");

    CliConfig cfg;
    CLI::App* single = app.add_subcommand("single", "Run one channel instance end to end");
    CLI::App* sweep_rho_cmd =
        app.add_subcommand("sweep-rho", "Mean rate vs power-splitting ratio");
    CLI::App* sweep_dist_cmd =
        app.add_subcommand("sweep-distance", "Best-rho rate vs relay placement");
    CLI::App* validate = app.add_subcommand("validate", "Run the oracle suite");
    for (CLI::App* cmd : {single, sweep_rho_cmd, sweep_dist_cmd, validate})
        add_common_options(cmd, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (single->parsed()) return cmd_single(cfg);
        if (sweep_rho_cmd->parsed()) return cmd_sweep(cfg, false);
        if (sweep_dist_cmd->parsed()) return cmd_sweep(cfg, true);
        if (validate->parsed()) return cmd_validate(cfg);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "wptrelay: invalid configuration: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "wptrelay: error: %s\n", e.what());
        return 1;
    }
    return 2;
}
