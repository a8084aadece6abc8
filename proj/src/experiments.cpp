// SPDX-License-Identifier: Apache-2.0
//
// wptrelay - rate optimization for wireless-powered MIMO AF relay links
// Copyright (C) 2026 wptrelay contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "wptrelay/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "wptrelay/baseline_noef.hpp"
#include "wptrelay/errors.hpp"
#include "wptrelay/rng.hpp"

namespace wpt {

std::vector<double> SweepConfig::default_rho_grid() {
    std::vector<double> g;
    for (int k = 1; k <= 49; ++k) g.push_back(0.02 * k);
    return g;
}

std::vector<double> SweepConfig::default_ratio_grid() {
    std::vector<double> g;
    for (int k = 1; k <= 9; ++k) g.push_back(0.1 * k);
    return g;
}

void SweepConfig::fill_defaults() {
    if (rho_grid.empty()) rho_grid = default_rho_grid();
    if (ratio_grid.empty()) ratio_grid = default_ratio_grid();
}

std::uint64_t fnv1a_hash(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

SignTest paired_sign_test(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("paired_sign_test: length mismatch");
    SignTest t;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) continue;
        if (x[i] > y[i])
            ++t.n_pos;
        else if (x[i] < y[i])
            ++t.n_neg;
    }
    const int n = t.n_pos + t.n_neg;
    t.zscore = (n > 0) ? (t.n_pos - 0.5 * n) / std::sqrt(0.25 * n) : 0.0;
    t.significant_95 = t.zscore >= 1.6448536269514722;
    return t;
}

namespace {

double run_one(const ChannelSet& ch, const SystemParams& params, Scheme scheme) {
    if (scheme == Scheme::NOEF) return solve_noef(ch, params).rate_exact;
    return run_ao(ch, params, scheme).rate_exact;
}

double rate_or_nan(const ChannelSet& ch, const SystemParams& params, Scheme scheme) {
    try {
        return run_one(ch, params, scheme);
    } catch (const SolverError&) {
    } catch (const InfeasibleError&) {
    } catch (const IllConditionedError&) {
    } catch (const PartialResultError&) {
    }
    return std::numeric_limits<double>::quiet_NaN();
}

void parallel_for(int n_units, int threads, const std::function<void(int)>& body) {
    int n_threads = threads > 0 ? threads : int(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
    n_threads = std::min(n_threads, n_units > 0 ? n_units : 1);
    if (n_threads == 1) {
        for (int i = 0; i < n_units; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    for (int w = 0; w < n_threads; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n_units || failed.load()) return;
                try {
                    body(i);
                } catch (...) {
                    if (!failed.exchange(true)) failure = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failed.load()) std::rethrow_exception(failure);
}

CellStats reduce_cell(const std::vector<double>& rates) {
    CellStats c;
    double sum = 0.0;
    for (const double v : rates) {
        if (std::isfinite(v)) {
            sum += v;
            ++c.n_ok;
        } else {
            ++c.n_skip;
        }
    }
    if (c.n_ok > 0) c.mean_rate = sum / c.n_ok;
    double ss = 0.0;
    for (const double v : rates)
        if (std::isfinite(v)) ss += (v - c.mean_rate) * (v - c.mean_rate);
    if (c.n_ok > 1) c.stderr_mean = std::sqrt(ss / (c.n_ok - 1) / c.n_ok);
    return c;
}

std::string fmt(double v, const char* spec = "%.17g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string metadata_block(const SweepResult& res) {
    const SweepConfig& cfg = res.config;
    std::ostringstream os;
    os << "# wptrelay sweep\n";
    os << "# kind=" << (res.kind == SweepResult::Kind::Rho ? "rho" : "distance") << "\n";
    os << "# generator=" << res.generator_name << "\n";
    os << "# base_seed=" << cfg.base_seed << "\n";
    os << "# n_trials=" << cfg.n_trials << "\n";
    os << "# schemes=";
    for (std::size_t s = 0; s < res.schemes.size(); ++s)
        os << (s ? "," : "") << scheme_name(res.schemes[s]);
    os << "\n";
    os << "# r=" << cfg.params.r << " P_S=" << fmt(cfg.params.P_S)
       << " P_D=" << fmt(cfg.params.P_D) << " sigma2=" << fmt(cfg.params.sigma2)
       << " eps=" << fmt(cfg.params.eps) << " max_iter=" << cfg.params.max_iter << "\n";
    os << "# d_DS=" << fmt(cfg.d_DS);
    if (res.kind == SweepResult::Kind::Rho) os << " ratio=" << fmt(cfg.ratio);
    os << "\n";
    os << "# rho_grid=";
    for (std::size_t i = 0; i < cfg.rho_grid.size(); ++i)
        os << (i ? "," : "") << fmt(cfg.rho_grid[i], "%.6g");
    os << "\n";
    if (res.kind == SweepResult::Kind::Distance) {
        os << "# ratio_grid=";
        for (std::size_t i = 0; i < cfg.ratio_grid.size(); ++i)
            os << (i ? "," : "") << fmt(cfg.ratio_grid[i], "%.6g");
        os << "\n";
    }
    return os.str();
}

void finalize_hash(SweepResult& res) {
    res.generator_name = Rng::kGeneratorName;
    res.config_hash = fnv1a_hash(metadata_block(res));
}

}  // namespace

SweepResult sweep_rho(const SweepConfig& config_in) {
    SweepConfig config = config_in;
    config.fill_defaults();
    if (config.n_trials <= 0) throw std::invalid_argument("n_trials must be positive");

    SweepResult res;
    res.kind = SweepResult::Kind::Rho;
    res.config = config;
    res.axis = config.rho_grid;
    res.schemes = config.schemes;

    const int S = int(config.schemes.size());
    const int R = int(config.rho_grid.size());
    const int T = config.n_trials;
    res.trials.assign(S, std::vector<std::vector<double>>(
                             R, std::vector<double>(T,
                                                    std::numeric_limits<double>::quiet_NaN())));

    const Geometry geom{config.d_DS, config.ratio};
    parallel_for(T, config.threads, [&](int t) {
        SystemParams params = config.params;
        params.rho = config.rho_grid.front();  // placeholder for validation
        const ChannelSet ch =
            generate_channels(params, geom, config.base_seed + std::uint64_t(t));
        for (int i = 0; i < R; ++i) {
            params.rho = config.rho_grid[size_t(i)];
            for (int s = 0; s < S; ++s)
                res.trials[size_t(s)][size_t(i)][size_t(t)] =
                    rate_or_nan(ch, params, config.schemes[size_t(s)]);
        }
    });

    res.cells.assign(S, std::vector<CellStats>(R));
    res.best_rho.assign(S, std::vector<double>(R));
    for (int s = 0; s < S; ++s)
        for (int i = 0; i < R; ++i) {
            res.cells[size_t(s)][size_t(i)] = reduce_cell(res.trials[size_t(s)][size_t(i)]);
            res.best_rho[size_t(s)][size_t(i)] = config.rho_grid[size_t(i)];
        }
    finalize_hash(res);
    return res;
}

SweepResult sweep_distance(const SweepConfig& config_in) {
    SweepConfig config = config_in;
    config.fill_defaults();
    if (config.n_trials <= 0) throw std::invalid_argument("n_trials must be positive");

    SweepResult res;
    res.kind = SweepResult::Kind::Distance;
    res.config = config;
    res.axis = config.ratio_grid;
    res.schemes = config.schemes;

    const int S = int(config.schemes.size());
    const int J = int(config.ratio_grid.size());
    const int R = int(config.rho_grid.size());
    const int T = config.n_trials;

    // full[s][j][i][t]
    std::vector<std::vector<std::vector<std::vector<double>>>> full(
        size_t(S),
        std::vector<std::vector<std::vector<double>>>(
            size_t(J), std::vector<std::vector<double>>(
                           size_t(R), std::vector<double>(
                                          size_t(T),
                                          std::numeric_limits<double>::quiet_NaN()))));

    parallel_for(J * T, config.threads, [&](int unit) {
        const int j = unit / T;
        const int t = unit % T;
        const Geometry geom{config.d_DS, config.ratio_grid[size_t(j)]};
        SystemParams params = config.params;
        params.rho = config.rho_grid.front();
        const ChannelSet ch =
            generate_channels(params, geom, config.base_seed + std::uint64_t(t));
        for (int i = 0; i < R; ++i) {
            params.rho = config.rho_grid[size_t(i)];
            for (int s = 0; s < S; ++s)
                full[size_t(s)][size_t(j)][size_t(i)][size_t(t)] =
                    rate_or_nan(ch, params, config.schemes[size_t(s)]);
        }
    });

    res.cells.assign(S, std::vector<CellStats>(J));
    res.best_rho.assign(S, std::vector<double>(J));
    res.trials.assign(S, std::vector<std::vector<double>>(J));
    for (int s = 0; s < S; ++s)
        for (int j = 0; j < J; ++j) {
            int best_i = 0;
            double best_mean = -std::numeric_limits<double>::infinity();
            for (int i = 0; i < R; ++i) {
                const CellStats c = reduce_cell(full[size_t(s)][size_t(j)][size_t(i)]);
                if (c.n_ok > 0 && c.mean_rate > best_mean) {
                    best_mean = c.mean_rate;
                    best_i = i;
                }
            }
            res.best_rho[size_t(s)][size_t(j)] = config.rho_grid[size_t(best_i)];
            res.trials[size_t(s)][size_t(j)] = full[size_t(s)][size_t(j)][size_t(best_i)];
            res.cells[size_t(s)][size_t(j)] = reduce_cell(res.trials[size_t(s)][size_t(j)]);
        }
    finalize_hash(res);
    return res;
}

void emit_results(const SweepResult& res, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_results: cannot open " + path);

    out << metadata_block(res);
    char hashbuf[32];
    std::snprintf(hashbuf, sizeof(hashbuf), "%016llx",
                  static_cast<unsigned long long>(res.config_hash));
    out << "# config_hash=" << hashbuf << "\n";
    for (std::size_t s = 0; s < res.schemes.size(); ++s)
        for (std::size_t i = 0; i < res.axis.size(); ++i) {
            const CellStats& c = res.cells[s][i];
            if (res.config.n_trials > 0 &&
                c.n_skip * 20 > res.config.n_trials)  // >5% skips
                out << "# warning: cell " << scheme_name(res.schemes[s]) << " axis="
                    << fmt(res.axis[i], "%.6g") << " skipped " << c.n_skip << "/"
                    << res.config.n_trials << "\n";
        }

    out << "scheme,ratio,rho,mean_rate,stderr,n_ok,n_skip\n";
    for (std::size_t s = 0; s < res.schemes.size(); ++s) {
        for (std::size_t i = 0; i < res.axis.size(); ++i) {
            const CellStats& c = res.cells[s][i];
            const double ratio =
                (res.kind == SweepResult::Kind::Rho) ? res.config.ratio : res.axis[i];
            const double rho = (res.kind == SweepResult::Kind::Rho)
                                   ? res.axis[i]
                                   : res.best_rho[s][i];
            out << scheme_name(res.schemes[s]) << ',' << fmt(ratio, "%.6g") << ','
                << fmt(rho, "%.6g") << ',' << fmt(c.mean_rate, "%.10g") << ','
                << fmt(c.stderr_mean, "%.10g") << ',' << c.n_ok << ',' << c.n_skip
                << "\n";
        }
    }
    out.close();

    // Companion plotting script, table referenced by relative path.
    std::string base = path;
    const std::size_t slash = base.find_last_of('/');
    const std::string rel = (slash == std::string::npos) ? base : base.substr(slash + 1);
    std::string gp_path = path + ".gp";
    std::ofstream gp(gp_path, std::ios::binary);
    if (!gp) throw std::runtime_error("emit_results: cannot open " + gp_path);
    const int xcol = (res.kind == SweepResult::Kind::Rho) ? 3 : 2;
    gp << "# gnuplot companion for " << rel << "\n";
    gp << "set datafile separator ','\n";
    gp << "set key autotitle\n";
    gp << "set xlabel '" << (res.kind == SweepResult::Kind::Rho ? "rho" : "d_DR/d_DS")
       << "'\n";
    gp << "set ylabel 'mean rate [bits/channel use]'\n";
    gp << "schemes = '";
    for (std::size_t s = 0; s < res.schemes.size(); ++s)
        gp << (s ? " " : "") << scheme_name(res.schemes[s]);
    gp << "'\n";
    gp << "plot for [sch in schemes] '" << rel << "' using " << xcol
       << ":(strcol(1) eq sch ? column(4) : NaN) with linespoints title sch\n";
}

}  // namespace wpt
