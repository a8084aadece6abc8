// SPDX-License-Identifier: Apache-2.0
//
// wptrelay - rate optimization for wireless-powered MIMO AF relay links
// Copyright (C) 2026 wptrelay contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wptrelay/ao_driver.hpp"
#include "wptrelay/baseline_noef.hpp"
#include "wptrelay/channel_model.hpp"
#include "wptrelay/diagonalization.hpp"
#include "wptrelay/experiments.hpp"
#include "wptrelay/oracles.hpp"
#include "wptrelay/relay_solver.hpp"
#include "wptrelay/rng.hpp"
#include "wptrelay/source_solver.hpp"

namespace py = pybind11;
using namespace wpt;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Rate optimization for a wireless-powered MIMO AF relay link";
    m.attr("generator_name") = Rng::kGeneratorName;

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<>())
        .def_readwrite("r", &SystemParams::r)
        .def_readwrite("P_S", &SystemParams::P_S)
        .def_readwrite("P_D", &SystemParams::P_D)
        .def_readwrite("sigma2", &SystemParams::sigma2)
        .def_readwrite("rho", &SystemParams::rho)
        .def_readwrite("eps", &SystemParams::eps)
        .def_readwrite("max_iter", &SystemParams::max_iter)
        .def("validate", &SystemParams::validate);

    py::class_<Geometry>(m, "Geometry")
        .def(py::init<>())
        .def(py::init([](double d_DS, double ratio_DR) {
                 Geometry g{d_DS, ratio_DR};
                 g.validate();
                 return g;
             }),
             py::arg("d_DS"), py::arg("ratio_DR"))
        .def_readwrite("d_DS", &Geometry::d_DS)
        .def_readwrite("ratio_DR", &Geometry::ratio_DR)
        .def("d_DR", &Geometry::d_DR)
        .def("d_RS", &Geometry::d_RS);

    py::class_<ChannelSet>(m, "ChannelSet")
        .def(py::init<>())
        .def_readwrite("H_RS", &ChannelSet::H_RS)
        .def_readwrite("H_RD", &ChannelSet::H_RD)
        .def_readwrite("H_DR", &ChannelSet::H_DR);

    m.def("path_loss_amplitude", &path_loss_amplitude, py::arg("d"));
    m.def("generate_channels", &generate_channels, py::arg("params"), py::arg("geom"),
          py::arg("seed"));

    py::class_<SvdOrdered>(m, "SvdOrdered")
        .def_readonly("U", &SvdOrdered::U)
        .def_readonly("s", &SvdOrdered::s)
        .def_readonly("V", &SvdOrdered::V);
    m.def("svd_ordered", &svd_ordered, py::arg("M"));

    py::class_<EnergyBeam>(m, "EnergyBeam")
        .def_readonly("Q_D", &EnergyBeam::Q_D)
        .def_readonly("v_max", &EnergyBeam::v_max);
    m.def("design_energy_beam", &design_energy_beam, py::arg("H_RD"), py::arg("P_D"));

    py::class_<DiagonalizedSystem>(m, "DiagonalizedSystem")
        .def_readonly("lambda_dr", &DiagonalizedSystem::lambda_dr)
        .def_readonly("U_dr", &DiagonalizedSystem::U_dr)
        .def_readonly("V_dr", &DiagonalizedSystem::V_dr)
        .def_readonly("lambda_dr_max", &DiagonalizedSystem::lambda_dr_max)
        .def_readonly("rx_basis", &DiagonalizedSystem::rx_basis)
        .def_readonly("H_e", &DiagonalizedSystem::H_e)
        .def_readonly("w", &DiagonalizedSystem::w)
        .def_readonly("beta", &DiagonalizedSystem::beta)
        .def_readonly("c", &DiagonalizedSystem::c);
    m.def("diagonalize", &diagonalize, py::arg("channels"), py::arg("params"));
    m.def("assemble_relay_matrix", &assemble_relay_matrix, py::arg("sys"),
          py::arg("lambda_f"));
    m.def("assemble_source_covariance", &assemble_source_covariance, py::arg("sys"),
          py::arg("lambda_rs"));

    py::class_<RelayProblem>(m, "RelayProblem")
        .def_static("make", &RelayProblem::make, py::arg("sys"), py::arg("lambda_rs"),
                    py::arg("params"))
        .def_static("from_parts", &RelayProblem::from_parts, py::arg("lambda_rs"),
                    py::arg("lambda_dr"), py::arg("beta"), py::arg("rho"),
                    py::arg("sigma2"), py::arg("P_D"), py::arg("lambda_dr_max"))
        .def_readonly("z", &RelayProblem::z)
        .def_readonly("budget", &RelayProblem::budget);
    m.def("lambda_f_closed_form", &lambda_f_closed_form, py::arg("prob"), py::arg("nu"));
    py::class_<RelaySolution>(m, "RelaySolution")
        .def_readonly("lambda_f", &RelaySolution::lambda_f)
        .def_readonly("nu", &RelaySolution::nu);
    m.def("solve_relay_power", &solve_relay_power, py::arg("prob"),
          py::arg("tol") = 1e-10);

    py::class_<SourceProblem>(m, "SourceProblem")
        .def_static("make", &SourceProblem::make, py::arg("sys"), py::arg("lambda_f"),
                    py::arg("params"))
        .def_readonly("a", &SourceProblem::a)
        .def_readonly("b", &SourceProblem::b)
        .def_readonly("h_e_max2", &SourceProblem::h_e_max2);
    py::enum_<P3cBranch>(m, "P3cBranch")
        .value("Interior", P3cBranch::Interior)
        .value("Active", P3cBranch::Active);
    py::class_<P3cSolution>(m, "P3cSolution")
        .def_readonly("lambda_rs", &P3cSolution::lambda_rs)
        .def_readonly("branch", &P3cSolution::branch)
        .def_readonly("mu", &P3cSolution::mu)
        .def_readonly("gamma2", &P3cSolution::gamma2);
    m.def("solve_p3c", &solve_p3c, py::arg("prob"));
    m.def("solve_p3b", &solve_p3b, py::arg("prob"),
          py::arg("warm_start") = std::optional<Eigen::VectorXd>{});
    m.def("p3b_objective", &p3b_objective, py::arg("lambda_rs"), py::arg("lambda_f"),
          py::arg("lambda_dr"), py::arg("rho"), py::arg("sigma2"));

    py::enum_<Scheme>(m, "Scheme")
        .value("P3B", Scheme::P3B)
        .value("P3C", Scheme::P3C)
        .value("NOEF", Scheme::NOEF);
    py::class_<PowerAllocation>(m, "PowerAllocation")
        .def(py::init<>())
        .def_readwrite("lambda_f", &PowerAllocation::lambda_f)
        .def_readwrite("lambda_rs", &PowerAllocation::lambda_rs);
    py::class_<RunResult>(m, "RunResult")
        .def_readonly("allocation", &RunResult::allocation)
        .def_readonly("rate_exact", &RunResult::rate_exact)
        .def_readonly("rate_highsnr", &RunResult::rate_highsnr)
        .def_readonly("trace", &RunResult::trace)
        .def_readonly("iterations", &RunResult::iterations)
        .def_readonly("converged", &RunResult::converged)
        .def_readonly("scheme", &RunResult::scheme);

    m.def("rate_diagonal", &rate_diagonal, py::arg("alloc"), py::arg("sys"),
          py::arg("params"));
    m.def("rate_exact_matrix", &rate_exact_matrix, py::arg("F"), py::arg("Q_S"),
          py::arg("Q_D"), py::arg("channels"), py::arg("params"));
    m.def(
        "run_ao",
        [](const ChannelSet& ch, const SystemParams& params, Scheme scheme) {
            return run_ao(ch, params, scheme);
        },
        py::arg("channels"), py::arg("params"), py::arg("scheme"));
    m.def("solve_noef", &solve_noef, py::arg("channels"), py::arg("params"));
    m.def("noef_rate_exact", &noef_rate_exact, py::arg("F"), py::arg("Q_S"),
          py::arg("channels"), py::arg("params"));

    py::class_<OracleReport>(m, "OracleReport")
        .def_readonly("name", &OracleReport::name)
        .def_readonly("instances", &OracleReport::instances)
        .def_readonly("max_violation", &OracleReport::max_violation)
        .def_readonly("tolerance", &OracleReport::tolerance)
        .def_readonly("passed", &OracleReport::passed)
        .def_readonly("seed", &OracleReport::seed)
        .def_readonly("note", &OracleReport::note);
    m.def("run_validation_suite", &run_validation_suite, py::arg("seed"));

    py::class_<SweepConfig>(m, "SweepConfig")
        .def(py::init<>())
        .def_readwrite("rho_grid", &SweepConfig::rho_grid)
        .def_readwrite("ratio_grid", &SweepConfig::ratio_grid)
        .def_readwrite("n_trials", &SweepConfig::n_trials)
        .def_readwrite("schemes", &SweepConfig::schemes)
        .def_readwrite("params", &SweepConfig::params)
        .def_readwrite("d_DS", &SweepConfig::d_DS)
        .def_readwrite("ratio", &SweepConfig::ratio)
        .def_readwrite("base_seed", &SweepConfig::base_seed)
        .def_readwrite("threads", &SweepConfig::threads);
    py::class_<CellStats>(m, "CellStats")
        .def_readonly("mean_rate", &CellStats::mean_rate)
        .def_readonly("stderr_mean", &CellStats::stderr_mean)
        .def_readonly("n_ok", &CellStats::n_ok)
        .def_readonly("n_skip", &CellStats::n_skip);
    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("axis", &SweepResult::axis)
        .def_readonly("schemes", &SweepResult::schemes)
        .def_readonly("cells", &SweepResult::cells)
        .def_readonly("best_rho", &SweepResult::best_rho)
        .def_readonly("trials", &SweepResult::trials)
        .def_readonly("generator_name", &SweepResult::generator_name)
        .def_readonly("config_hash", &SweepResult::config_hash);
    m.def("sweep_rho", &sweep_rho, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("sweep_distance", &sweep_distance, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("emit_results", &emit_results, py::arg("result"), py::arg("path"));
}
