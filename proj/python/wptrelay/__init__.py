# SPDX-License-Identifier: Apache-2.0
"""Rate optimization for a wireless-powered MIMO AF relay link.

Thin wrapper over the compiled extension; everything lives in
:mod:`wptrelay._core`.
"""

from ._core import (  # noqa: F401
    CellStats,
    ChannelSet,
    DiagonalizedSystem,
    EnergyBeam,
    Geometry,
    OracleReport,
    P3cBranch,
    P3cSolution,
    PowerAllocation,
    RelayProblem,
    RelaySolution,
    RunResult,
    Scheme,
    SourceProblem,
    SvdOrdered,
    SweepConfig,
    SweepResult,
    SystemParams,
    assemble_relay_matrix,
    assemble_source_covariance,
    design_energy_beam,
    diagonalize,
    emit_results,
    generate_channels,
    generator_name,
    lambda_f_closed_form,
    noef_rate_exact,
    p3b_objective,
    path_loss_amplitude,
    rate_diagonal,
    rate_exact_matrix,
    run_ao,
    run_validation_suite,
    solve_noef,
    solve_p3b,
    solve_p3c,
    solve_relay_power,
    svd_ordered,
    sweep_distance,
    sweep_rho,
)

__version__ = "0.1.0"
