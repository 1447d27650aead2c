"""Exact solutions and grid propagation for the one-dimensional
non-Hermitian time-dependent oscillator with an imaginary linear term."""

from ._core import (
    AuxInitialConditions,
    AuxiliarySolution,
    NhoscError,
    ParameterSet,
    PropagatorKernel,
    PTClass,
    SpatialGrid,
    TimeProfile,
    WavefunctionGrid,
    apply_hamiltonian,
    build_grid,
    closed_form_energy,
    closed_form_energy_paper,
    compare_dumps,
    constant_case_solution,
    default_initial_conditions,
    energy_of_mode,
    evolve,
    gamma_dot_derived,
    hermite,
    inner_product,
    phase_f,
    psi_n,
    psi_n_grid,
    pt_classify,
    reality_scan,
    residuals,
    run_scenario,
    sample_mode,
    sigma_n,
    solve_auxiliary,
)

__all__ = [
    "AuxInitialConditions",
    "AuxiliarySolution",
    "NhoscError",
    "ParameterSet",
    "PropagatorKernel",
    "PTClass",
    "SpatialGrid",
    "TimeProfile",
    "WavefunctionGrid",
    "apply_hamiltonian",
    "build_grid",
    "closed_form_energy",
    "closed_form_energy_paper",
    "compare_dumps",
    "constant_case_solution",
    "default_initial_conditions",
    "energy_of_mode",
    "evolve",
    "gamma_dot_derived",
    "hermite",
    "inner_product",
    "phase_f",
    "psi_n",
    "psi_n_grid",
    "pt_classify",
    "reality_scan",
    "residuals",
    "run_scenario",
    "sample_mode",
    "sigma_n",
    "solve_auxiliary",
]
