"""Exact bound states of the Kratzer molecular potential in N dimensions.

Three independent routes to the same spectrum: the closed-form solution,
an iterative secular-determinant method run over exact arithmetic, and a
finite-difference eigensolver used as a numerical oracle. On top of these,
vibration-rotation line lists for diatomic molecules and comparisons with
measured band centers.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (
    ConfigurationError,
    ConvergenceError,
    DomainError,
    KratzerError,
    NotBoundError,
    ResolutionError,
    SelectionRuleError,
)
from .core import (
    CODATA2018,
    NATURAL,
    DimensionlessParams,
    EtaMode,
    MoleculeParams,
    PhysicalConstants,
    QuantumState,
    angular_lambda,
    compute_beta,
    compute_gamma,
    compute_kappa,
    energy_level,
    energy_to_wavenumber,
    load_molecule,
    potential_value,
    reduced_mass,
    wavenumber_to_energy,
)
from .specfun import (
    KummerParams,
    RadialFunction,
    kummer_m,
    kummer_polynomial,
    laguerre_from_kummer,
    pochhammer,
    radial_wavefunction,
)
from .aim import AimProblem, AimResult, Polynomial, RationalFunction, aim_iterate, aim_solve, rf_derivative
from .oracle import (
    RadialGrid,
    ReducedRadialProblem,
    TridiagonalMatrix,
    build_hamiltonian,
    default_grid,
    eigen_lowest,
    oracle_energy,
    reduce_problem,
    sturm_count,
    verification_report,
)
from .spectro import (
    BandReport,
    ExperimentComparison,
    Transition,
    compare_experiment,
    fundamental_band,
    level_energy,
    load_band_centers,
    transition_center,
    transition_wavenumber,
    with_experiment,
)

__all__ = [
    "__version__",
    "KratzerError",
    "DomainError",
    "ConvergenceError",
    "ConfigurationError",
    "SelectionRuleError",
    "ResolutionError",
    "NotBoundError",
    "PhysicalConstants",
    "CODATA2018",
    "NATURAL",
    "EtaMode",
    "MoleculeParams",
    "QuantumState",
    "DimensionlessParams",
    "angular_lambda",
    "reduced_mass",
    "potential_value",
    "compute_kappa",
    "compute_gamma",
    "compute_beta",
    "energy_level",
    "energy_to_wavenumber",
    "wavenumber_to_energy",
    "load_molecule",
    "pochhammer",
    "KummerParams",
    "kummer_m",
    "kummer_polynomial",
    "laguerre_from_kummer",
    "RadialFunction",
    "radial_wavefunction",
    "Polynomial",
    "RationalFunction",
    "rf_derivative",
    "AimProblem",
    "AimResult",
    "aim_iterate",
    "aim_solve",
    "RadialGrid",
    "ReducedRadialProblem",
    "TridiagonalMatrix",
    "reduce_problem",
    "build_hamiltonian",
    "sturm_count",
    "eigen_lowest",
    "default_grid",
    "oracle_energy",
    "verification_report",
    "level_energy",
    "Transition",
    "transition_wavenumber",
    "BandReport",
    "fundamental_band",
    "transition_center",
    "ExperimentComparison",
    "compare_experiment",
    "with_experiment",
    "load_band_centers",
]
