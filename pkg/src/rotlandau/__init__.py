"""Quasi-exact spectra for a rotating induced-dipole Landau analogue.

A neutral polarizable particle in crossed electric and magnetic fields feels
an effective uniform magnetic field; adding a Kratzer-type potential and
moving to a rotating frame yields a radial problem whose bound states are
quasi-exactly solvable: for each polynomial degree n and angular momentum l
only a discrete set of cyclotron frequencies supports a closed-form state.
This package computes those frequencies and energies from the series
truncation conditions, materializes the radial profiles, and cross-checks
every line against an independent finite-difference eigensolver.
"""

from ._version import __version__
from .errors import (
    CoefficientOverflowError,
    ConfigError,
    EigenvalueBracketError,
    NoAdmissibleRootError,
    NonConfiningChannelError,
    NoNearbyEigenvalueError,
    NonTerminatedSeriesError,
    RotlandauError,
    SeriesConvergenceError,
)
from .heun import (
    HeunParams,
    HeunSeries,
    closed_form_low_coefficients,
    evaluate_H,
    generate_coefficients,
    termination_check,
)
from .model import (
    ChannelParams,
    EnergyRecord,
    PhysicalConfig,
    channel_params,
    cyclotron_frequency,
    effective_mass,
    energy_from_nu,
    nu_from_energy,
)
from .oracle import (
    OracleReport,
    RadialGrid,
    SubcriticalChannelWarning,
    dimensionless_operator,
    lowest_eigenpairs,
    lowest_eigenvalues,
    sturm_counts,
    verify_line,
    verify_quasi_exact,
)
from .spectrum import (
    SpectrumLine,
    TruncationPolynomial,
    allowed_frequencies,
    energy_level,
    ground_state_closed_form,
    theta_roots,
    truncation_polynomial,
)
from .wavefunction import RadialFunction, count_nodes, norm_squared, radial_wavefunction

__all__ = [
    "__version__",
    "ChannelParams",
    "CoefficientOverflowError",
    "ConfigError",
    "EigenvalueBracketError",
    "EnergyRecord",
    "HeunParams",
    "HeunSeries",
    "NoAdmissibleRootError",
    "NonConfiningChannelError",
    "NoNearbyEigenvalueError",
    "NonTerminatedSeriesError",
    "OracleReport",
    "PhysicalConfig",
    "RadialFunction",
    "RadialGrid",
    "RotlandauError",
    "SeriesConvergenceError",
    "SpectrumLine",
    "SubcriticalChannelWarning",
    "TruncationPolynomial",
    "allowed_frequencies",
    "channel_params",
    "closed_form_low_coefficients",
    "count_nodes",
    "cyclotron_frequency",
    "dimensionless_operator",
    "effective_mass",
    "energy_from_nu",
    "energy_level",
    "evaluate_H",
    "generate_coefficients",
    "ground_state_closed_form",
    "lowest_eigenpairs",
    "lowest_eigenvalues",
    "norm_squared",
    "nu_from_energy",
    "radial_wavefunction",
    "sturm_counts",
    "termination_check",
    "theta_roots",
    "truncation_polynomial",
    "verify_line",
    "verify_quasi_exact",
]
