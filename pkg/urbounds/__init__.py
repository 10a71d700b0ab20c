"""
urbounds - energy bounds for ultrarelativistic and semirelativistic N-boson systems.

This package provides:
- Pair potentials: the attractive power-law family sgn(q) c r^q
- One-body solver: scale-optimized Rayleigh-Ritz ground energies of
  a sqrt(lam p^2 + mu^2) + b V(r)
- N-body bounds: reduced-Hamiltonian lower bounds with proof status and
  Gaussian variational upper bounds
- Monte Carlo: zero-sum momentum ensembles and mean-angle estimators
- CLI: bounds, solve, verify and status commands
"""

from __future__ import annotations

# Version is read from pyproject.toml - single source of truth
try:
    from importlib.metadata import version as _get_version
    __version__ = _get_version("urbounds")
except Exception:
    # Fallback for editable installs or when package metadata isn't available
    __version__ = "0.0.0.dev"

from .errors import (
    UrbError,
    DomainError,
    NotAttractiveError,
    UnsupportedExponentError,
    ConfigurationError,
    NumericalError,
    CouplingAboveCriticalError,
    BracketExhaustedError,
    NumericalFailureError,
)
from .potentials import PotentialKind, PotentialSpec, evaluate, parse_potential, validate
from .onebody import (
    GroundStateResult,
    OneBodyProblem,
    SolverConfig,
    SystemParams,
    ground_energy_at_scale,
    kinetic_matrix,
    potential_matrix,
    scaled_ground_energy,
    solve,
)
from .bounds import (
    BoundsRecord,
    LowerBound,
    LowerBoundStatus,
    bounds_table,
    conjecture_status,
    gaussian_upper_bound,
    gaussian_upper_bound_linear_closed_form,
    lower_bound,
    lower_bound_linear_closed_form,
    reduced_couplings,
)
from .montecarlo import (
    EnsembleFamily,
    Estimate,
    MCReport,
    MomentumConfig,
    SamplingConfig,
    delta_expectation,
    mean_angle_stats,
    sample,
)

__all__ = [
    # Version info
    "__version__",
    # Errors
    "UrbError",
    "DomainError",
    "NotAttractiveError",
    "UnsupportedExponentError",
    "ConfigurationError",
    "NumericalError",
    "CouplingAboveCriticalError",
    "BracketExhaustedError",
    "NumericalFailureError",
    # Potentials
    "PotentialKind",
    "PotentialSpec",
    "evaluate",
    "parse_potential",
    "validate",
    # One-body solver
    "GroundStateResult",
    "OneBodyProblem",
    "SolverConfig",
    "SystemParams",
    "ground_energy_at_scale",
    "kinetic_matrix",
    "potential_matrix",
    "scaled_ground_energy",
    "solve",
    # Bounds
    "BoundsRecord",
    "LowerBound",
    "LowerBoundStatus",
    "bounds_table",
    "conjecture_status",
    "gaussian_upper_bound",
    "gaussian_upper_bound_linear_closed_form",
    "lower_bound",
    "lower_bound_linear_closed_form",
    "reduced_couplings",
    # Monte Carlo
    "EnsembleFamily",
    "Estimate",
    "MCReport",
    "MomentumConfig",
    "SamplingConfig",
    "delta_expectation",
    "mean_angle_stats",
    "sample",
]
