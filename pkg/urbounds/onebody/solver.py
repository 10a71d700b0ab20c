"""
Rayleigh-Ritz solver for one-body semirelativistic Hamiltonians.

This module provides:
- SystemParams / OneBodyProblem: the reduced N-boson problem and its
  general one-body form ``a * sqrt(lam * p^2 + mu^2) + b * sgn(q) c r^q``
- SolverConfig: basis, quadrature and search settings
- kinetic_matrix / potential_matrix: matrix elements in the l = 0 radial
  oscillator basis at a given length scale
- ground_energy_at_scale: lowest eigenvalue of the truncated Hamiltonian
- solve: scale-optimized, basis-escalated ground energy
- scaled_ground_energy: dilation law for massless confining problems,
  backed by a memoized unit-coupling energy
"""

from __future__ import annotations

import math
import logging
import threading
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Any, Dict, Optional, Tuple

import numpy as np
import scipy.linalg

from ..errors import (
    ConfigurationError,
    CouplingAboveCriticalError,
    DomainError,
    NumericalFailureError,
    UnsupportedExponentError,
)
from ..potentials import PotentialSpec, validate
from . import basis
from .line_search import minimize_scale

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

CRITICAL_COULOMB = 2.0 / math.pi

# exponents with exact moment matrices
CLOSED_FORM_EXPONENTS = (-1.0, 1.0, 2.0)


@dataclass(frozen=True)
class SystemParams:
    """
    N identical bosons of mass m (natural units).

    Attributes:
        n_particles: Particle count N >= 2
        mass: Boson mass m >= 0
    """
    n_particles: int
    mass: float = 0.0

    def __post_init__(self) -> None:
        if int(self.n_particles) != self.n_particles or self.n_particles < 2:
            raise DomainError(f"N must be an integer >= 2, got {self.n_particles}", constraint="N >= 2")
        if not math.isfinite(self.mass) or self.mass < 0:
            raise DomainError(f"mass must be >= 0, got {self.mass}", constraint="m >= 0")

    @property
    def lam(self) -> float:
        """Momentum weight 2(N-1)/N of the reduced kinetic term."""
        return 2.0 * (self.n_particles - 1) / self.n_particles

    @property
    def gamma(self) -> int:
        """Number of pairs N(N-1)/2."""
        return self.n_particles * (self.n_particles - 1) // 2


@dataclass(frozen=True)
class OneBodyProblem:
    """
    ``a * sqrt(lam * p^2 + mu^2) + b * V(r)`` for an l = 0 radial state.

    Attributes:
        a: Kinetic weight (> 0)
        mu: Effective mass (>= 0)
        b: Potential weight (> 0)
        potential: Pair potential V
        lam: Momentum weight inside the square root (> 0)
    """
    a: float
    mu: float
    b: float
    potential: PotentialSpec
    lam: float = 1.0

    @classmethod
    def from_system(cls, params: SystemParams, potential: PotentialSpec) -> "OneBodyProblem":
        """Reduced Hamiltonian ``N sqrt(lam p^2 + m^2) + gamma V(r)`` of an N-boson system."""
        return cls(
            a=float(params.n_particles),
            mu=float(params.mass),
            b=float(params.gamma),
            potential=potential,
            lam=params.lam,
        )

    @property
    def kinetic_slope(self) -> float:
        """Coefficient of |p| in the massless limit."""
        return self.a * math.sqrt(self.lam)

    def validate(self) -> "OneBodyProblem":
        for name in ("a", "b", "lam"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise DomainError(f"{name} must be positive, got {value}", constraint=f"{name} > 0")
        if not math.isfinite(self.mu) or self.mu < 0:
            raise DomainError(f"mu must be >= 0, got {self.mu}", constraint="mu >= 0")
        validate(self.potential)
        return self


@dataclass(frozen=True)
class SolverConfig:
    """Configuration for the Rayleigh-Ritz solver"""
    basis_size: int = 32  # oscillator levels at the first escalation step
    quadrature_order: int = 200  # Gauss-Jacobi nodes, raised to 4n when n grows
    scale_bracket: Tuple[float, float] = (0.1, 10.0)
    rel_tol: float = 1e-6
    max_basis_size: int = 96
    max_expansions: int = 8
    scale_tol: float = 1e-5  # width in log(scale)

    def validate(self) -> "SolverConfig":
        if self.basis_size < 4:
            raise ConfigurationError(f"basis_size must be >= 4, got {self.basis_size}")
        if self.quadrature_order < 4 * self.basis_size:
            raise ConfigurationError(
                f"quadrature_order {self.quadrature_order} < 4 * basis_size ({4 * self.basis_size})"
            )
        if not self.rel_tol > 0:
            raise ConfigurationError(f"rel_tol must be positive, got {self.rel_tol}")
        if self.max_basis_size < self.basis_size:
            raise ConfigurationError(
                f"max_basis_size {self.max_basis_size} < basis_size {self.basis_size}"
            )
        lo, hi = self.scale_bracket
        if not (0 < lo < hi and math.isfinite(hi)):
            raise ConfigurationError(f"invalid scale bracket {self.scale_bracket}")
        if self.max_expansions < 0 or not self.scale_tol > 0:
            raise ConfigurationError("max_expansions must be >= 0 and scale_tol positive")
        return self

    def order_for(self, n: int) -> int:
        """Quadrature order used for an n-function basis."""
        return max(self.quadrature_order, 4 * n)


@dataclass
class GroundStateResult:
    """Outcome of :func:`solve`."""
    energy: float
    optimal_scale: float
    basis_size: int
    convergence: float  # |E(n) - E(n_prev)| / |E(n)|
    converged: bool
    quadrature_order: int
    evaluations: int = 0
    note: Optional[str] = None

    @property
    def variational(self) -> str:
        return "upper bound to the true one-body ground energy"

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["variational"] = self.variational
        return data


def _check_order(n: int, quad_order: int) -> None:
    if n < 1:
        raise ConfigurationError(f"basis size must be >= 1, got {n}")
    if quad_order < 4 * n:
        raise ConfigurationError(
            f"quadrature order {quad_order} too low for {n} basis functions (need >= {4 * n})"
        )


@lru_cache(maxsize=32)
def _kinetic_workspace(n: int, quad_order: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nodes, weights and basis values for the momentum-space quadrature."""
    nodes, weights = basis.radial_rule(quad_order, 2.0, basis.support_radius(n))
    values = basis.oscillator_functions(n, nodes)
    for arr in (nodes, weights, values):
        arr.setflags(write=False)
    return nodes, weights, values


@lru_cache(maxsize=64)
def _moments(n: int, q: float, quad_order: int) -> np.ndarray:
    if q in CLOSED_FORM_EXPONENTS:
        moments = basis.power_moments_closed(n, q)
    else:
        moments = basis.power_moments_quadrature(n, q, quad_order)
    moments.setflags(write=False)
    return moments


def kinetic_matrix(problem: OneBodyProblem, scale: float, n: int, quad_order: int) -> np.ndarray:
    """
    Matrix of ``a * sqrt(lam * p^2 + mu^2)`` in the oscillator basis of length ``scale``.

    Args:
        problem: One-body problem supplying a, lam and mu
        scale: Oscillator length (> 0)
        n: Basis size
        quad_order: Gauss-Jacobi nodes (>= 4n)

    Returns:
        Symmetric n x n array
    """
    _check_order(n, quad_order)
    if not scale > 0:
        raise DomainError(f"scale must be positive, got {scale}", constraint="scale > 0")
    nodes, weights, values = _kinetic_workspace(n, quad_order)
    p = nodes / scale
    energy = problem.a * np.sqrt(problem.lam * p * p + problem.mu * problem.mu)
    gram = basis.weighted_gram(values, weights * energy)
    return basis.momentum_phases(n) * gram


def potential_matrix(
    potential: PotentialSpec,
    weight: float,
    scale: float,
    n: int,
    quad_order: int
) -> np.ndarray:
    """
    Matrix of ``weight * sgn(q) c r^q`` in the oscillator basis of length ``scale``.

    Closed-form moments are used for q in {-1, 1, 2}, Gauss-Jacobi
    quadrature otherwise.
    """
    _check_order(n, quad_order)
    if not scale > 0:
        raise DomainError(f"scale must be positive, got {scale}", constraint="scale > 0")
    q = float(potential.exponent)
    factor = weight * potential.sign * potential.coupling * scale ** q
    return factor * _moments(n, q, quad_order)


def _lowest_eigenvalue(hamiltonian: np.ndarray, scale: float) -> float:
    if not np.all(np.isfinite(hamiltonian)):
        raise NumericalFailureError(
            "non-finite Hamiltonian matrix elements",
            diagnostics={"scale": scale, "basis_size": hamiltonian.shape[0]},
        )
    try:
        eigenvalues = scipy.linalg.eigh(
            hamiltonian, eigvals_only=True, subset_by_index=[0, 0]
        )
    except (scipy.linalg.LinAlgError, ValueError) as exc:
        raise NumericalFailureError(
            f"symmetric eigensolver failed: {exc}",
            diagnostics={"scale": scale, "basis_size": hamiltonian.shape[0], "lapack": str(exc)},
        ) from exc
    value = float(eigenvalues[0])
    if not math.isfinite(value):
        raise NumericalFailureError(
            "eigensolver returned a non-finite eigenvalue",
            diagnostics={"scale": scale, "basis_size": hamiltonian.shape[0]},
        )
    return value


def ground_energy_at_scale(
    problem: OneBodyProblem,
    scale: float,
    config: Optional[SolverConfig] = None,
    n: Optional[int] = None
) -> float:
    """
    Lowest Rayleigh-Ritz eigenvalue at a fixed oscillator length.

    Every value returned is an upper bound to the ground energy of the
    one-body Hamiltonian.

    Args:
        problem: Validated one-body problem
        scale: Oscillator length
        config: Solver configuration (default SolverConfig())
        n: Basis size (default config.basis_size)
    """
    config = config or SolverConfig()
    n = config.basis_size if n is None else int(n)
    order = config.order_for(n)
    hamiltonian = (
        kinetic_matrix(problem, scale, n, order)
        + potential_matrix(problem.potential, problem.b, scale, n, order)
    )
    return _lowest_eigenvalue(hamiltonian, scale)


def _check_critical(problem: OneBodyProblem) -> None:
    if problem.potential.exponent != -1.0:
        return
    effective = problem.b * problem.potential.coupling / problem.kinetic_slope
    if effective >= CRITICAL_COULOMB:
        raise CouplingAboveCriticalError(
            f"effective Coulomb coupling {effective:.6g} >= 2/pi: spectrum unbounded below",
            diagnostics={"effective_coupling": effective, "critical": CRITICAL_COULOMB},
        )


def _optimize(problem: OneBodyProblem, config: SolverConfig, n: int) -> Tuple[float, float, int]:
    search = minimize_scale(
        lambda scale: ground_energy_at_scale(problem, scale, config, n),
        config.scale_bracket,
        log_tol=config.scale_tol,
        rel_tol=config.rel_tol,
        max_expansions=config.max_expansions,
    )
    return search.value, search.scale, search.evaluations


def solve(problem: OneBodyProblem, config: Optional[SolverConfig] = None) -> GroundStateResult:
    """
    Scale-optimized ground energy with basis escalation.

    The basis starts at ``config.basis_size`` and is compared against half
    that size, then grows in steps of ``basis_size // 2`` (capped at
    ``max_basis_size``) until the relative change between consecutive sizes
    drops to ``rel_tol``. Reaching the cap first returns an unconverged
    result rather than raising.

    Raises:
        DomainError: Invalid problem
        ConfigurationError: Invalid configuration
        CouplingAboveCriticalError: Coulomb coupling at or above 2/pi
        BracketExhaustedError: Scale optimum left the expanded bracket
        NumericalFailureError: Eigensolver failure
    """
    config = (config or SolverConfig()).validate()
    problem.validate()
    _check_critical(problem)

    if problem.potential.exponent == -1.0 and problem.mu == 0.0:
        # massless Coulomb is dilation homogeneous: infimum 0, never attained
        return GroundStateResult(
            energy=0.0,
            optimal_scale=math.inf,
            basis_size=config.basis_size,
            convergence=0.0,
            converged=True,
            quadrature_order=config.order_for(config.basis_size),
            evaluations=0,
            note="scale-free massless Coulomb problem: spectrum bottom 0 is not attained",
        )

    logger.info("solve_start", extra={
        "a": problem.a, "mu": problem.mu, "b": problem.b, "lam": problem.lam,
        "potential": problem.potential.descriptor,
    })

    n = config.basis_size
    step = max(1, n // 2)
    previous, _, evaluations = _optimize(problem, config, n - step)
    while True:
        energy, scale, count = _optimize(problem, config, n)
        evaluations += count
        estimate = abs(energy - previous) / max(abs(energy), np.finfo(float).tiny)
        if estimate <= config.rel_tol or n >= config.max_basis_size:
            break
        logger.info("solve_escalate", extra={"basis_size": n, "energy": energy, "estimate": estimate})
        previous = energy
        n = min(n + step, config.max_basis_size)

    converged = estimate <= config.rel_tol
    result = GroundStateResult(
        energy=energy,
        optimal_scale=scale,
        basis_size=n,
        convergence=estimate,
        converged=converged,
        quadrature_order=config.order_for(n),
        evaluations=evaluations,
    )
    if not converged:
        result.note = f"basis escalation stopped at n={n} with relative change {estimate:.3g}"
        logger.warning("solve_unconverged", extra={
            "basis_size": n, "estimate": estimate, "rel_tol": config.rel_tol,
        })
    logger.info("solve_complete", extra={
        "energy": energy, "scale": scale, "basis_size": n, "evaluations": evaluations,
    })
    return result


_unit_results: Dict[Tuple[float, SolverConfig], GroundStateResult] = {}
_unit_lock = threading.Lock()


def unit_result(q: float, config: Optional[SolverConfig] = None) -> GroundStateResult:
    """Memoized solution of ``|p| + r^q`` (q > 0) for a configuration."""
    config = config or SolverConfig()
    key = (float(q), config)
    with _unit_lock:
        cached = _unit_results.get(key)
    if cached is not None:
        return cached
    # solved outside the lock; concurrent fills compute the same value
    result = solve(OneBodyProblem(1.0, 0.0, 1.0, PotentialSpec.power(q)), config)
    with _unit_lock:
        return _unit_results.setdefault(key, result)


def unit_energy(q: float, config: Optional[SolverConfig] = None) -> float:
    """Ground energy E(1, 1, q) of ``|p| + r^q``."""
    return unit_result(q, config).energy


def clear_energy_cache() -> None:
    with _unit_lock:
        _unit_results.clear()


def scaled_ground_energy(
    a: float,
    b: float,
    q: float,
    config: Optional[SolverConfig] = None
) -> float:
    """
    Ground energy of ``a |p| + b r^q`` from the dilation law.

    ``E(a, b, q) = a^{q/(1+q)} b^{1/(1+q)} E(1, 1, q)``

    Raises:
        UnsupportedExponentError: q <= 0
        DomainError: a or b not positive

    Example:
        >>> scaled_ground_energy(4.0, 1.0, 1.0) / unit_energy(1.0)
        2.0
    """
    if not q > 0:
        raise UnsupportedExponentError(
            f"dilation law needs a confining exponent q > 0, got {q}",
            constraint="q > 0",
        )
    if not (a > 0 and b > 0):
        raise DomainError(f"a and b must be positive, got a={a}, b={b}", constraint="a, b > 0")
    return a ** (q / (1.0 + q)) * b ** (1.0 / (1.0 + q)) * unit_energy(q, config)
