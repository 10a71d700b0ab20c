"""
N-boson energy bounds from the one-body reduction.

This module provides:
- reduced_couplings: lambda and gamma of the reduced Hamiltonian
- conjecture_status: which lower bounds are proven and why
- lower_bound: ground energy of the reduced Hamiltonian with its status
- gaussian_upper_bound: scale-optimized Gaussian variational upper bound
- closed forms of both bounds for the linear potential
- bounds_table: per-N records, computed in parallel
"""

from __future__ import annotations

import math
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

from scipy import integrate
from scipy.special import gammaln

from .errors import DomainError, NumericalError, UnsupportedExponentError
from .onebody import (
    GroundStateResult,
    OneBodyProblem,
    SolverConfig,
    SystemParams,
    scaled_ground_energy,
    solve,
    unit_energy,
    unit_result,
)
from .onebody.line_search import minimize_scale
from .potentials import PotentialKind, PotentialSpec, validate
from .util import pool

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

# relative agreement required between the closed-form and solver routes
CROSSCHECK_TOL = 1e-4

NONRELATIVISTIC_NOTE = "holds for every attractive V in the nonrelativistic large-m limit"


class LowerBoundStatus(Enum):
    """Whether <H> >= <H_c> is established for a system"""
    PROVEN = "PROVEN"
    CONJECTURED = "CONJECTURED"


def reduced_couplings(n_particles: int) -> Tuple[float, int]:
    """
    Couplings of the reduced one-body Hamiltonian.

    Returns:
        (lam, gamma) = (2(N-1)/N, N(N-1)/2)

    Raises:
        DomainError: N < 2

    Example:
        >>> reduced_couplings(10)
        (1.8, 45)
    """
    params = SystemParams(n_particles)
    return params.lam, params.gamma


def conjecture_status(
    mass: float,
    n_particles: int,
    potential: PotentialSpec
) -> Tuple[LowerBoundStatus, str]:
    """
    Proof status of the lower bound for (m, N, potential kind).

    Returns:
        (status, reason) where reason names the case that settles it
    """
    kind = potential.effective_kind
    if n_particles == 2:
        return LowerBoundStatus.PROVEN, "N = 2: the reduction is exact"
    if mass == 0:
        reason = "massless bosons: proven for every N"
        if n_particles == 4:
            reason += " (subsumes the earlier N = 4 massless result)"
        return LowerBoundStatus.PROVEN, reason
    if kind is PotentialKind.HARMONIC:
        return LowerBoundStatus.PROVEN, "harmonic interaction: proven for every m and N"
    if kind is PotentialKind.COULOMB:
        return LowerBoundStatus.PROVEN, "Coulomb/gravitational interaction: proven for every m and N"
    if n_particles == 3:
        return LowerBoundStatus.PROVEN, "N = 3: proven for every m and potential"
    return (
        LowerBoundStatus.CONJECTURED,
        f"m > 0, N = {n_particles}, {kind.value} interaction: not covered by a known proof; "
        f"{NONRELATIVISTIC_NOTE}",
    )


@dataclass
class LowerBound:
    """Lower bound energy with provenance."""
    energy: float
    status: LowerBoundStatus
    reason: str
    method: str
    converged: bool = True
    caveat: Optional[str] = None
    result: Optional[GroundStateResult] = None


def lower_bound(
    params: SystemParams,
    potential: PotentialSpec,
    config: Optional[SolverConfig] = None
) -> LowerBound:
    """
    Ground energy of ``N sqrt(lam p^2 + m^2) + gamma V(r)``.

    Massless confining problems go through the dilation law and the memoized
    unit energy; everything else is solved directly.
    """
    validate(potential)
    status, reason = conjecture_status(params.mass, params.n_particles, potential)
    q = potential.exponent

    if params.mass == 0 and q > 0:
        energy = scaled_ground_energy(
            params.n_particles * math.sqrt(params.lam),
            params.gamma * potential.coupling,
            q,
            config,
        )
        unit = unit_result(q, config)
        bound = LowerBound(energy, status, reason, "dilation law", converged=unit.converged)
    else:
        result = solve(OneBodyProblem.from_system(params, potential), config)
        bound = LowerBound(
            result.energy, status, reason, "direct solve",
            converged=result.converged, result=result,
        )

    if status is LowerBoundStatus.CONJECTURED:
        bound.caveat = "lower bound rests on the unproven inequality <H> >= <H_c>"
    return bound


def lower_bound_linear_closed_form(
    n_particles: int,
    coupling: float = 1.0,
    config: Optional[SolverConfig] = None
) -> float:
    """
    ``N ((N-1)^3 / (2N))^{1/4} e sqrt(c)`` for ``V = c r``, massless bosons.

    ``e`` is the solver's ground energy of ``|p| + r``.
    """
    n = SystemParams(n_particles).n_particles
    return n * ((n - 1) ** 3 / (2.0 * n)) ** 0.25 * unit_energy(1.0, config) * math.sqrt(coupling)


def gaussian_upper_bound_linear_closed_form(n_particles: int, coupling: float = 1.0) -> float:
    """``4N ((N-1)^3 / (2N pi^2))^{1/4} sqrt(c)`` for ``V = c r``, massless bosons."""
    n = SystemParams(n_particles).n_particles
    return 4.0 * n * ((n - 1) ** 3 / (2.0 * n * math.pi ** 2)) ** 0.25 * math.sqrt(coupling)


def _pair_moment(q: float) -> float:
    """<|r12|^q> of the Gaussian trial state at unit width."""
    return 2.0 ** (q / 2.0) * math.exp(gammaln((3.0 + q) / 2.0) - gammaln(1.5))


def _momentum_sigma(n_particles: int, width: float) -> float:
    """Per-component standard deviation of one particle's momentum."""
    return math.sqrt((n_particles - 1) / (2.0 * n_particles)) / width


def _mean_kinetic(sigma: float, mass: float) -> float:
    """Maxwell average of sqrt(p^2 + m^2) for per-component deviation sigma."""
    if mass == 0:
        return 2.0 * sigma * math.sqrt(2.0 / math.pi)
    value, _ = integrate.quad(
        lambda t: t * t * math.exp(-0.5 * t * t) * math.sqrt((sigma * t) ** 2 + mass * mass),
        0.0,
        math.inf,
        epsrel=1e-10,
    )
    return math.sqrt(2.0 / math.pi) * value


def gaussian_upper_bound(
    params: SystemParams,
    potential: PotentialSpec,
    config: Optional[SolverConfig] = None
) -> float:
    """
    Variational upper bound from a translation-invariant Gaussian trial state.

    With width ``w`` the pair distance has per-component variance ``w^2``
    and one particle's momentum ``(N-1)/(2N w^2)``. The energy
    ``N <sqrt(p1^2 + m^2)> + gamma <V(r12)>`` is minimized over w: in closed
    form when m = 0, by golden-section search otherwise.

    Raises:
        UnsupportedExponentError: q <= 0
    """
    validate(potential)
    q = potential.exponent
    if q <= 0:
        raise UnsupportedExponentError(
            f"Gaussian upper bound needs q > 0, got q={q}", constraint="q > 0"
        )
    n = params.n_particles
    pair_weight = params.gamma * potential.coupling * _pair_moment(q)

    if params.mass == 0:
        kinetic_weight = n * _mean_kinetic(_momentum_sigma(n, 1.0), 0.0)
        width = (kinetic_weight / (q * pair_weight)) ** (1.0 / (1.0 + q))
        return (1.0 + 1.0 / q) * kinetic_weight / width

    config = config or SolverConfig()

    def energy(width: float) -> float:
        return n * _mean_kinetic(_momentum_sigma(n, width), params.mass) + pair_weight * width ** q

    # bracket between the massless and nonrelativistic optimal widths
    kinetic_weight = n * _mean_kinetic(_momentum_sigma(n, 1.0), 0.0)
    w_massless = (kinetic_weight / (q * pair_weight)) ** (1.0 / (1.0 + q))
    w_nonrel = (3.0 * (n - 1) / (2.0 * params.mass * q * pair_weight)) ** (1.0 / (2.0 + q))
    lo, hi = sorted((w_massless, w_nonrel))
    search = minimize_scale(
        energy,
        (lo / 4.0, hi * 4.0),
        log_tol=config.scale_tol,
        rel_tol=config.rel_tol,
        max_expansions=config.max_expansions,
    )
    return search.value


@dataclass
class BoundsRecord:
    """
    Lower and upper energy bound for one particle number.

    Attributes:
        n_particles: N
        mass: Boson mass
        potential: Pair potential
        lower: Lower bound (None if the row failed)
        lower_status: Proof status of the lower bound
        upper: Gaussian upper bound (None when unavailable)
        notes: Provenance of each number
        converged: Basis escalation reached its tolerance
        error: Row-level failure marker
    """
    n_particles: int
    mass: float
    potential: PotentialSpec
    lower: Optional[float] = None
    lower_status: Optional[LowerBoundStatus] = None
    upper: Optional[float] = None
    notes: List[str] = field(default_factory=list)
    converged: bool = True
    error: Optional[str] = None

    @property
    def ratio(self) -> Optional[float]:
        if self.lower is None or self.upper is None or self.lower == 0:
            return None
        return self.upper / self.lower

    @property
    def relative_error(self) -> Optional[float]:
        """Half-width (U - L) / (U + L) of the bracket around the energy."""
        if self.lower is None or self.upper is None or (self.upper + self.lower) == 0:
            return None
        return (self.upper - self.lower) / (self.upper + self.lower)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "N": self.n_particles,
            "m": self.mass,
            "potential": self.potential.effective_kind.value,
            "q": self.potential.exponent,
            "c": self.potential.coupling,
            "lower": self.lower,
            "lower_status": self.lower_status.value if self.lower_status else None,
            "upper": self.upper,
            "ratio": self.ratio,
            "error": self.error,
            "notes": list(self.notes),
        }


def _bounds_row(
    n_particles: int,
    potential: PotentialSpec,
    mass: float,
    config: Optional[SolverConfig]
) -> BoundsRecord:
    params = SystemParams(n_particles, mass)
    record = BoundsRecord(n_particles, mass, potential)
    record.lower_status, reason = conjecture_status(mass, n_particles, potential)
    record.notes.append(f"status: {reason}")
    try:
        if mass == 0 and potential.effective_kind is PotentialKind.LINEAR:
            record.lower = lower_bound_linear_closed_form(n_particles, potential.coupling, config)
            record.upper = gaussian_upper_bound_linear_closed_form(n_particles, potential.coupling)
            record.notes.append("lower, upper: linear closed forms")
            direct = solve(OneBodyProblem.from_system(params, potential), config)
            record.converged = direct.converged
            mismatch = abs(direct.energy - record.lower) / record.lower
            record.notes.append(f"cross-check: direct solve at n={direct.basis_size} differs by {mismatch:.3g}")
            if mismatch > CROSSCHECK_TOL:
                logger.warning("bounds_crosscheck", extra={
                    "N": n_particles, "closed_form": record.lower,
                    "solver": direct.energy, "mismatch": mismatch,
                })
                record.notes.append(f"closed form and direct solve disagree beyond {CROSSCHECK_TOL:g}")
        else:
            bound = lower_bound(params, potential, config)
            record.lower = bound.energy
            record.converged = bound.converged
            record.notes.append(f"lower: {bound.method}")
            if bound.caveat:
                record.notes.append(bound.caveat)
            if bound.result is not None and bound.result.note:
                record.notes.append(bound.result.note)
            if potential.exponent > 0:
                record.upper = gaussian_upper_bound(params, potential, config)
                record.notes.append("upper: Gaussian trial state")
            else:
                record.notes.append("upper: no Gaussian bound for q <= 0")
    except NumericalError as exc:
        record.error = f"{type(exc).__name__}: {exc}"
        logger.info("bounds_row_failed", extra={"N": n_particles, "error": record.error})
        return record

    if record.lower is not None and record.upper is not None and record.lower > record.upper:
        record.notes.append("lower exceeds upper")
        logger.warning("bounds_order_violation", extra={
            "N": n_particles, "lower": record.lower, "upper": record.upper,
        })
    logger.info("bounds_row", extra={
        "N": n_particles, "lower": record.lower, "upper": record.upper,
        "status": record.lower_status.value,
    })
    return record


def bounds_table(
    n_values: Sequence[int],
    potential: PotentialSpec,
    mass: float = 0.0,
    config: Optional[SolverConfig] = None,
    workers: Optional[int] = None
) -> List[BoundsRecord]:
    """
    One BoundsRecord per particle number, ordered as ``n_values``.

    Rows are computed in parallel. Numerical failures are recorded on the
    row (``error``) and never abort the table.

    Raises:
        DomainError: Invalid potential, mass or particle number
        ConfigurationError: Invalid solver configuration
    """
    validate(potential)
    config = (config or SolverConfig()).validate()
    if not n_values:
        raise DomainError("empty particle-number range")
    for n in n_values:
        SystemParams(n, mass)

    if mass == 0 and potential.exponent > 0:
        # fill the shared unit-energy cache once before fanning out
        try:
            unit_energy(potential.exponent, config)
        except NumericalError:
            pass

    return pool(
        _bounds_row,
        [(n, potential, mass, config) for n in n_values],
        max_workers=workers,
    )
