"""
Attractive radial pair potentials.

The supported family is the signed power law

    V(r) = sgn(q) * c * r**q,   -1 <= q <= 2, q != 0, c > 0

which is increasing in r for every admissible exponent, so a single positive
coupling describes both confining (q > 0) and Coulomb-like (q < 0)
attraction. Named aliases cover the linear, Coulomb and harmonic members.
"""

from __future__ import annotations

import math
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from .errors import DomainError, NotAttractiveError, UnsupportedExponentError

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

MIN_EXPONENT = -1.0
MAX_EXPONENT = 2.0

ArrayLike = Union[float, np.ndarray]


class PotentialKind(Enum):
    """Named members of the power-law family."""
    LINEAR = "linear"
    COULOMB = "coulomb"
    HARMONIC = "harmonic"
    POWER = "power"


_ALIAS_EXPONENTS = {
    PotentialKind.LINEAR: 1.0,
    PotentialKind.COULOMB: -1.0,
    PotentialKind.HARMONIC: 2.0,
}


@dataclass(frozen=True)
class PotentialSpec:
    """
    Power-law pair potential ``sgn(q) * c * r**q``.

    Attributes:
        exponent: Dimensionless exponent q
        coupling: Positive coupling c (energy x length^-q)
        kind: Alias the spec was built from
    """
    exponent: float
    coupling: float = 1.0
    kind: PotentialKind = PotentialKind.POWER

    @classmethod
    def linear(cls, coupling: float = 1.0) -> "PotentialSpec":
        return cls(1.0, coupling, PotentialKind.LINEAR)

    @classmethod
    def coulomb(cls, coupling: float = 1.0) -> "PotentialSpec":
        return cls(-1.0, coupling, PotentialKind.COULOMB)

    @classmethod
    def harmonic(cls, coupling: float = 1.0) -> "PotentialSpec":
        return cls(2.0, coupling, PotentialKind.HARMONIC)

    @classmethod
    def power(cls, exponent: float, coupling: float = 1.0) -> "PotentialSpec":
        return cls(float(exponent), coupling, PotentialKind.POWER)

    @property
    def sign(self) -> float:
        return 1.0 if self.exponent > 0 else -1.0

    @property
    def effective_kind(self) -> PotentialKind:
        """Named kind implied by the exponent (``power:1:c`` is linear)."""
        for kind, q in _ALIAS_EXPONENTS.items():
            if self.exponent == q:
                return kind
        return PotentialKind.POWER

    @property
    def descriptor(self) -> str:
        """Textual form accepted by :func:`parse_potential`."""
        if self.kind is PotentialKind.POWER:
            return f"power:{self.exponent:g}:{self.coupling:g}"
        return f"{self.kind.value}:{self.coupling:g}"

    def with_coupling(self, coupling: float) -> "PotentialSpec":
        return PotentialSpec(self.exponent, coupling, self.kind)

    def __call__(self, r: ArrayLike) -> ArrayLike:
        return evaluate(self, r)


def evaluate(spec: PotentialSpec, r: ArrayLike) -> ArrayLike:
    """
    Evaluate ``V(r) = sgn(q) c r^q``.

    Args:
        spec: Potential to evaluate
        r: Positive distance (scalar or array)

    Returns:
        Energy of the same shape as ``r``

    Raises:
        DomainError: If any r is not strictly positive

    Example:
        >>> evaluate(PotentialSpec.coulomb(1.0), 2.0)
        -0.5
    """
    r_arr = np.asarray(r, dtype=float)
    if np.any(~(r_arr > 0)):
        raise DomainError(f"pair distance must be positive, got {r!r}", constraint="r > 0")
    value = spec.sign * spec.coupling * np.power(r_arr, spec.exponent)
    if np.ndim(value) == 0:
        return float(value)
    return value


def validate(spec: PotentialSpec) -> PotentialSpec:
    """
    Check that ``spec`` is an attractive member of the supported family.

    Returns:
        The same spec, unchanged

    Raises:
        NotAttractiveError: coupling c <= 0
        UnsupportedExponentError: q outside [-1, 2] or q == 0, or an alias
            whose exponent disagrees with its name
    """
    if not math.isfinite(spec.coupling) or spec.coupling <= 0:
        raise NotAttractiveError(
            f"coupling must be positive for an attractive potential, got c={spec.coupling}",
            constraint="c > 0",
        )
    q = spec.exponent
    if not math.isfinite(q) or q < MIN_EXPONENT or q > MAX_EXPONENT or q == 0:
        raise UnsupportedExponentError(
            f"exponent q={q} outside the supported family [-1, 2] \\ {{0}}",
            constraint="-1 <= q <= 2 and q != 0",
        )
    alias_q = _ALIAS_EXPONENTS.get(spec.kind)
    if alias_q is not None and q != alias_q:
        raise UnsupportedExponentError(
            f"{spec.kind.value} potential must have q={alias_q:g}, got q={q}",
            constraint=f"{spec.kind.value} => q = {alias_q:g}",
        )
    return spec


def parse_potential(descriptor: str) -> PotentialSpec:
    """
    Parse a CLI potential descriptor and validate it.

    Accepted forms: ``linear[:c]``, ``coulomb[:c]``, ``harmonic[:c]``,
    ``power:q[:c]``; the coupling defaults to 1.

    Raises:
        DomainError: On malformed text or an invalid potential
    """
    parts = [part.strip() for part in descriptor.strip().lower().split(":")]
    name, args = parts[0], parts[1:]
    try:
        values = [float(a) for a in args]
    except ValueError:
        raise DomainError(f"malformed potential descriptor {descriptor!r}") from None

    if name == PotentialKind.POWER.value:
        if len(values) not in (1, 2):
            raise DomainError(f"expected power:q[:c], got {descriptor!r}")
        spec = PotentialSpec.power(values[0], values[1] if len(values) == 2 else 1.0)
    else:
        try:
            kind = PotentialKind(name)
        except ValueError:
            raise DomainError(f"unknown potential {name!r} in {descriptor!r}") from None
        if len(values) > 1:
            raise DomainError(f"expected {name}[:c], got {descriptor!r}")
        coupling = values[0] if values else 1.0
        spec = PotentialSpec(_ALIAS_EXPONENTS[kind], coupling, kind)

    return validate(spec)
