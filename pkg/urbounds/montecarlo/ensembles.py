"""
Exchange-symmetric momentum ensembles with zero total momentum.

Particles are drawn i.i.d. from a family, the mean momentum is subtracted
and the last particle is set to minus the sum of the others, so every
configuration sums to zero to rounding and N = 2 gives p2 = -p1 exactly.

Random streams are derived per chunk from ``SeedSequence([seed, chunk])``,
so output depends only on (family, N, count, seed, chunk size).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional, Tuple

import numpy as np
from numpy.random import PCG64, Generator, SeedSequence

from ..errors import DomainError

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

ZERO_SUM_TOL = 1e-12
DEFAULT_CHUNK_SIZE = 50_000


class FamilyKind(Enum):
    GAUSSIAN = "gaussian"
    MIXTURE = "mixture"
    BALL = "ball"


@dataclass(frozen=True)
class EnsembleFamily:
    """
    Single-particle momentum law.

    Attributes:
        kind: Family name
        sigma: Per-component deviation of the Gaussian family
        components: (weight, sigma) pairs of the Gaussian mixture; one
            component is drawn per configuration
        radius: Radius of the uniform ball
    """
    kind: FamilyKind
    sigma: float = 1.0
    components: Tuple[Tuple[float, float], ...] = ()
    radius: float = 1.0

    @classmethod
    def gaussian(cls, sigma: float = 1.0) -> "EnsembleFamily":
        return cls(FamilyKind.GAUSSIAN, sigma=sigma).validate()

    @classmethod
    def mixture(
        cls,
        components: Tuple[Tuple[float, float], ...] = ((0.5, 0.5), (0.5, 2.0))
    ) -> "EnsembleFamily":
        return cls(FamilyKind.MIXTURE, components=tuple((float(w), float(s)) for w, s in components)).validate()

    @classmethod
    def ball(cls, radius: float = 1.0) -> "EnsembleFamily":
        return cls(FamilyKind.BALL, radius=radius).validate()

    @classmethod
    def from_name(cls, name: str) -> "EnsembleFamily":
        """Family with default parameters, by CLI name."""
        try:
            kind = FamilyKind(name.strip().lower())
        except ValueError:
            raise DomainError(f"unknown ensemble family {name!r}") from None
        return {
            FamilyKind.GAUSSIAN: cls.gaussian,
            FamilyKind.MIXTURE: cls.mixture,
            FamilyKind.BALL: cls.ball,
        }[kind]()

    @property
    def is_gaussian(self) -> bool:
        """Isotropic Gaussian or mixture of them."""
        return self.kind in (FamilyKind.GAUSSIAN, FamilyKind.MIXTURE)

    @property
    def descriptor(self) -> str:
        if self.kind is FamilyKind.GAUSSIAN:
            return f"gaussian(sigma={self.sigma:g})"
        if self.kind is FamilyKind.MIXTURE:
            parts = ", ".join(f"{w:g}:{s:g}" for w, s in self.components)
            return f"mixture({parts})"
        return f"ball(R={self.radius:g})"

    def validate(self) -> "EnsembleFamily":
        if self.kind is FamilyKind.GAUSSIAN and not self.sigma > 0:
            raise DomainError(f"sigma must be positive, got {self.sigma}", constraint="sigma > 0")
        if self.kind is FamilyKind.MIXTURE:
            if not self.components:
                raise DomainError("mixture needs at least one component")
            for weight, sigma in self.components:
                if not (weight > 0 and sigma > 0):
                    raise DomainError(
                        f"mixture component ({weight}, {sigma}) must have positive weight and sigma"
                    )
        if self.kind is FamilyKind.BALL and not self.radius > 0:
            raise DomainError(f"radius must be positive, got {self.radius}", constraint="R > 0")
        return self

    def draw(self, rng: Generator, count: int, n_particles: int) -> np.ndarray:
        """I.i.d. momenta of shape (count, N, 3), before projection."""
        shape = (count, n_particles, 3)
        if self.kind is FamilyKind.GAUSSIAN:
            return self.sigma * rng.standard_normal(shape)
        if self.kind is FamilyKind.MIXTURE:
            weights = np.array([w for w, _ in self.components], dtype=float)
            sigmas = np.array([s for _, s in self.components], dtype=float)
            picks = rng.choice(len(sigmas), size=count, p=weights / weights.sum())
            return sigmas[picks][:, None, None] * rng.standard_normal(shape)
        directions = rng.standard_normal(shape)
        directions /= np.sqrt(np.sum(directions * directions, axis=-1, keepdims=True))
        radii = self.radius * np.cbrt(rng.random((count, n_particles)))
        return radii[..., None] * directions


def project_zero_sum(momenta: np.ndarray) -> np.ndarray:
    """Subtract the mean momentum and close the sum with the last particle."""
    projected = momenta - momenta.mean(axis=1, keepdims=True)
    projected[:, -1] = -projected[:, :-1].sum(axis=1)
    return projected


@dataclass(frozen=True)
class MomentumConfig:
    """N momentum vectors with vanishing sum; ``momenta`` has shape (N, 3)."""
    momenta: np.ndarray

    def __post_init__(self) -> None:
        momenta = np.asarray(self.momenta, dtype=float)
        if momenta.ndim != 2 or momenta.shape[1] != 3 or momenta.shape[0] < 2:
            raise DomainError(f"expected an (N, 3) momentum array with N >= 2, got {momenta.shape}")
        total = np.sqrt(np.sum(momenta.sum(axis=0) ** 2))
        largest = np.sqrt(np.sum(momenta * momenta, axis=1)).max()
        if total > ZERO_SUM_TOL * largest:
            raise DomainError(
                f"total momentum {total:.3g} is not zero", constraint="sum of momenta = 0"
            )
        object.__setattr__(self, "momenta", momenta)

    @property
    def n_particles(self) -> int:
        return int(self.momenta.shape[0])


def chunk_generator(seed: int, chunk_index: int) -> Generator:
    """Independent stream for one chunk."""
    return Generator(PCG64(SeedSequence([seed, chunk_index])))


def _check_request(n_particles: int, count: int, seed: int) -> None:
    if n_particles < 2:
        raise DomainError(f"N must be >= 2, got {n_particles}", constraint="N >= 2")
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}", constraint="count >= 1")
    if seed < 0:
        raise DomainError(f"seed must be non-negative, got {seed}", constraint="seed >= 0")


def sample_chunk(
    family: EnsembleFamily,
    n_particles: int,
    seed: int,
    chunk_index: int,
    size: int
) -> np.ndarray:
    """Projected momenta of one chunk, shape (size, N, 3)."""
    rng = chunk_generator(seed, chunk_index)
    return project_zero_sum(family.draw(rng, size, n_particles))


def chunk_sizes(count: int, chunk_size: int) -> Iterator[Tuple[int, int]]:
    """(chunk index, size) pairs covering ``count`` samples."""
    full, rest = divmod(count, chunk_size)
    for index in range(full):
        yield index, chunk_size
    if rest:
        yield full, rest


def sample(
    family: EnsembleFamily,
    n_particles: int,
    seed: int,
    count: int,
    chunk_size: Optional[int] = None
) -> Iterator[MomentumConfig]:
    """
    Stream ``count`` zero-sum configurations.

    Args:
        family: Single-particle law
        n_particles: N >= 2
        seed: Non-negative integer seed
        count: Number of configurations
        chunk_size: Samples per random stream (default 50 000)

    Raises:
        DomainError: N < 2, count < 1 or negative seed
    """
    _check_request(n_particles, count, seed)
    family.validate()
    return _stream(family, n_particles, seed, count, chunk_size or DEFAULT_CHUNK_SIZE)


def _stream(
    family: EnsembleFamily,
    n_particles: int,
    seed: int,
    count: int,
    chunk_size: int
) -> Iterator[MomentumConfig]:
    for index, size in chunk_sizes(count, chunk_size):
        for momenta in sample_chunk(family, n_particles, seed, index, size):
            yield MomentumConfig(momenta)
