"""
Monte Carlo estimators over zero-sum momentum ensembles.

This module provides:
- SamplingConfig: chunking, batch count and parallelism
- Estimate: value with a batch-means standard error
- per_sample_quantities: |p1|, |p1 - p2|, projections and delta(m, N)
- delta_expectation: <delta(m, N)>
- mean_angle_stats: mean magnitudes, mean angles and the MCReport
"""

from __future__ import annotations

import math
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from ..errors import ConfigurationError
from ..util import pool
from .ensembles import (
    DEFAULT_CHUNK_SIZE,
    EnsembleFamily,
    _check_request,
    chunk_sizes,
    sample_chunk,
)

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

MIN_BATCHES = 30

# absolute tolerance floor for exactly degenerate estimates (N = 2)
SE_FLOOR = 1e-12


@dataclass(frozen=True)
class SamplingConfig:
    """Configuration for Monte Carlo estimation"""
    chunk_size: int = DEFAULT_CHUNK_SIZE  # samples per random stream
    n_batches: int = 50
    workers: Optional[int] = None  # default: URB_THREADS

    def validate(self) -> "SamplingConfig":
        if self.n_batches < MIN_BATCHES:
            raise ConfigurationError(f"n_batches must be >= {MIN_BATCHES}, got {self.n_batches}")
        if self.chunk_size < 1:
            raise ConfigurationError(f"chunk_size must be >= 1, got {self.chunk_size}")
        return self


@dataclass(frozen=True)
class Estimate:
    """Sample estimate with its standard error."""
    value: float
    stderr: float

    def within(self, target: float, n_se: float = 3.0, floor: float = SE_FLOOR) -> bool:
        """|value - target| <= n_se * stderr, with an absolute floor."""
        return abs(self.value - target) <= max(n_se * self.stderr, floor)

    def shifted(self, offset: float) -> "Estimate":
        return Estimate(self.value - offset, self.stderr)


def _norm(vectors: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(vectors * vectors, axis=-1))


def delta_samples(momenta: np.ndarray, mass: float = 0.0) -> np.ndarray:
    """
    Per-sample ``delta(m, N)`` for momenta of shape (count, N, 3).

    ``sum_i sqrt(|p_i|^2 + m^2)
      - 2/(N-1) sum_{i<j} sqrt((N-1)/(2N) |p_i - p_j|^2 + m^2)``
    """
    n = momenta.shape[1]
    m2 = mass * mass
    single = np.zeros(momenta.shape[0])
    for i in range(n):
        p = momenta[:, i]
        single += np.sqrt(np.sum(p * p, axis=-1) + m2)

    pair_weight = (n - 1) / (2.0 * n)
    pairs = np.zeros(momenta.shape[0])
    for i in range(n - 1):
        diff = momenta[:, i, None, :] - momenta[:, i + 1:, :]
        pairs += np.sqrt(pair_weight * np.sum(diff * diff, axis=-1) + m2).sum(axis=1)
    return single - (2.0 / (n - 1)) * pairs


def per_sample_quantities(momenta: np.ndarray, mass: float = 0.0) -> Dict[str, np.ndarray]:
    """
    Quantities whose means define the mean-angle statistics.

    Returns:
        Dict with keys ``k`` (|p1|), ``d`` (|p1 - p2|), ``proj`` (p1 . p2 / |p2|,
        i.e. |p1| cos phi_12), ``chord`` ((p1 - p2) . p1 / |p1|), ``delta``
        and ``total`` (sum_i |p_i|)
    """
    p1, p2 = momenta[:, 0], momenta[:, 1]
    diff = p1 - p2
    k = _norm(p1)
    return {
        "k": k,
        "d": _norm(diff),
        "proj": np.sum(p1 * p2, axis=-1) / _norm(p2),
        "chord": np.sum(diff * p1, axis=-1) / k,
        "delta": delta_samples(momenta, mass),
        "total": _norm(momenta).sum(axis=1),
    }


def batch_means(values: np.ndarray, n_batches: int) -> np.ndarray:
    """Means of ``n_batches`` equal contiguous batches (the tail remainder is dropped)."""
    size = values.size // n_batches
    if size < 1:
        raise ConfigurationError(f"{values.size} samples cannot fill {n_batches} batches")
    return values[: size * n_batches].reshape(n_batches, size).mean(axis=1)


def mean_estimate(values: np.ndarray, n_batches: int) -> Estimate:
    """Batch-means estimate of E[values]."""
    means = batch_means(values, n_batches)
    return Estimate(float(means.mean()), float(means.std(ddof=1) / math.sqrt(n_batches)))


def ratio_estimate(numerator: np.ndarray, denominator: np.ndarray, n_batches: int) -> Estimate:
    """E[numerator] / E[denominator] with the spread of per-batch ratios as error."""
    top = batch_means(numerator, n_batches)
    bottom = batch_means(denominator, n_batches)
    ratios = top / bottom
    return Estimate(float(top.mean() / bottom.mean()), float(ratios.std(ddof=1) / math.sqrt(n_batches)))


def _chunk_quantities(
    family: EnsembleFamily,
    n_particles: int,
    seed: int,
    index: int,
    size: int,
    mass: float
) -> Dict[str, np.ndarray]:
    quantities = per_sample_quantities(sample_chunk(family, n_particles, seed, index, size), mass)
    logger.debug("mc_chunk", extra={"chunk": index, "size": size})
    return quantities


def collect_quantities(
    family: EnsembleFamily,
    n_particles: int,
    count: int,
    seed: int,
    mass: float = 0.0,
    sampling: Optional[SamplingConfig] = None
) -> Dict[str, np.ndarray]:
    """
    Per-sample quantities for ``count`` configurations.

    Chunks run in parallel and are concatenated in chunk order, so the result
    does not depend on scheduling.
    """
    _check_request(n_particles, count, seed)
    family.validate()
    sampling = (sampling or SamplingConfig()).validate()
    if count < sampling.n_batches:
        raise ConfigurationError(f"count {count} is smaller than n_batches {sampling.n_batches}")

    params = [
        (family, n_particles, seed, index, size, mass)
        for index, size in chunk_sizes(count, sampling.chunk_size)
    ]
    chunks = pool(_chunk_quantities, params, max_workers=sampling.workers)
    return {key: np.concatenate([chunk[key] for chunk in chunks]) for key in chunks[0]}


def delta_expectation(
    family: EnsembleFamily,
    n_particles: int,
    mass: float,
    count: int,
    seed: int,
    sampling: Optional[SamplingConfig] = None
) -> Estimate:
    """
    Batch-means estimate of ``<delta(m, N)>``.

    Example:
        >>> delta_expectation(EnsembleFamily.gaussian(), 2, 0.0, 1000, 1).value
        0.0
    """
    sampling = sampling or SamplingConfig()
    quantities = collect_quantities(family, n_particles, count, seed, mass, sampling)
    return mean_estimate(quantities["delta"], sampling.n_batches)


@dataclass
class MCReport:
    """
    Mean-angle statistics of one ensemble.

    Attributes:
        k: <|p1|>
        d: <|p1 - p2|>
        cos_phi: <|p1| cos phi_12> / k
        k_over_d: k / d
        residual: k / d - sqrt((N-1)/(2N))
        delta: <delta(m, N)>
        cos_theta: <(p1 - p2) . p1 / |p1|> / d
        isosceles_cos_theta: sin(phi / 2), the value cos_theta takes when
            the mean triangle is isosceles
        total: <sum_i |p_i|>
    """
    family: EnsembleFamily
    n_particles: int
    mass: float
    count: int
    seed: int
    batches: int
    k: Estimate
    d: Estimate
    cos_phi: Estimate
    k_over_d: Estimate
    residual: Estimate
    delta: Estimate
    cos_theta: Estimate
    isosceles_cos_theta: float
    total: Estimate
    notes: List[str] = field(default_factory=list)

    @property
    def target_cos_phi(self) -> float:
        return -1.0 / (self.n_particles - 1)

    @property
    def target_k_over_d(self) -> float:
        return math.sqrt((self.n_particles - 1) / (2.0 * self.n_particles))

    def checks(self, n_se: float = 3.0) -> Dict[str, bool]:
        """
        Asserted relations, by name.

        cos_phi holds for every zero-sum exchange-symmetric family. delta and
        k/d are asserted only for massless Gaussian and mixture ensembles.
        """
        results = {"cos_phi": self.cos_phi.within(self.target_cos_phi, n_se)}
        if self.family.is_gaussian:
            results["k_over_d"] = self.k_over_d.within(self.target_k_over_d, n_se)
            if self.mass == 0:
                results["delta"] = self.delta.within(0.0, n_se)
        return results

    @property
    def passed(self) -> bool:
        return all(self.checks().values())

    def to_dict(self) -> Dict[str, Any]:
        row: Dict[str, Any] = {
            "family": self.family.kind.value,
            "N": self.n_particles,
            "m": self.mass,
            "samples": self.count,
            "seed": self.seed,
            "batches": self.batches,
        }
        for name in ("k", "d", "cos_phi", "k_over_d", "residual", "delta", "cos_theta", "total"):
            estimate: Estimate = getattr(self, name)
            row[name] = estimate.value
            row[f"{name}_se"] = estimate.stderr
        row["cos_phi_target"] = self.target_cos_phi
        row["k_over_d_target"] = self.target_k_over_d
        row["isosceles_cos_theta"] = self.isosceles_cos_theta
        row["passed"] = self.passed
        return row


def mean_angle_stats(
    family: EnsembleFamily,
    n_particles: int,
    count: int,
    seed: int,
    mass: float = 0.0,
    sampling: Optional[SamplingConfig] = None
) -> MCReport:
    """
    Estimate k, d, the mean angles and <delta(m, N)> in one sampling pass.

    Args:
        family: Single-particle law
        n_particles: N >= 2
        count: Configurations to draw
        seed: Non-negative integer seed
        mass: Boson mass entering delta(m, N)
        sampling: Chunking and batching (default SamplingConfig())
    """
    sampling = sampling or SamplingConfig()
    q = collect_quantities(family, n_particles, count, seed, mass, sampling)
    batches = sampling.n_batches

    k = mean_estimate(q["k"], batches)
    d = mean_estimate(q["d"], batches)
    cos_phi = ratio_estimate(q["proj"], q["k"], batches)
    k_over_d = ratio_estimate(q["k"], q["d"], batches)
    cos_theta = ratio_estimate(q["chord"], q["d"], batches)
    phi = math.acos(min(1.0, max(-1.0, cos_phi.value)))

    report = MCReport(
        family=family,
        n_particles=n_particles,
        mass=mass,
        count=count,
        seed=seed,
        batches=batches,
        k=k,
        d=d,
        cos_phi=cos_phi,
        k_over_d=k_over_d,
        residual=k_over_d.shifted(math.sqrt((n_particles - 1) / (2.0 * n_particles))),
        delta=mean_estimate(q["delta"], batches),
        cos_theta=cos_theta,
        isosceles_cos_theta=math.sin(0.5 * phi),
        total=mean_estimate(q["total"], batches),
    )
    if mass > 0:
        report.notes.append("delta(m > 0) is exploratory and not asserted")
    logger.info("mc_complete", extra={
        "family": family.kind.value, "N": n_particles, "count": count,
        "seed": seed, "passed": report.passed,
    })
    return report
