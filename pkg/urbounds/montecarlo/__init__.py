"""
Monte Carlo checks of the massless lower-bound identity on zero-sum
momentum ensembles.
"""

from .ensembles import EnsembleFamily, FamilyKind, MomentumConfig, sample
from .estimators import (
    Estimate,
    MCReport,
    SamplingConfig,
    delta_expectation,
    mean_angle_stats,
)

__all__ = [
    "EnsembleFamily",
    "FamilyKind",
    "MomentumConfig",
    "sample",
    "Estimate",
    "MCReport",
    "SamplingConfig",
    "delta_expectation",
    "mean_angle_stats",
]
