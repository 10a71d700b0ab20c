"""
Pytest configuration and shared fixtures for urbounds tests.

This module provides:
- Solver configurations (default and a light one for property sweeps)
- Common potentials
- Reference constants used across test modules
- Skip markers for slow numerical checks
"""

from __future__ import annotations

import os
import json
import math
from pathlib import Path
from typing import Any, Dict, Generator

import pytest

from urbounds.onebody import SolverConfig
from urbounds.potentials import PotentialSpec


# Ground energy of |p| + r as published, with its acceptance window
E_REFERENCE = 2.2322
E_WINDOW = 5e-4

# 4 / (sqrt(pi) e), the fixed upper/lower ratio for the linear potential
RATIO_REFERENCE = 1.011

GOLDEN_PATH = Path(__file__).parent / "golden_values.json"


@pytest.fixture(autouse=True)
def set_thread_cap(monkeypatch: pytest.MonkeyPatch) -> Generator[None, None, None]:
    """Keep internal parallelism small and predictable."""
    monkeypatch.setenv("URB_THREADS", "2")
    yield


@pytest.fixture
def default_config() -> SolverConfig:
    return SolverConfig()


@pytest.fixture
def light_config() -> SolverConfig:
    """Small bases for sweeps over many problems."""
    return SolverConfig(basis_size=12, max_basis_size=24, quadrature_order=96)


@pytest.fixture
def linear() -> PotentialSpec:
    return PotentialSpec.linear(1.0)


@pytest.fixture
def harmonic() -> PotentialSpec:
    return PotentialSpec.harmonic(1.0)


@pytest.fixture
def gaussian_single_function_energy() -> float:
    """min over scale of a single Gaussian for |p| + r: 4 / sqrt(pi)."""
    return 4.0 / math.sqrt(math.pi)


@pytest.fixture(scope="session")
def golden() -> Dict[str, Any]:
    """Reference values with their inputs and tolerances."""
    return json.loads(GOLDEN_PATH.read_text(encoding="utf-8"))


# Skip markers for different test categories
slow_test = pytest.mark.skipif(
    os.environ.get("URB_SKIP_SLOW_TESTS", "0") == "1",
    reason="Slow tests disabled"
)


# Register custom markers
def pytest_configure(config: pytest.Config) -> None:
    """Register custom pytest markers."""
    config.addinivalue_line(
        "markers", "slow: marks tests as slow-running"
    )
