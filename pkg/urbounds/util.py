"""
Utility functions for the urbounds library.

This module provides:
- Thread pool utilities for parallel, order-preserving evaluation
- The URB_THREADS parallelism cap
- Parsers for particle-number ranges and lists used by the CLI
- Significant-digit rounding shared by the CSV and JSON writers
"""

from __future__ import annotations

import os
import math
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import (
    Any,
    Callable,
    List,
    Optional,
    Sequence,
    Tuple,
    TypeVar,
)

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

T = TypeVar('T')

THREADS_ENV = "URB_THREADS"


def thread_count(default: Optional[int] = None) -> int:
    """
    Number of worker threads internal parallelism may use.

    Reads the ``URB_THREADS`` environment variable; falls back to
    ``default`` or the machine's CPU count.

    Returns:
        A positive integer
    """
    env_value = os.environ.get(THREADS_ENV)
    if env_value:
        try:
            value = int(env_value)
            if value >= 1:
                return value
        except ValueError:
            pass
        logger.warning(
            "invalid_threads_env",
            extra={"env": THREADS_ENV, "value": env_value},
        )
    if default is not None:
        return max(1, int(default))
    return max(1, os.cpu_count() or 1)


def pool(
    function: Callable[..., T],
    params: Sequence[Tuple[Any, ...]],
    use_threads: bool = True,
    max_workers: Optional[int] = None
) -> List[T]:
    """
    Execute a function over multiple parameter sets, optionally in parallel.

    Results are returned in the order of ``params`` regardless of
    completion order. Exceptions propagate to the caller; callers that need
    per-item failure capture wrap ``function`` themselves.

    Args:
        function: Function to execute
        params: List of parameter tuples to pass to the function
        use_threads: If True, use ThreadPoolExecutor; otherwise sequential
        max_workers: Maximum number of concurrent threads (default: URB_THREADS)

    Returns:
        List of results, one per parameter tuple

    Example:
        >>> def add(a, b): return a + b
        >>> pool(add, [(1, 2), (3, 4), (5, 6)])
        [3, 7, 11]
    """
    workers = max_workers or thread_count()

    if use_threads and workers > 1 and len(params) > 1:
        with ThreadPoolExecutor(max_workers=min(workers, len(params))) as executor:
            futures = [executor.submit(function, *param) for param in params]
            return [future.result() for future in futures]

    return [function(*param) for param in params]


def parse_n_range(text: str) -> List[int]:
    """
    Parse a particle-number range ``a..b`` (inclusive) or a single ``a``.

    Raises:
        ValueError: On malformed text, N < 2 or a > b

    Example:
        >>> parse_n_range("2..5")
        [2, 3, 4, 5]
    """
    text = text.strip()
    if ".." in text:
        lo_text, hi_text = text.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
    else:
        lo = hi = int(text)
    if lo < 2:
        raise ValueError(f"N must be at least 2, got {lo}")
    if lo > hi:
        raise ValueError(f"empty range {text!r}: {lo} > {hi}")
    return list(range(lo, hi + 1))


def parse_int_list(text: str) -> List[int]:
    """
    Parse a comma-separated list of particle numbers, e.g. ``2,3,5,10``.

    Ranges ``a..b`` are accepted as list items.
    """
    values: List[int] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        values.extend(parse_n_range(item))
    if not values:
        raise ValueError("no particle numbers given")
    return values


def parse_count(text: str) -> int:
    """Parse a sample count that may be written in float notation (``1e6``)."""
    value = float(text)
    if not math.isfinite(value) or value < 1 or value != int(value):
        raise ValueError(f"sample count must be a positive integer, got {text!r}")
    return int(value)


def significant(value: Optional[float], digits: int = 12) -> Optional[float]:
    """
    Round a float to ``digits`` significant digits.

    Non-finite values and None pass through unchanged.
    """
    if value is None:
        return None
    value = float(value)
    if not math.isfinite(value) or value == 0.0:
        return value
    return float(f"{value:.{digits}g}")
