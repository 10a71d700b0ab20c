"""
Golden-section minimization of a scalar function of a positive scale.

The search runs in log(scale) and assumes the objective is unimodal on the
bracket. When the optimum lands on an edge the bracket is widened by a factor
of two on that side and the search repeated; expansions stop as soon as one
no longer improves the objective beyond the requested relative tolerance.
"""

from __future__ import annotations

import math
import logging
from dataclasses import dataclass
from typing import Callable, Tuple

from ..errors import BracketExhaustedError

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

# fraction of the log-width treated as "on the edge"
EDGE_FRACTION = 1e-3


@dataclass(frozen=True)
class LineSearchResult:
    """Minimizer of a scale search."""
    scale: float
    value: float
    bracket: Tuple[float, float]
    evaluations: int
    expansions: int


def golden_section(
    function: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float
) -> Tuple[float, float, int]:
    """
    Golden-section search for the minimum of ``function`` on [lo, hi].

    Returns:
        (argmin, min value, number of evaluations)
    """
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = function(c), function(d)
    evaluations = 2

    while (b - a) > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = function(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = function(d)
        evaluations += 1

    if fc < fd:
        return c, fc, evaluations
    return d, fd, evaluations


def minimize_scale(
    objective: Callable[[float], float],
    bracket: Tuple[float, float],
    log_tol: float = 1e-5,
    rel_tol: float = 1e-7,
    max_expansions: int = 8
) -> LineSearchResult:
    """
    Minimize ``objective(scale)`` over positive scales.

    Args:
        objective: Function of the scale to minimize
        bracket: Initial (lo, hi) scale interval
        log_tol: Width in log(scale) at which the search stops
        rel_tol: Relative improvement below which an expansion is pointless
        max_expansions: Number of factor-two bracket widenings allowed

    Raises:
        BracketExhaustedError: Optimum still on an edge after max_expansions
    """
    lo, hi = math.log(bracket[0]), math.log(bracket[1])
    total_evals = 0
    best: Tuple[float, float] = (math.nan, math.inf)

    def in_log(x: float) -> float:
        return objective(math.exp(x))

    for expansion in range(max_expansions + 1):
        x, fx, evaluations = golden_section(in_log, lo, hi, log_tol)
        total_evals += evaluations

        improved = fx < best[1] - rel_tol * abs(fx)
        if expansion > 0 and not improved:
            # widening did not help: the edge value is the flat-bottom optimum
            x, fx = best if best[1] <= fx else (x, fx)
            return LineSearchResult(math.exp(x), fx, (math.exp(lo), math.exp(hi)), total_evals, expansion)
        if fx < best[1]:
            best = (x, fx)

        margin = EDGE_FRACTION * (hi - lo)
        if x - lo < margin:
            lo -= math.log(2.0)
        elif hi - x < margin:
            hi += math.log(2.0)
        else:
            return LineSearchResult(math.exp(x), fx, (math.exp(lo), math.exp(hi)), total_evals, expansion)

        logger.info("bracket_expand", extra={
            "expansion": expansion + 1,
            "lo": math.exp(lo),
            "hi": math.exp(hi),
        })

    raise BracketExhaustedError(
        f"scale optimum remained on the bracket edge after {max_expansions} expansions",
        diagnostics={
            "bracket": (math.exp(lo), math.exp(hi)),
            "best_scale": math.exp(best[0]),
            "best_value": best[1],
            "evaluations": total_evals,
        },
    )
