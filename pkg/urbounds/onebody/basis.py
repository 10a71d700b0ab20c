"""
Radial l = 0 harmonic-oscillator basis.

Functions are written in the dimensionless variable y = r / scale (position
space) or y = p * scale (momentum space):

    psi_n(y) = c_n exp(-y^2 / 2) L_n^{1/2}(y^2),   c_n^2 = n! / Gamma(n + 3/2)

normalized so that ``2 * integral_0^inf y^2 psi_i psi_j dy = delta_ij``. The
momentum-space image of the position function n is ``(-1)^n psi_n`` with the
inverse scale, so the same values serve both representations.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Tuple

import numpy as np
from scipy.special import gammaln, roots_jacobi

ALPHA = 0.5

# y beyond the outermost classical turning point sqrt(4n + 3) at which the
# squared basis functions have decayed below double precision
SUPPORT_MARGIN = 8.0


def support_radius(n: int) -> float:
    """Truncation radius (in y) of the radial integrals for an n-function basis."""
    return math.sqrt(4.0 * n + 3.0) + SUPPORT_MARGIN


def oscillator_functions(n: int, y: np.ndarray) -> np.ndarray:
    """
    Evaluate psi_0 ... psi_{n-1} at the points ``y``.

    Uses the normalized three-term Laguerre recurrence, so no factorials or
    large polynomial values are formed.

    Returns:
        Array of shape (len(y), n)
    """
    y = np.asarray(y, dtype=float)
    x = y * y
    out = np.empty((y.size, n))
    out[:, 0] = math.sqrt(1.0 / math.gamma(ALPHA + 1.0)) * np.exp(-0.5 * x)
    if n > 1:
        out[:, 1] = (1.0 + ALPHA - x) / math.sqrt(1.0 + ALPHA) * out[:, 0]
    for k in range(1, n - 1):
        a = (2 * k + 1 + ALPHA - x) / math.sqrt((k + 1) * (k + 1 + ALPHA))
        b = math.sqrt(k * (k + ALPHA) / ((k + 1) * (k + 1 + ALPHA)))
        out[:, k + 1] = a * out[:, k] - b * out[:, k - 1]
    return out


def momentum_phases(n: int) -> np.ndarray:
    """Sign matrix (-1)^(i+j) relating momentum- and position-space elements."""
    signs = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    return np.outer(signs, signs)


@lru_cache(maxsize=64)
def _jacobi_rule(order: int, power: float) -> Tuple[np.ndarray, np.ndarray]:
    t, w = roots_jacobi(order, 0.0, power)
    t.setflags(write=False)
    w.setflags(write=False)
    return t, w


def radial_rule(order: int, power: float, y_max: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Gauss-Jacobi rule for ``integral_0^y_max y^power f(y) dy``.

    The algebraic factor ``y^power`` is carried by the weight, so f only has
    to be smooth for exponential convergence.

    Returns:
        (nodes, weights) such that the integral is ``sum(weights * f(nodes))``
    """
    t, w = _jacobi_rule(int(order), float(power))
    half = 0.5 * y_max
    nodes = half * (1.0 + t)
    weights = w * half ** (power + 1.0)
    return nodes, weights


def weighted_gram(values: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """
    ``2 * sum_k w_k phi_i(y_k) phi_j(y_k)``, symmetrized.

    einsum without path optimization keeps a fixed summation order, so the
    result does not depend on BLAS threading.
    """
    gram = 2.0 * np.einsum("ki,k,kj->ij", values, weights, values)
    return 0.5 * (gram + gram.T)


def power_moments_closed(n: int, q: float) -> np.ndarray:
    """
    Exact matrix ``<i| y^q |j>`` in the oscillator basis (q > -3).

    Expands L_n^{1/2} in L_k^{1/2 + q/2}, whose orthogonality under the
    weight ``x^{1/2+q/2} e^{-x}`` reduces the integral to a finite sum with
    well-conditioned terms:

        c_i c_j sum_k t_{i-k} t_{j-k} Gamma(k + 3/2 + q/2) / k!,
        t_j = (-q/2)_j / j!
    """
    s = 0.5 * q
    t = np.empty(n)
    t[0] = 1.0
    for j in range(1, n):
        t[j] = t[j - 1] * (j - 1 - s) / j

    k = np.arange(n)
    # Toeplitz lower-triangular connection matrix T[i, k] = t[i - k]
    diff = k[:, None] - k[None, :]
    connection = np.where(diff >= 0, t[np.clip(diff, 0, None)], 0.0)

    log_c = 0.5 * (gammaln(k + 1.0) - gammaln(k + ALPHA + 1.0))
    log_g = gammaln(k + ALPHA + s + 1.0) - gammaln(k + 1.0)

    # fold c_i into rows and sqrt(g_k) into columns to keep magnitudes near one
    left = np.exp(log_c)[:, None] * connection * np.exp(0.5 * log_g)[None, :]
    moments = left @ left.T
    return 0.5 * (moments + moments.T)


def power_moments_quadrature(n: int, q: float, order: int) -> np.ndarray:
    """``<i| y^q |j>`` by Gauss-Jacobi quadrature with weight y^(2+q)."""
    nodes, weights = radial_rule(order, 2.0 + q, support_radius(n))
    return weighted_gram(oscillator_functions(n, nodes), weights)
