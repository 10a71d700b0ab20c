"""
Tests for the oscillator basis, the radial quadrature and the scale search.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from urbounds.errors import BracketExhaustedError
from urbounds.onebody import basis
from urbounds.onebody.line_search import golden_section, minimize_scale


class TestOscillatorFunctions:
    """Normalization and closed-form matrix elements."""

    def test_orthonormal(self):
        """The zero-power moment matrix is the identity."""
        overlap = basis.power_moments_quadrature(20, 0.0, 200)
        np.testing.assert_allclose(overlap, np.eye(20), atol=1e-11)

    def test_closed_form_identity(self):
        """Closed-form moments at q = 0 give the identity."""
        np.testing.assert_allclose(basis.power_moments_closed(12, 0.0), np.eye(12), atol=1e-13)

    def test_harmonic_matrix_is_tridiagonal(self):
        """<i| y^2 |j>: 2n + 3/2 on the diagonal, -sqrt((n+1)(n+3/2)) beside it."""
        n = 10
        moments = basis.power_moments_closed(n, 2.0)
        k = np.arange(n)
        expected = np.diag(2.0 * k + 1.5)
        off = -np.sqrt((k[:-1] + 1.0) * (k[:-1] + 1.5))
        expected += np.diag(off, 1) + np.diag(off, -1)
        np.testing.assert_allclose(moments, expected, atol=1e-12)

    @pytest.mark.parametrize("q, expected", [
        (1.0, 2.0 / math.sqrt(math.pi)),
        (2.0, 1.5),
        (-1.0, 2.0 / math.sqrt(math.pi)),
    ])
    def test_ground_moments(self, q, expected):
        """<0| y^q |0> for the closed-form exponents."""
        assert basis.power_moments_closed(4, q)[0, 0] == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("q", [-1.0, 1.0, 2.0])
    def test_closed_form_matches_quadrature(self, q):
        """Both routes to the moment matrix agree."""
        closed = basis.power_moments_closed(20, q)
        quadrature = basis.power_moments_quadrature(20, q, 200)
        np.testing.assert_allclose(closed, quadrature, atol=1e-10)

    def test_moments_symmetric(self):
        """Quadrature moments for a general exponent are symmetric."""
        moments = basis.power_moments_quadrature(16, 0.37, 128)
        np.testing.assert_array_equal(moments, moments.T)

    def test_phases(self):
        """(-1)^(i+j) sign pattern."""
        np.testing.assert_array_equal(
            basis.momentum_phases(3),
            np.array([[1, -1, 1], [-1, 1, -1], [1, -1, 1]], dtype=float),
        )

    def test_radial_rule_integrates_polynomial(self):
        """Gauss-Jacobi rule integrates y^2 * y^3 on [0, 2] exactly."""
        nodes, weights = basis.radial_rule(10, 2.0, 2.0)
        assert np.sum(weights * nodes ** 3) == pytest.approx(2.0 ** 6 / 6.0, rel=1e-13)


class TestGoldenSection:
    """Tests for the golden-section search."""

    def test_quadratic(self):
        """Minimum of (x - 1)^2 on [-3, 4]."""
        x, fx, evaluations = golden_section(lambda x: (x - 1.0) ** 2, -3.0, 4.0, 1e-8)
        assert x == pytest.approx(1.0, abs=1e-7)
        assert fx == pytest.approx(0.0, abs=1e-12)
        assert evaluations > 2


class TestMinimizeScale:
    """Tests for the log-scale search with bracket expansion."""

    def test_interior_optimum(self):
        """s + 4/s is minimal at s = 2 with value 4."""
        result = minimize_scale(lambda s: s + 4.0 / s, (0.1, 10.0))
        assert result.scale == pytest.approx(2.0, rel=1e-4)
        assert result.value == pytest.approx(4.0, rel=1e-9)
        assert result.expansions == 0

    def test_expands_bracket(self):
        """s + 400/s has its minimum at 20, outside the initial bracket."""
        result = minimize_scale(lambda s: s + 400.0 / s, (0.1, 10.0))
        assert result.scale == pytest.approx(20.0, rel=1e-3)
        assert result.value == pytest.approx(40.0, rel=1e-8)
        assert result.expansions >= 1
        assert result.bracket[1] >= 20.0

    def test_expands_downwards(self):
        """An optimum below the bracket is reached too."""
        result = minimize_scale(lambda s: s + 0.0025 / s, (0.1, 10.0))
        assert result.scale == pytest.approx(0.05, rel=1e-3)

    def test_exhausted(self):
        """A monotone objective runs out of expansions."""
        with pytest.raises(BracketExhaustedError) as exc_info:
            minimize_scale(lambda s: 1.0 / s, (0.1, 10.0), max_expansions=2)
        assert exc_info.value.diagnostics["best_scale"] > 10.0

    def test_flat_tail_returns(self):
        """A plateau stops the expansion once it no longer improves."""
        result = minimize_scale(lambda s: 1.0 + math.exp(-s), (0.1, 10.0))
        assert result.value == pytest.approx(1.0, abs=1e-4)

    def test_expansion_logged(self, caplog):
        """Each widening is logged."""
        with caplog.at_level("INFO", logger="urbounds.onebody.line_search"):
            minimize_scale(lambda s: s + 400.0 / s, (0.1, 10.0))
        assert any(r.message == "bracket_expand" for r in caplog.records)
