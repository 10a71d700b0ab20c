"""
Tests for the one-body Rayleigh-Ritz solver.

Tests cover:
- Kinetic and potential matrix elements
- The ground energy of |p| + r and its nonrelativistic and Coulomb limits
- Variational monotonicity in the basis size
- The dilation law and its cache
- Input, configuration and critical-coupling errors
"""

from __future__ import annotations

import math
import logging

import numpy as np
import pytest

from tests.conftest import E_REFERENCE, E_WINDOW
from urbounds.errors import (
    ConfigurationError,
    CouplingAboveCriticalError,
    DomainError,
    UnsupportedExponentError,
)
from urbounds.onebody import (
    OneBodyProblem,
    SolverConfig,
    SystemParams,
    clear_energy_cache,
    ground_energy_at_scale,
    kinetic_matrix,
    potential_matrix,
    scaled_ground_energy,
    solve,
    unit_energy,
)
from urbounds.onebody.solver import _unit_results
from urbounds.potentials import PotentialSpec, parse_potential


class TestSystemParams:
    """Tests for the N-boson parameters."""

    def test_reduced_couplings(self):
        """lam = 2(N-1)/N and gamma = N(N-1)/2."""
        params = SystemParams(10)
        assert params.lam == pytest.approx(1.8)
        assert params.gamma == 45

    @pytest.mark.parametrize("n, mass", [(1, 0.0), (0, 0.0), (3, -1.0), (2.5, 0.0)])
    def test_rejects(self, n, mass):
        """N < 2, fractional N and negative mass are domain errors."""
        with pytest.raises(DomainError):
            SystemParams(n, mass)

    def test_from_system(self, linear):
        """Reduced one-body problem of N bosons."""
        problem = OneBodyProblem.from_system(SystemParams(4, 0.5), linear)
        assert (problem.a, problem.mu, problem.b) == (4.0, 0.5, 6.0)
        assert problem.lam == pytest.approx(1.5)


class TestMatrices:
    """Matrix elements at a fixed scale."""

    def test_hamiltonian_symmetric(self):
        """Kinetic plus potential matrix at the default order is symmetric."""
        problem = OneBodyProblem(2.0, 0.3, 1.5, PotentialSpec.power(0.7, 1.0))
        h = kinetic_matrix(problem, 0.8, 32, 200) + potential_matrix(problem.potential, 1.5, 0.8, 32, 200)
        assert np.max(np.abs(h - h.T)) < 1e-12

    def test_massless_kinetic_ground_element(self, linear):
        """<0| 2|p| |0> at scale s is 4 / (sqrt(pi) s)."""
        problem = OneBodyProblem(2.0, 0.0, 1.0, linear)
        for scale in (0.5, 1.0, 3.0):
            k = kinetic_matrix(problem, scale, 8, 200)
            assert k[0, 0] == pytest.approx(4.0 / (math.sqrt(math.pi) * scale), rel=1e-12)

    def test_heavy_kinetic_ground_element(self, linear):
        """For mu >> |p| the kinetic term reduces to a mu + a lam p^2 / (2 mu)."""
        a, lam, mu, scale = 3.0, 4.0 / 3.0, 1000.0, 1.0
        problem = OneBodyProblem(a, mu, 1.0, linear, lam)
        k = kinetic_matrix(problem, scale, 8, 200)
        expected = a * mu + a * lam * 1.5 / (2.0 * mu * scale ** 2)
        assert k[0, 0] == pytest.approx(expected, rel=1e-10)

    def test_kinetic_symmetric(self, linear):
        """Kinetic matrices are exactly symmetric."""
        problem = OneBodyProblem(1.0, 0.7, 1.0, linear)
        k = kinetic_matrix(problem, 1.3, 16, 200)
        np.testing.assert_array_equal(k, k.T)

    def test_potential_scaling(self, harmonic):
        """weight * c * scale^2 times the harmonic moment matrix."""
        v1 = potential_matrix(harmonic, 2.0, 1.0, 6, 200)
        v2 = potential_matrix(harmonic, 2.0, 3.0, 6, 200)
        np.testing.assert_allclose(v2, 9.0 * v1, rtol=1e-13)
        assert v1[0, 0] == pytest.approx(3.0)

    def test_coulomb_sign(self):
        """Coulomb matrices are negative definite on the diagonal."""
        v = potential_matrix(PotentialSpec.coulomb(0.5), 1.0, 1.0, 6, 200)
        assert np.all(np.diag(v) < 0)

    def test_low_quadrature_order(self, linear):
        """Fewer than 4n nodes is a configuration error."""
        problem = OneBodyProblem(1.0, 0.0, 1.0, linear)
        with pytest.raises(ConfigurationError):
            kinetic_matrix(problem, 1.0, 16, 32)

    def test_single_gaussian(self, linear, gaussian_single_function_energy):
        """One basis function at unit scale gives 4 / sqrt(pi) for |p| + r."""
        problem = OneBodyProblem(1.0, 0.0, 1.0, linear)
        energy = ground_energy_at_scale(problem, 1.0, n=1)
        assert energy == pytest.approx(gaussian_single_function_energy, rel=1e-12)


class TestSolve:
    """Tests for the scale-optimized, escalated solver."""

    def test_linear_constant(self, linear, gaussian_single_function_energy):
        """The ground energy e of |p| + r, converged by n = 64."""
        result = solve(OneBodyProblem(1.0, 0.0, 1.0, linear))
        assert abs(result.energy - E_REFERENCE) <= E_WINDOW
        assert result.converged
        assert result.basis_size <= 64
        assert result.convergence <= SolverConfig().rel_tol
        assert result.energy < gaussian_single_function_energy
        assert result.optimal_scale > 0
        assert result.evaluations > 0

    def test_nonrelativistic_harmonic(self, harmonic):
        """sqrt(p^2 + 100^2) + r^2 approaches 100 + 1.5 sqrt(2 / 100)."""
        result = solve(OneBodyProblem(1.0, 100.0, 1.0, harmonic))
        expected = 1.5 * math.sqrt(2.0 / 100.0)
        assert result.energy - 100.0 == pytest.approx(expected, rel=1e-2)

    def test_weak_coulomb(self, golden):
        """sqrt(p^2 + 1) - 0.1/r converges to the weak-coupling expansion."""
        entry = golden["coulomb_energy"]
        inputs = entry["inputs"]
        problem = OneBodyProblem(inputs["a"], inputs["mu"], inputs["b"], parse_potential(inputs["potential"]))
        result = solve(problem, SolverConfig(**entry["config"]))
        assert result.converged, result.note
        assert 0.99 < result.energy < 1.0
        assert abs(result.energy - entry["reference"]) < entry["tolerance"]

    def test_scale_optimum_interior(self, linear):
        """The optimal scale is inside the bracket and beats its neighbours."""
        config = SolverConfig()
        problem = OneBodyProblem(1.0, 0.0, 1.0, linear)
        result = solve(problem, config)
        lo, hi = config.scale_bracket
        assert lo < result.optimal_scale < hi
        floor = result.energy - config.rel_tol * abs(result.energy)
        for scale in (lo, hi, 0.8 * result.optimal_scale, 1.25 * result.optimal_scale):
            assert ground_energy_at_scale(problem, scale, config, result.basis_size) >= floor

    def test_escalates_in_half_steps(self, linear):
        """Sizes grow by basis_size // 2, so a tight tolerance stops at the cap."""
        config = SolverConfig(basis_size=8, max_basis_size=20, quadrature_order=200, rel_tol=1e-14)
        result = solve(OneBodyProblem(1.0, 0.0, 1.0, linear), config)
        assert not result.converged
        assert result.basis_size == 20

    def test_massless_coulomb_is_scale_free(self):
        """Below the critical coupling the massless Coulomb infimum is 0."""
        result = solve(OneBodyProblem(1.0, 0.0, 1.0, PotentialSpec.coulomb(0.3)))
        assert result.energy == 0.0
        assert math.isinf(result.optimal_scale)
        assert result.note

    @pytest.mark.parametrize("mu", [0.0, 1.0])
    def test_critical_coupling(self, mu):
        """b c / (a sqrt(lam)) >= 2/pi makes the spectrum unbounded below."""
        problem = OneBodyProblem(1.0, mu, 1.0, PotentialSpec.coulomb(0.7))
        with pytest.raises(CouplingAboveCriticalError) as exc_info:
            solve(problem)
        assert exc_info.value.diagnostics["effective_coupling"] == pytest.approx(0.7)

    def test_invalid_problem(self, linear):
        """Non-positive kinetic weight is rejected."""
        with pytest.raises(DomainError):
            solve(OneBodyProblem(0.0, 0.0, 1.0, linear))

    def test_invalid_potential(self):
        """A repulsive coupling is rejected before any numerics."""
        with pytest.raises(DomainError):
            solve(OneBodyProblem(1.0, 0.0, 1.0, PotentialSpec.power(1.0, -1.0)))

    @pytest.mark.parametrize("config", [
        SolverConfig(basis_size=2, quadrature_order=200),
        SolverConfig(basis_size=32, quadrature_order=64),
        SolverConfig(basis_size=32, max_basis_size=16),
        SolverConfig(scale_bracket=(1.0, 0.5)),
        SolverConfig(rel_tol=0.0),
    ])
    def test_invalid_config(self, linear, config):
        """Inconsistent configurations raise ConfigurationError."""
        with pytest.raises(ConfigurationError):
            solve(OneBodyProblem(1.0, 0.0, 1.0, linear), config)

    def test_unconverged_warns(self, linear, caplog):
        """Hitting the basis cap returns converged=False and logs a warning."""
        config = SolverConfig(basis_size=4, max_basis_size=4, rel_tol=1e-12)
        with caplog.at_level(logging.WARNING, logger="urbounds.onebody.solver"):
            result = solve(OneBodyProblem(1.0, 0.0, 1.0, linear), config)
        assert not result.converged
        assert result.basis_size == 4
        assert result.note
        assert any(r.message == "solve_unconverged" for r in caplog.records)

    def test_result_dict(self, linear, light_config):
        """to_dict carries every field and the variational remark."""
        data = solve(OneBodyProblem(1.0, 0.0, 1.0, linear), light_config).to_dict()
        for key in ("energy", "optimal_scale", "basis_size", "convergence", "converged", "variational"):
            assert key in data


class TestVariational:
    """Rayleigh-Ritz energies never increase as the basis grows."""

    def test_monotone_in_basis_size(self):
        """E(16) >= E(32) >= E(48) at a fixed scale for random problems."""
        rng = np.random.default_rng(20240611)
        config = SolverConfig(basis_size=16, quadrature_order=200, max_basis_size=48)
        for _ in range(20):
            q = float(rng.uniform(0.25, 2.0))
            mu = 0.0 if rng.random() < 0.3 else float(rng.uniform(0.5, 2.0))
            problem = OneBodyProblem(
                a=float(rng.uniform(0.5, 3.0)),
                mu=mu,
                b=float(rng.uniform(0.5, 3.0)),
                potential=PotentialSpec.power(q, 1.0),
            )
            energies = [ground_energy_at_scale(problem, 1.0, config, n) for n in (16, 32, 48)]
            assert energies[0] >= energies[1] - 1e-10
            assert energies[1] >= energies[2] - 1e-10


class TestDilationLaw:
    """E(a, b, q) = a^(q/(1+q)) b^(1/(1+q)) E(1, 1, q)."""

    @pytest.mark.parametrize("q", [0.5, 1.0, 2.0])
    def test_matches_direct_solve(self, q, light_config):
        """The scaled unit energy equals a direct solve."""
        rng = np.random.default_rng(7)
        for _ in range(10):
            a, b = (float(x) for x in rng.uniform(0.5, 4.0, size=2))
            direct = solve(OneBodyProblem(a, 0.0, b, PotentialSpec.power(q)), light_config).energy
            assert scaled_ground_energy(a, b, q, light_config) == pytest.approx(direct, rel=1e-5)

    def test_docstring_example(self, light_config):
        """a = 4, b = 1, q = 1 doubles the unit energy."""
        ratio = scaled_ground_energy(4.0, 1.0, 1.0, light_config) / unit_energy(1.0, light_config)
        assert ratio == pytest.approx(2.0, rel=1e-12)

    def test_cache(self, light_config):
        """The unit energy is computed once per exponent and configuration."""
        clear_energy_cache()
        first = unit_energy(1.5, light_config)
        assert len(_unit_results) == 1
        assert unit_energy(1.5, light_config) == first
        assert len(_unit_results) == 1
        clear_energy_cache()
        assert not _unit_results

    def test_rejects_non_confining(self):
        """q <= 0 has no dilation law here."""
        with pytest.raises(UnsupportedExponentError):
            scaled_ground_energy(1.0, 1.0, -1.0)

    def test_rejects_weights(self):
        """a and b must be positive."""
        with pytest.raises(DomainError):
            scaled_ground_energy(0.0, 1.0, 1.0)
