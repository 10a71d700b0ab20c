"""
One-body semirelativistic ground-state solver.
"""

from .solver import (
    GroundStateResult,
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
    unit_result,
)

__all__ = [
    "GroundStateResult",
    "OneBodyProblem",
    "SolverConfig",
    "SystemParams",
    "clear_energy_cache",
    "ground_energy_at_scale",
    "kinetic_matrix",
    "potential_matrix",
    "scaled_ground_energy",
    "solve",
    "unit_energy",
    "unit_result",
]
