# Phase-space grid, KvN wavefunction and its propagation.

from propagator.characteristics import CharacteristicsError, solve_characteristics
from propagator.field import (
    BoundaryMassError,
    GaussianPacket,
    Moments,
    PhaseSpaceField,
    initialize_gaussian,
    moments,
    norm,
    outer_ring_mass,
)
from propagator.grid import GridError, PhaseSpaceGrid, make_grid
from propagator.split_step import (
    PropagationError,
    PropagationResult,
    moment_observer,
    norm_observer,
    propagate,
    step_strang,
)

__all__ = [
    "BoundaryMassError",
    "CharacteristicsError",
    "GaussianPacket",
    "GridError",
    "Moments",
    "PhaseSpaceField",
    "PhaseSpaceGrid",
    "PropagationError",
    "PropagationResult",
    "initialize_gaussian",
    "make_grid",
    "moment_observer",
    "moments",
    "norm",
    "norm_observer",
    "outer_ring_mass",
    "propagate",
    "solve_characteristics",
    "step_strang",
]
