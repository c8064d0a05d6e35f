# propagator/field.py
# KvN wavefunction psi(x, p) on a phase-space grid, its Gaussian initial data
# and the quadratures used by observers.

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from config import get_settings
from dynamics.profiles import ClassicalState
from errors import LabError
from propagator.grid import PhaseSpaceGrid

logger = logging.getLogger(__name__)

RING_WIDTH = 2


class BoundaryMassError(LabError):
    """Initial data reaches the periodic boundary."""

    def __init__(self, message: str, *, suggested_extents: tuple[float, float]) -> None:
        lx, lp = suggested_extents
        super().__init__(f"{message}; try lx >= {lx:g}, lp >= {lp:g}")
        self.suggested_extents = suggested_extents


@dataclass(frozen=True, slots=True)
class GaussianPacket:
    """Closed form of the initial data: amplitude * exp(-(x-x0)^2/(2 sx^2) - (p-p0)^2/(2 sp^2))."""

    x0: float
    p0: float
    sx: float
    sp: float
    amplitude: float = 1.0

    def evaluate(self, x: np.ndarray, p: np.ndarray) -> np.ndarray:
        exponent = -((x - self.x0) ** 2) / (2.0 * self.sx ** 2) - ((p - self.p0) ** 2) / (2.0 * self.sp ** 2)
        return (self.amplitude * np.exp(exponent)).astype(complex)


@dataclass
class PhaseSpaceField:
    """Complex samples psi[i, j] = psi(x_i, p_j) at ``time``.

    ``packet`` is the closed form of the samples at ``time`` when one is
    known; propagated fields carry none.
    """

    grid: PhaseSpaceGrid
    values: np.ndarray
    time: float = 0.0
    packet: GaussianPacket | None = None

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != self.grid.shape:
            raise ValueError(f"field shape {self.values.shape} does not match grid {self.grid.shape}")

    def copy(self) -> PhaseSpaceField:
        return PhaseSpaceField(self.grid, self.values.copy(), self.time, self.packet)

    def snapshot(self) -> PhaseSpaceField:
        """Read-only copy handed to observers."""
        values = self.values.copy()
        values.setflags(write=False)
        return PhaseSpaceField(self.grid, values, self.time, self.packet)

    def density(self) -> np.ndarray:
        return np.abs(self.values) ** 2


@dataclass(frozen=True, slots=True)
class Moments:
    mean_x: float
    mean_p: float
    mean_x2: float
    mean_p2: float


def norm(field: PhaseSpaceField) -> float:
    """||psi|| with plain Riemann weights dx*dp."""
    return math.sqrt(float(np.sum(field.density())) * field.grid.cell_area)


def moments(field: PhaseSpaceField) -> Moments:
    density = field.density()
    mass = float(np.sum(density))
    if mass == 0.0:
        raise ValueError("moments of a zero field are undefined")
    x, p = field.grid.x_column, field.grid.p_row
    return Moments(
        mean_x=float(np.sum(density * x)) / mass,
        mean_p=float(np.sum(density * p)) / mass,
        mean_x2=float(np.sum(density * x ** 2)) / mass,
        mean_p2=float(np.sum(density * p ** 2)) / mass,
    )


def outer_ring_mask(grid: PhaseSpaceGrid, width: int = RING_WIDTH) -> np.ndarray:
    mask = np.zeros(grid.shape, dtype=bool)
    mask[:width, :] = True
    mask[-width:, :] = True
    mask[:, :width] = True
    mask[:, -width:] = True
    return mask


def outer_ring_mass(field: PhaseSpaceField) -> float:
    """Fraction of |psi|^2 carried by the two outermost rows and columns."""
    density = field.density()
    total = float(np.sum(density))
    if total == 0.0:
        return 0.0
    return float(np.sum(density[outer_ring_mask(field.grid)])) / total


def _suggested_extents(grid: PhaseSpaceGrid, center: ClassicalState, sx: float, sp: float, tail: float) -> tuple[float, float]:
    # |psi|^2 / peak = exp(-d^2 / s^2) falls below tail at d = s * sqrt(ln(1/tail))
    reach = math.sqrt(math.log(1.0 / tail))
    lx = math.ceil(abs(center.q) + sx * reach + RING_WIDTH * grid.dx)
    lp = math.ceil(abs(center.p) + sp * reach + RING_WIDTH * grid.dp)
    return float(max(lx, grid.l_x)), float(max(lp, grid.l_p))


def initialize_gaussian(
    grid: PhaseSpaceGrid,
    center: ClassicalState,
    widths: tuple[float, float],
    *,
    time: float = 0.0,
    tail: float | None = None,
) -> PhaseSpaceField:
    """Unit-norm Gaussian centred on ``center`` with widths (sx, sp)."""
    sx, sp = (float(w) for w in widths)
    if not (sx > 0 and sp > 0 and math.isfinite(sx) and math.isfinite(sp)):
        raise ValueError(f"Gaussian widths must be positive, got ({sx}, {sp})")
    tail = get_settings().gaussian_tail if tail is None else tail

    shape = GaussianPacket(center.q, center.p, sx, sp)
    x, p = grid.x_column, grid.p_row
    relative_density = np.abs(shape.evaluate(x, p)) ** 2  # peak value is 1
    edge = float(np.max(relative_density[outer_ring_mask(grid)]))
    if edge >= tail:
        raise BoundaryMassError(
            f"Gaussian at ({center.q}, {center.p}) has boundary density {edge:.3e} of its peak "
            f"(limit {tail:.1e}) on a grid with lx={grid.l_x}, lp={grid.l_p}",
            suggested_extents=_suggested_extents(grid, center, sx, sp, tail),
        )

    unnormalized = PhaseSpaceField(grid, shape.evaluate(x, p), time)
    amplitude = 1.0 / norm(unnormalized)
    packet = GaussianPacket(center.q, center.p, sx, sp, amplitude)
    field = PhaseSpaceField(grid, packet.evaluate(x, p), time, packet)
    logger.debug("Initialized Gaussian %s on %s (edge density %.2e)", packet, grid.describe(), edge)
    return field
