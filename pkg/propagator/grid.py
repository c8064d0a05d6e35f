# propagator/grid.py
# Uniform periodic phase-space grid [-Lx, Lx) x [-Lp, Lp) and its spectral
# frequency layout.

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from errors import LabError

MIN_POINTS = 32


class GridError(LabError, ValueError):
    """Invalid grid sizes or extents."""


def _is_power_of_two(value: int) -> bool:
    return value > 0 and value & (value - 1) == 0


@dataclass(frozen=True)
class PhaseSpaceGrid:
    """Axis 0 is x, axis 1 is p.

    Frequencies follow the usual FFT layout (0, positive, Nyquist, negative),
    so kappa_x[j] is the wavenumber of the j-th output of an FFT along x.
    """

    n_x: int
    n_p: int
    l_x: float
    l_p: float

    def __post_init__(self) -> None:
        for name, size in (("Nx", self.n_x), ("Np", self.n_p)):
            if not isinstance(size, (int, np.integer)) or not _is_power_of_two(int(size)):
                raise GridError(f"{name}={size} is not a power of two")
            if size < MIN_POINTS:
                raise GridError(f"{name}={size} is below the minimum of {MIN_POINTS} points")
        for name, extent in (("Lx", self.l_x), ("Lp", self.l_p)):
            if not (np.isfinite(extent) and extent > 0):
                raise GridError(f"{name} must be positive and finite, got {extent}")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_x, self.n_p)

    @property
    def dx(self) -> float:
        return 2.0 * self.l_x / self.n_x

    @property
    def dp(self) -> float:
        return 2.0 * self.l_p / self.n_p

    @property
    def cell_area(self) -> float:
        return self.dx * self.dp

    @property
    def spectral_weight(self) -> float:
        """Weight making sum(|fft2(psi)|^2) * weight equal the real-space norm."""
        return self.cell_area / (self.n_x * self.n_p)

    @cached_property
    def x(self) -> np.ndarray:
        return self._readonly(-self.l_x + self.dx * np.arange(self.n_x))

    @cached_property
    def p(self) -> np.ndarray:
        return self._readonly(-self.l_p + self.dp * np.arange(self.n_p))

    @cached_property
    def kappa_x(self) -> np.ndarray:
        return self._readonly(2.0 * np.pi * np.fft.fftfreq(self.n_x, d=self.dx))

    @cached_property
    def kappa_p(self) -> np.ndarray:
        return self._readonly(2.0 * np.pi * np.fft.fftfreq(self.n_p, d=self.dp))

    @property
    def x_column(self) -> np.ndarray:
        return self.x[:, None]

    @property
    def p_row(self) -> np.ndarray:
        return self.p[None, :]

    @property
    def kappa_x_column(self) -> np.ndarray:
        return self.kappa_x[:, None]

    @property
    def kappa_p_row(self) -> np.ndarray:
        return self.kappa_p[None, :]

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.x, self.p, indexing="ij")

    def contains(self, x: float, p: float) -> bool:
        return -self.l_x <= x < self.l_x and -self.l_p <= p < self.l_p

    def describe(self) -> dict[str, float | int]:
        return {"nx": self.n_x, "np": self.n_p, "lx": self.l_x, "lp": self.l_p}

    @staticmethod
    def _readonly(values: np.ndarray) -> np.ndarray:
        values.setflags(write=False)
        return values


def make_grid(nx: int, np_: int, lx: float, lp: float) -> PhaseSpaceGrid:
    for name, size in (("Nx", nx), ("Np", np_)):
        if isinstance(size, bool) or float(size) != int(size):
            raise GridError(f"{name}={size} is not an integer")
    return PhaseSpaceGrid(n_x=int(nx), n_p=int(np_), l_x=float(lx), l_p=float(lp))
