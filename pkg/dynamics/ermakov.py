# dynamics/ermakov.py
# Auxiliary amplitude rho(t) of the invariant: rho'' + k(t) rho = rho^-3.
#
# Two independent constructions are provided (direct integration and the
# Pinney superposition of two Hill solutions) so each can check the other.

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Sequence

import numpy as np
import pandas as pd
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicHermiteSpline
from scipy.special import factorial

from config import get_settings
from dynamics.hill import (
    INTEGRATOR_METHOD,
    IntegrationError,
    integrate_linear,
    require_coverage,
    validate_times,
)
from dynamics.profiles import StiffnessProfile
from errors import LabError
from utils import write_csv

logger = logging.getLogger(__name__)

ErmakovMethod = Literal["direct", "pinney", "hill-control"]


class ErmakovSingularityError(LabError):
    """rho dropped below the configured floor; a numerical failure, not physics."""

    def __init__(self, message: str, *, crossing_time: float) -> None:
        super().__init__(f"{message} (estimated crossing at t={crossing_time:.12g})")
        self.crossing_time = crossing_time


class ErmakovIntegrationError(IntegrationError):
    """The Ermakov integration stopped before the end of the grid."""


class PinneyConstructionError(LabError):
    """The two Hill solutions do not form a usable fundamental pair."""


@dataclass(frozen=True, slots=True)
class ErmakovSolution:
    """rho and rho' sampled on a strictly increasing time grid.

    ``method`` records how the series was produced. Solutions of the Ermakov
    equation are strictly positive; the ``hill-control`` series (rho'' + k rho
    = 0, used as a negative control) is exempt from that check.
    """

    times: np.ndarray
    rho: np.ndarray
    rhodot: np.ndarray
    profile: StiffnessProfile
    method: ErmakovMethod = "direct"
    rtol: float = math.nan
    atol: float = math.nan
    max_residual: float = field(default=math.nan)

    def __post_init__(self) -> None:
        times = np.array(validate_times(self.times))
        rho = np.array(self.rho, dtype=float)
        rhodot = np.array(self.rhodot, dtype=float)
        if not (times.shape == rho.shape == rhodot.shape):
            raise ValueError(
                f"times, rho and rhodot must have equal length: {times.size}, {rho.size}, {rhodot.size}"
            )
        if self.method != "hill-control" and not np.all(rho > 0):
            first = int(np.argmax(~(rho > 0)))
            raise ErmakovSingularityError(
                "Ermakov solution must stay positive", crossing_time=float(times[first])
            )
        for series in (times, rho, rhodot):
            series.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "rhodot", rhodot)
        if math.isnan(self.max_residual) and times.size >= 5:
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                object.__setattr__(self, "max_residual", float(np.max(ermakov_residual(self))))

    def __len__(self) -> int:
        return int(self.times.size)

    def acceleration(self, times: np.ndarray, rho: np.ndarray) -> np.ndarray:
        """rho'' implied by the equation this series solves."""
        k = self.profile.evaluate(times)
        if self.method == "hill-control":
            return -k * rho
        return rho ** -3 - k * rho

    def sample(self, t: float | np.ndarray) -> tuple[float | np.ndarray, float | np.ndarray]:
        """rho and rho' at arbitrary times inside the grid (cubic Hermite)."""
        query = np.asarray(t, dtype=float)
        lo, hi = float(self.times[0]), float(self.times[-1])
        if np.any(query < lo) or np.any(query > hi):
            raise ValueError(f"Ermakov solution covers [{lo}, {hi}] only")
        if self.times.size == 1:
            rho = np.full_like(query, self.rho[0])
            rhodot = np.full_like(query, self.rhodot[0])
        else:
            rho_spline = CubicHermiteSpline(self.times, self.rho, self.rhodot)
            rhodot_spline = CubicHermiteSpline(
                self.times, self.rhodot, self.acceleration(self.times, self.rho)
            )
            rho = rho_spline(query)
            rhodot = rhodot_spline(query)
        if query.ndim == 0:
            return float(rho), float(rhodot)
        return rho, rhodot

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"t": self.times, "rho": self.rho, "rhodot": self.rhodot})

    def to_csv(self, path: str | Path) -> Path:
        return write_csv(self.to_frame(), path)


def _prepare(
    profile: StiffnessProfile, rho0: float, times: Sequence[float] | np.ndarray
) -> np.ndarray:
    if not (math.isfinite(rho0) and rho0 > 0):
        raise ValueError(f"rho0 must be positive, got {rho0}")
    grid = validate_times(times)
    require_coverage(profile, grid[0], grid[-1])
    return grid


def solve_ermakov_direct(
    profile: StiffnessProfile,
    rho0: float,
    rhodot0: float,
    times: Sequence[float] | np.ndarray,
    *,
    rtol: float | None = None,
    atol: float | None = None,
) -> ErmakovSolution:
    """Integrate rho'' = rho^-3 - k(t) rho with the adaptive 5(4) integrator."""
    settings = get_settings()
    rtol = settings.rtol if rtol is None else rtol
    atol = settings.atol if atol is None else atol
    floor = settings.rho_min
    grid = _prepare(profile, rho0, times)

    if rho0 <= floor:
        raise ErmakovSingularityError(
            f"rho0={rho0} is already below the floor {floor}", crossing_time=float(grid[0])
        )
    if grid.size == 1:
        return ErmakovSolution(
            times=grid, rho=np.array([rho0]), rhodot=np.array([rhodot0]), profile=profile,
            method="direct", rtol=rtol, atol=atol,
        )

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        rho, velocity = y
        return np.array([velocity, rho ** -3 - profile.evaluate(t) * rho])

    def below_floor(t: float, y: np.ndarray) -> float:
        return y[0] - floor

    below_floor.terminal = True
    below_floor.direction = -1

    solution = solve_ivp(
        rhs,
        (float(grid[0]), float(grid[-1])),
        np.array([rho0, rhodot0], dtype=float),
        method=INTEGRATOR_METHOD,
        t_eval=grid,
        events=below_floor,
        rtol=rtol,
        atol=atol,
    )
    if solution.status == 1:
        crossing = float(solution.t_events[0][0])
        raise ErmakovSingularityError(f"rho fell below the floor {floor}", crossing_time=crossing)
    if solution.status != 0:
        last_good = float(solution.t[-1]) if solution.t.size else float(grid[0])
        raise ErmakovIntegrationError(
            f"Ermakov integration failed: {solution.message}", last_good_time=last_good
        )

    logger.info(
        "Direct Ermakov solve on [%g, %g]: %d samples, %d RHS evaluations",
        grid[0], grid[-1], grid.size, solution.nfev,
    )
    return ErmakovSolution(
        times=grid,
        rho=solution.y[0],
        rhodot=solution.y[1],
        profile=profile,
        method="direct",
        rtol=rtol,
        atol=atol,
    )


def solve_ermakov_pinney(
    profile: StiffnessProfile,
    rho0: float,
    rhodot0: float,
    times: Sequence[float] | np.ndarray,
    *,
    rtol: float | None = None,
    atol: float | None = None,
) -> ErmakovSolution:
    """rho = sqrt(u² + v²/W²) from two Hill solutions u, v with Wronskian W.

    u starts at (rho0, rhodot0) and v at (0, 1/rho0), which reproduces the
    requested initial data for rho and makes W = 1.
    """
    settings = get_settings()
    rtol = settings.rtol if rtol is None else rtol
    atol = settings.atol if atol is None else atol
    grid = _prepare(profile, rho0, times)

    u0, udot0 = rho0, rhodot0
    v0, vdot0 = 0.0, 1.0 / rho0
    wronskian = u0 * vdot0 - udot0 * v0
    if not math.isfinite(wronskian) or abs(wronskian) < settings.wronskian_floor:
        raise PinneyConstructionError(f"Degenerate Wronskian W={wronskian!r}")

    if grid.size == 1:
        u, udot = np.array([u0]), np.array([udot0])
        v, vdot = np.array([v0]), np.array([vdot0])
    else:
        solution, _ = integrate_linear(
            profile,
            np.array([u0, v0]),
            np.array([udot0, vdot0]),
            (float(grid[0]), float(grid[-1])),
            t_eval=grid,
            rtol=rtol,
            atol=atol,
        )
        u, v = solution.y[0], solution.y[1]
        udot, vdot = solution.y[2], solution.y[3]

    inv_w2 = 1.0 / wronskian ** 2
    rho = np.sqrt(u * u + v * v * inv_w2)
    if np.min(rho) < settings.rho_min:
        first = int(np.argmax(rho < settings.rho_min))
        raise ErmakovSingularityError(
            f"Pinney amplitude fell below the floor {settings.rho_min}",
            crossing_time=float(grid[first]),
        )
    rhodot = (u * udot + v * vdot * inv_w2) / rho

    logger.info(
        "Pinney Ermakov construction on [%g, %g]: W=%.3g, min rho=%.6g",
        grid[0], grid[-1], wronskian, float(np.min(rho)),
    )
    return ErmakovSolution(
        times=grid,
        rho=rho,
        rhodot=rhodot,
        profile=profile,
        method="pinney",
        rtol=rtol,
        atol=atol,
    )


def solve_rho_control(
    profile: StiffnessProfile,
    rho0: float,
    rhodot0: float,
    times: Sequence[float] | np.ndarray,
    *,
    rtol: float | None = None,
    atol: float | None = None,
) -> ErmakovSolution:
    """Negative control: rho'' + k(t) rho = 0 with the Ermakov initial data."""
    grid = _prepare(profile, rho0, times)
    settings = get_settings()
    rtol = settings.rtol if rtol is None else rtol
    atol = settings.atol if atol is None else atol
    if grid.size == 1:
        rho, rhodot = np.array([rho0]), np.array([rhodot0])
    else:
        solution, _ = integrate_linear(
            profile, np.array([rho0]), np.array([rhodot0]),
            (float(grid[0]), float(grid[-1])), t_eval=grid, rtol=rtol, atol=atol,
        )
        rho, rhodot = solution.y[0], solution.y[1]
    logger.warning("Using the linear control equation for rho; the invariant is not expected to hold.")
    return ErmakovSolution(
        times=grid, rho=rho, rhodot=rhodot, profile=profile,
        method="hill-control", rtol=rtol, atol=atol,
    )


STENCIL_WIDTH = 5


def second_derivative(t: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Five-point finite-difference y'' on a possibly non-uniform grid.

    Interior nodes use the centred stencil (fourth order); the two nodes at
    either end use the nearest five samples (third order). Weights act on
    y_j - y_i, so constant series give exactly zero.
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    n = t.size
    if n < STENCIL_WIDTH:
        raise ValueError(f"second derivative needs at least {STENCIL_WIDTH} samples, got {n}")

    nodes = np.arange(n)
    start = np.clip(nodes - 2, 0, n - STENCIL_WIDTH)
    window = start[:, None] + np.arange(STENCIL_WIDTH)
    neighbours = window[window != nodes[:, None]].reshape(n, STENCIL_WIDTH - 1)

    offsets = t[neighbours] - t[:, None]
    scale = np.max(np.abs(offsets), axis=1)
    u = offsets / scale[:, None]
    powers = np.arange(1, STENCIL_WIDTH)
    # Taylor conditions sum_j v_j u_j^m / m! = [m == 2] for m = 1..4
    system = u[:, None, :] ** powers[None, :, None] / factorial(powers)[None, :, None]
    rhs = np.zeros((n, STENCIL_WIDTH - 1, 1))
    rhs[:, 1, 0] = 1.0
    weights = np.linalg.solve(system, rhs)[..., 0] / scale[:, None] ** 2
    return np.sum(weights * (y[neighbours] - y[:, None]), axis=1)


def ermakov_residual(sol: ErmakovSolution) -> np.ndarray:
    """|rho'' + k rho - rho^-3| at every grid point, rho'' by finite differences."""
    if len(sol) < 5:
        raise ValueError(f"Residual needs at least 5 samples, got {len(sol)}")
    rho_ddot = second_derivative(sol.times, sol.rho)
    k = sol.profile.evaluate(sol.times)
    return np.abs(rho_ddot + k * sol.rho - sol.rho ** -3)


def relative_ermakov_residual(sol: ErmakovSolution) -> np.ndarray:
    """Residual scaled by |rho^-3| + |k| rho, the size of the terms it balances.

    Near a deep minimum of rho the absolute residual is dominated by the
    stencil error on a curvature of order rho^-3; this ratio stays comparable
    along the whole run.
    """
    k = sol.profile.evaluate(sol.times)
    return ermakov_residual(sol) / (np.abs(sol.rho) ** -3 + np.abs(k) * np.abs(sol.rho))
