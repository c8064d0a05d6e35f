# dynamics/hill.py
# Classical trajectories of the oscillator: q' = p, p' = -k(t) q.

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.integrate import solve_ivp

from config import get_settings
from dynamics.profiles import ClassicalState, ProfileDomainError, StiffnessProfile, covers
from errors import LabError

logger = logging.getLogger(__name__)

INTEGRATOR_METHOD = "RK45"  # Dormand-Prince 5(4)


class IntegrationError(LabError):
    """Raised when the adaptive integrator cannot reach the requested time."""

    def __init__(self, message: str, *, last_good_time: float) -> None:
        super().__init__(f"{message} (last good time t={last_good_time:.12g})")
        self.last_good_time = last_good_time


class HillIntegrationError(IntegrationError):
    """Step-size underflow or blow-up while integrating Hill's equation."""


@dataclass(frozen=True, slots=True)
class HillTrajectory:
    """Samples of one or many trajectories on a shared time grid.

    ``q`` and ``p`` have shape (n,) for a single trajectory and (m, n) for a
    batch of m trajectories.
    """

    times: np.ndarray
    q: np.ndarray
    p: np.ndarray

    def __len__(self) -> int:
        return int(self.times.size)

    def state(self, index: int, trajectory: int | None = None) -> ClassicalState:
        if self.q.ndim == 1:
            return ClassicalState(q=float(self.q[index]), p=float(self.p[index]))
        row = 0 if trajectory is None else trajectory
        return ClassicalState(q=float(self.q[row, index]), p=float(self.p[row, index]))

    def states(self) -> list[ClassicalState]:
        if self.q.ndim != 1:
            raise ValueError("states() is only defined for a single trajectory")
        return [ClassicalState(q=float(q), p=float(p)) for q, p in zip(self.q, self.p)]


def validate_times(times: Sequence[float] | np.ndarray) -> np.ndarray:
    grid = np.asarray(times, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("time grid must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(grid)):
        raise ValueError("time grid must be finite")
    if grid.size > 1 and np.any(np.diff(grid) <= 0):
        raise ValueError("time grid must be strictly increasing")
    return grid


def require_coverage(profile: StiffnessProfile, start: float, stop: float) -> None:
    lo, hi = min(start, stop), max(start, stop)
    if not covers(profile, lo, hi):
        dom_lo, dom_hi = profile.domain
        raise ProfileDomainError(
            f"{profile.kind} profile is defined on [{dom_lo}, {dom_hi}], "
            f"which does not cover [{lo}, {hi}]"
        )


def integrate_linear(
    profile: StiffnessProfile,
    q0: np.ndarray,
    p0: np.ndarray,
    t_span: tuple[float, float],
    *,
    t_eval: np.ndarray | None = None,
    rtol: float | None = None,
    atol: float | None = None,
):
    """Integrate a batch of Hill trajectories as one first-order system."""
    settings = get_settings()
    rtol = settings.rtol if rtol is None else rtol
    atol = settings.atol if atol is None else atol

    q0 = np.atleast_1d(np.asarray(q0, dtype=float))
    p0 = np.atleast_1d(np.asarray(p0, dtype=float))
    count = q0.size

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        return np.concatenate([y[count:], -profile.evaluate(t) * y[:count]])

    solution = solve_ivp(
        rhs,
        t_span,
        np.concatenate([q0, p0]),
        method=INTEGRATOR_METHOD,
        t_eval=t_eval,
        rtol=rtol,
        atol=atol,
    )
    if solution.status != 0:
        last_good = float(solution.t[-1]) if solution.t.size else float(t_span[0])
        raise HillIntegrationError(
            f"Hill integration failed: {solution.message}", last_good_time=last_good
        )
    logger.debug(
        "Hill integration over %s: %d RHS evaluations", t_span, solution.nfev
    )
    return solution, count


def solve_hill_batch(
    profile: StiffnessProfile,
    q0: Sequence[float] | np.ndarray,
    p0: Sequence[float] | np.ndarray,
    times: Sequence[float] | np.ndarray,
    *,
    rtol: float | None = None,
    atol: float | None = None,
) -> HillTrajectory:
    grid = validate_times(times)
    q0 = np.atleast_1d(np.asarray(q0, dtype=float))
    p0 = np.atleast_1d(np.asarray(p0, dtype=float))
    if q0.shape != p0.shape or q0.ndim != 1:
        raise ValueError("q0 and p0 must be 1-D arrays of equal length")
    require_coverage(profile, grid[0], grid[-1])

    if grid.size == 1:
        return HillTrajectory(times=grid, q=q0[:, None].copy(), p=p0[:, None].copy())

    solution, count = integrate_linear(
        profile, q0, p0, (float(grid[0]), float(grid[-1])), t_eval=grid, rtol=rtol, atol=atol
    )
    return HillTrajectory(times=grid, q=solution.y[:count], p=solution.y[count:])


def solve_hill(
    profile: StiffnessProfile,
    initial: ClassicalState,
    times: Sequence[float] | np.ndarray,
    *,
    rtol: float | None = None,
    atol: float | None = None,
) -> HillTrajectory:
    """Integrate q'' + k(t) q = 0 from ``initial`` at times[0], sampled on ``times``."""
    batch = solve_hill_batch(profile, [initial.q], [initial.p], times, rtol=rtol, atol=atol)
    return HillTrajectory(times=batch.times, q=batch.q[0], p=batch.p[0])


def fundamental_matrix(
    profile: StiffnessProfile,
    t_start: float,
    t_stop: float,
    *,
    rtol: float | None = None,
    atol: float | None = None,
) -> np.ndarray:
    """2x2 flow map taking (q, p) at ``t_start`` to (q, p) at ``t_stop``.

    ``t_stop`` may precede ``t_start``; the flow is then integrated backward.
    """
    require_coverage(profile, t_start, t_stop)
    if t_start == t_stop:
        return np.eye(2)
    solution, _ = integrate_linear(
        profile,
        np.array([1.0, 0.0]),
        np.array([0.0, 1.0]),
        (float(t_start), float(t_stop)),
        rtol=rtol,
        atol=atol,
    )
    q_end = solution.y[:2, -1]
    p_end = solution.y[2:, -1]
    return np.array([[q_end[0], q_end[1]], [p_end[0], p_end[1]]])
