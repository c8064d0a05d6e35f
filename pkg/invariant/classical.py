# invariant/classical.py
# The invariant along classical trajectories: I = 1/2 [(q/rho)^2 + (rho p - rho' q)^2].

from __future__ import annotations

import logging
from typing import Sequence

import numpy as np
import pandas as pd

from dynamics.ermakov import ErmakovSolution
from dynamics.hill import solve_hill_batch
from dynamics.profiles import ClassicalState, StiffnessProfile
from errors import LabError

logger = logging.getLogger(__name__)


class NonPositiveRhoError(LabError, ValueError):
    pass


def _require_positive(rho) -> None:
    if not np.all(np.asarray(rho) > 0):
        raise NonPositiveRhoError(f"rho must be positive, got {rho}")


def invariant_values(q, p, rho, rhodot):
    """Vectorized invariant; arrays broadcast against each other."""
    return 0.5 * ((q / rho) ** 2 + (rho * p - rhodot * q) ** 2)


def classical_invariant(state: ClassicalState, rho: float, rhodot: float) -> float:
    _require_positive(rho)
    return float(invariant_values(state.q, state.p, rho, rhodot))


def classical_drift(
    profile: StiffnessProfile,
    states: Sequence[ClassicalState],
    ermakov: ErmakovSolution,
    times: Sequence[float] | np.ndarray,
) -> pd.DataFrame:
    """Max invariant drift per trajectory: relative to I(0), absolute when I(0) = 0.

    Columns: trajectory, q0, p0, invariant0, max_drift, drift_kind.
    """
    if not states:
        raise ValueError("at least one initial state is required")
    rho, rhodot = ermakov.sample(np.asarray(times, dtype=float))
    rho, rhodot = np.atleast_1d(rho), np.atleast_1d(rhodot)
    _require_positive(rho)

    q0 = np.array([state.q for state in states])
    p0 = np.array([state.p for state in states])
    trajectories = solve_hill_batch(profile, q0, p0, times)
    values = invariant_values(trajectories.q, trajectories.p, rho[None, :], rhodot[None, :])

    initial = values[:, 0]
    deviation = np.max(np.abs(values - initial[:, None]), axis=1)
    relative = initial > 0
    drift = np.where(relative, deviation / np.where(relative, initial, 1.0), deviation)

    logger.info(
        "Classical drift over %d trajectories on [%g, %g]: max %.3e",
        len(states), trajectories.times[0], trajectories.times[-1], float(np.max(drift)),
    )
    return pd.DataFrame(
        {
            "trajectory": np.arange(len(states)),
            "q0": q0,
            "p0": p0,
            "invariant0": initial,
            "max_drift": drift,
            "drift_kind": np.where(relative, "relative", "absolute"),
        }
    )
