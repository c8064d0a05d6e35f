# invariant/study.py
# Co-integration of rho(t) and psi(t) with <I>, Var(I) and the norm sampled
# along the way.

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from config import get_settings
from dynamics.ermakov import ErmakovSolution, solve_ermakov_direct, solve_ermakov_pinney, solve_rho_control
from dynamics.profiles import ClassicalState, profile_to_dict
from errors import LabError
from invariant.operator import (
    build_split_operator,
    check_parseval,
    expectation_invariant,
    variance_invariant,
)
from propagator.field import PhaseSpaceField, initialize_gaussian, moments, norm
from propagator.grid import make_grid
from propagator.split_step import observation_indices, propagate, step_count
from schemas import KvnConfig
from utils import write_csv

logger = logging.getLogger(__name__)

OBSERVABLE_COLUMNS = ["t", "norm", "mean_x", "mean_p", "expect_I", "var_I"]
REPORT_COLUMNS = ["t", "norm", "expect_I", "var_I"]

# Var(I) of an eigenstate of I is zero up to roundoff; below this fraction of
# <I>^2 its drift is measured in absolute terms.
VARIANCE_FLOOR = 1e-10


class InvariantStudyError(LabError):
    """A stage of the KvN invariant study failed."""


def max_relative_drift(series: np.ndarray, *, floor: float = 0.0) -> float:
    """max |s(t) - s(0)| / |s(0)|; absolute when |s(0)| <= floor, inf for non-finite samples."""
    values = np.asarray(series, dtype=float)
    if values.size == 0:
        return math.nan
    if not np.all(np.isfinite(values)):
        return math.inf
    deviation = float(np.max(np.abs(values - values[0])))
    reference = abs(float(values[0]))
    return deviation / reference if reference > floor else deviation


@dataclass
class InvariantReport:
    observations: pd.DataFrame
    parameters: dict[str, Any] = field(default_factory=dict)
    ermakov: ErmakovSolution | None = None
    max_outer_ring_mass: float = 0.0
    initial_field: PhaseSpaceField | None = field(default=None, repr=False)
    final_field: PhaseSpaceField | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        missing = [column for column in OBSERVABLE_COLUMNS if column not in self.observations]
        if missing:
            raise ValueError(f"report is missing columns: {', '.join(missing)}")

    @property
    def times(self) -> np.ndarray:
        return self.observations["t"].to_numpy()

    @property
    def expect_I(self) -> np.ndarray:
        return self.observations["expect_I"].to_numpy()

    @property
    def var_I(self) -> np.ndarray:
        return self.observations["var_I"].to_numpy()

    @property
    def norms(self) -> np.ndarray:
        return self.observations["norm"].to_numpy()

    @property
    def max_rel_drift_I(self) -> float:
        return max_relative_drift(self.expect_I)

    @property
    def max_rel_drift_var(self) -> float:
        scale = abs(float(self.expect_I[0])) if self.expect_I.size else 0.0
        return max_relative_drift(self.var_I, floor=VARIANCE_FLOOR * max(1.0, scale ** 2))

    @property
    def max_norm_error(self) -> float:
        return float(np.max(np.abs(self.norms - 1.0)))

    def summary(self) -> dict[str, Any]:
        return {
            "max_rel_drift_I": self.max_rel_drift_I,
            "max_rel_drift_var": self.max_rel_drift_var,
            "max_norm_error": self.max_norm_error,
            "initial_expect_I": float(self.expect_I[0]),
            "max_outer_ring_mass": self.max_outer_ring_mass,
            "samples": int(len(self.observations)),
            **self.parameters,
        }

    def to_csv(self, path: str | Path) -> Path:
        return write_csv(self.observations[REPORT_COLUMNS], path)

    def observables_to_csv(self, path: str | Path) -> Path:
        return write_csv(self.observations[OBSERVABLE_COLUMNS], path)


class InvariantObserver:
    """Observer measuring the norm, centroid, <I> and Var(I) at rho(t)."""

    def __init__(self, ermakov: ErmakovSolution) -> None:
        self.ermakov = ermakov
        self.rho_min = get_settings().rho_min

    def __call__(self, field: PhaseSpaceField) -> dict[str, float]:
        m = moments(field)
        row = {"norm": norm(field), "mean_x": m.mean_x, "mean_p": m.mean_p}
        rho, rhodot = self.ermakov.sample(field.time)
        if not (math.isfinite(rho) and rho > self.rho_min):
            # rho of the linear control can cross zero; the invariant is undefined there
            row.update(expect_I=math.nan, var_I=math.nan)
            return row
        op = build_split_operator(field.grid, rho, rhodot)
        row.update(expect_I=expectation_invariant(field, op), var_I=variance_invariant(field, op))
        return row


def _solve_rho(config: KvnConfig, times: np.ndarray) -> ErmakovSolution:
    if config.rho_equation == "pinney":
        return solve_ermakov_pinney(config.profile, config.rho0, config.rhodot0, times)
    if config.rho_equation == "linear-control":
        return solve_rho_control(config.profile, config.rho0, config.rhodot0, times)
    return solve_ermakov_direct(config.profile, config.rho0, config.rhodot0, times)


def run_invariant_study(config: KvnConfig) -> InvariantReport:
    """Propagate the configured Gaussian and measure the invariant along the way."""
    try:
        grid = make_grid(config.grid.n_x, config.grid.n_p, config.grid.l_x, config.grid.l_p)
        check_parseval(grid)
        initial = config.initial
        field0 = initialize_gaussian(
            grid, ClassicalState(initial.x0, initial.p0), (initial.sx, initial.sp), time=config.t0
        )
        steps = step_count(config.t0, config.t1, config.dt)
    except LabError as exc:
        raise InvariantStudyError(f"kvn study failed during setup: {exc}") from exc

    dt = (config.t1 - config.t0) / steps
    marks = observation_indices(steps, config.observe_stride)
    times = np.array([config.t1 if mark == steps else config.t0 + mark * dt for mark in marks])

    try:
        ermakov = _solve_rho(config, times)
    except LabError as exc:
        raise InvariantStudyError(f"kvn study failed while solving for rho: {exc}") from exc

    try:
        result = propagate(
            field0, config.profile, config.t1, config.dt,
            observers=[InvariantObserver(ermakov)], stride=config.observe_stride,
        )
    except LabError as exc:
        raise InvariantStudyError(f"kvn study failed during propagation: {exc}") from exc

    report = InvariantReport(
        observations=result.observations[OBSERVABLE_COLUMNS],
        parameters={
            "rho_equation": config.rho_equation,
            "profile": profile_to_dict(config.profile),
            "dt": result.dt,
            "steps": result.steps,
        },
        ermakov=ermakov,
        max_outer_ring_mass=result.max_outer_ring_mass,
        initial_field=field0,
        final_field=result.field,
    )
    logger.info(
        "Invariant study (%s): <I>0=%.12g, drift(I)=%.3e, drift(Var)=%.3e",
        config.rho_equation, report.expect_I[0], report.max_rel_drift_I, report.max_rel_drift_var,
    )
    return report
