# propagator/split_step.py
# Strang-split spectral propagation of d(psi)/dt = -p d(psi)/dx + k(t) x d(psi)/dp.
#
# Both sub-flows are diagonal in one spectral axis: advection along x is a
# phase exp(-i kappa_x p dt) after an FFT over x, advection along p is a
# phase exp(+i kappa_p k x dt) after an FFT over p. Transforms use the
# unnormalized forward kernel exp(-i kappa u); the inverse carries 1/N.

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np
import pandas as pd
from scipy import fft

from config import get_settings
from dynamics.hill import require_coverage
from dynamics.profiles import StiffnessProfile
from errors import LabError
from propagator.field import PhaseSpaceField, moments, norm, outer_ring_mass

logger = logging.getLogger(__name__)

STEP_TOLERANCE = 1e-12

Observer = Callable[[PhaseSpaceField], Mapping[str, float]]


class PropagationError(LabError):
    """Invalid propagation request or a failing observer."""


class _StrangStepper:
    """Holds the time-independent phase factors for one step size."""

    def __init__(self, grid, profile: StiffnessProfile, dt: float) -> None:
        self.grid = grid
        self.profile = profile
        self.dt = dt
        self.workers = get_settings().fft_workers
        x_phase = grid.kappa_x_column * grid.p_row * dt
        self.x_half = np.exp(-0.5j * x_phase)
        self.x_full = np.exp(-1j * x_phase)
        self.p_phase = grid.kappa_p_row * grid.x_column * dt

    def advect_x(self, values: np.ndarray, multiplier: np.ndarray) -> np.ndarray:
        spectral = fft.fft(values, axis=0, workers=self.workers, overwrite_x=True)
        spectral *= multiplier
        return fft.ifft(spectral, axis=0, workers=self.workers, overwrite_x=True)

    def advect_p(self, values: np.ndarray, t_mid: float) -> np.ndarray:
        k = float(self.profile.evaluate(t_mid))
        spectral = fft.fft(values, axis=1, workers=self.workers, overwrite_x=True)
        spectral *= np.exp(1j * k * self.p_phase)
        return fft.ifft(spectral, axis=1, workers=self.workers, overwrite_x=True)

    def run(self, values: np.ndarray, t_start: float, steps: int) -> np.ndarray:
        """``steps`` Strang steps with adjacent x half-steps merged."""
        values = self.advect_x(values, self.x_half)
        for index in range(steps):
            t_mid = t_start + (index + 0.5) * self.dt
            values = self.advect_p(values, t_mid)
            last = index == steps - 1
            values = self.advect_x(values, self.x_half if last else self.x_full)
        return values


def step_strang(field: PhaseSpaceField, profile: StiffnessProfile, dt: float) -> PhaseSpaceField:
    """One norm-preserving step: half x-advection, full p-advection at t+dt/2, half x-advection."""
    if not (dt > 0 and math.isfinite(dt)):
        raise PropagationError(f"dt must be positive, got {dt}")
    require_coverage(profile, field.time, field.time + dt)
    stepper = _StrangStepper(field.grid, profile, dt)
    values = stepper.run(field.values.copy(), field.time, 1)
    advanced = PhaseSpaceField(field.grid, values, field.time + dt)
    ring = outer_ring_mass(advanced)
    if ring > get_settings().boundary_mass:
        logger.warning("Outer-ring mass %.3e exceeds the threshold at t=%.6g", ring, advanced.time)
    return advanced


def step_count(t0: float, t1: float, dt: float) -> int:
    """Number of steps of size dt from t0 to t1; dt must divide the interval."""
    if not (dt > 0 and math.isfinite(dt)):
        raise PropagationError(f"dt must be positive, got {dt}")
    span = t1 - t0
    if not span > 0:
        raise PropagationError(f"t1={t1} must exceed the field time {t0}")
    steps = max(1, round(span / dt))
    if abs(steps * dt - span) > STEP_TOLERANCE * span:
        raise PropagationError(f"dt={dt!r} does not divide the interval [{t0}, {t1}]")
    return steps


def norm_observer(field: PhaseSpaceField) -> dict[str, float]:
    return {"norm": norm(field)}


def moment_observer(field: PhaseSpaceField) -> dict[str, float]:
    m = moments(field)
    return {"mean_x": m.mean_x, "mean_p": m.mean_p}


@dataclass
class PropagationResult:
    field: PhaseSpaceField
    observations: pd.DataFrame
    steps: int
    dt: float
    max_outer_ring_mass: float

    @property
    def times(self) -> np.ndarray:
        return self.observations["t"].to_numpy()


def observation_indices(steps: int, stride: int) -> list[int]:
    """Step indices at which observers run: 0, stride, 2*stride, ..., and the final step."""
    if stride < 1:
        raise PropagationError(f"observe stride must be at least 1, got {stride}")
    indices = list(range(0, steps + 1, stride))
    if indices[-1] != steps:
        indices.append(steps)
    return indices


def _observe(observers: Sequence[Observer], field: PhaseSpaceField) -> dict[str, float]:
    row: dict[str, float] = {"t": field.time}
    snapshot = field.snapshot()
    for observer in observers:
        name = getattr(observer, "__name__", type(observer).__name__)
        try:
            row.update(observer(snapshot))
        except Exception as exc:
            raise PropagationError(f"observer {name} failed at t={field.time:.12g}: {exc}") from exc
    return row


def propagate(
    field0: PhaseSpaceField,
    profile: StiffnessProfile,
    t1: float,
    dt: float,
    observers: Sequence[Observer] = (norm_observer,),
    *,
    stride: int = 1,
) -> PropagationResult:
    """Repeated Strang steps from field0.time to t1, observed every ``stride`` steps."""
    t0 = field0.time
    steps = step_count(t0, t1, dt)
    dt = (t1 - t0) / steps
    require_coverage(profile, t0, t1)
    threshold = get_settings().boundary_mass

    stepper = _StrangStepper(field0.grid, profile, dt)
    marks = observation_indices(steps, stride)
    logger.info(
        "Propagating %s from t=%g to t=%g: %d steps of %.3e, %d observations",
        field0.grid.describe(), t0, t1, steps, dt, len(marks),
    )

    current = field0.copy()
    rows = [_observe(observers, current)]
    max_ring = outer_ring_mass(current)
    warned = False
    for previous, mark in zip(marks, marks[1:]):
        values = stepper.run(current.values, t0 + previous * dt, mark - previous)
        time = t1 if mark == steps else t0 + mark * dt
        current = PhaseSpaceField(field0.grid, values, time)
        ring = outer_ring_mass(current)
        max_ring = max(max_ring, ring)
        if ring > threshold and not warned:
            logger.warning("Outer-ring mass %.3e exceeds %.1e at t=%.6g", ring, threshold, time)
            warned = True
        rows.append(_observe(observers, current))

    logger.info("Propagation finished at t=%g (max outer-ring mass %.2e)", current.time, max_ring)
    return PropagationResult(
        field=current,
        observations=pd.DataFrame(rows),
        steps=steps,
        dt=dt,
        max_outer_ring_mass=max_ring,
    )
