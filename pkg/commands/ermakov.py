# commands/ermakov.py
# Solve the Ermakov equation for rho(t) and check it against itself and
# against known closed forms.

from __future__ import annotations

import logging
import math
from pathlib import Path

import numpy as np

from dynamics.ermakov import (
    ErmakovSolution,
    ermakov_residual,
    relative_ermakov_residual,
    solve_ermakov_direct,
    solve_ermakov_pinney,
)
from dynamics.profiles import ConstantProfile
from schemas import ErmakovConfig
from services.outcome import CommandOutcome
from services.plotdata import emit_plotdata

logger = logging.getLogger(__name__)

SOLUTION_FILE = "ermakov.csv"


def equilibrium_rho(config: ErmakovConfig) -> float | None:
    """rho = k0^(-1/4) when the run starts at rest on the constant-k equilibrium."""
    profile = config.profile
    if not isinstance(profile, ConstantProfile) or profile.k0 <= 0 or config.rhodot0 != 0:
        return None
    rho_eq = profile.k0 ** -0.25
    return rho_eq if math.isclose(config.rho0, rho_eq, rel_tol=1e-12) else None


def execute(config: ErmakovConfig, out_dir: Path) -> CommandOutcome:
    outcome = CommandOutcome()
    times = np.linspace(config.t0, config.t1, config.samples)

    direct = pinney = None
    if config.method in ("direct", "both"):
        direct = solve_ermakov_direct(config.profile, config.rho0, config.rhodot0, times)
    if config.method in ("pinney", "both"):
        pinney = solve_ermakov_pinney(config.profile, config.rho0, config.rhodot0, times)
    primary: ErmakovSolution = direct if direct is not None else pinney

    outcome.artifacts.append(primary.to_csv(out_dir / SOLUTION_FILE))
    outcome.artifacts.extend(emit_plotdata(primary, out_dir))

    has_stencil = len(primary) >= 5
    max_residual = float(np.max(ermakov_residual(primary))) if has_stencil else math.nan
    max_relative = float(np.max(relative_ermakov_residual(primary))) if has_stencil else math.nan
    outcome.metrics.update(
        method=primary.method,
        max_residual=max_residual,
        max_relative_residual=max_relative,
        min_rho=float(np.min(primary.rho)),
        max_rho=float(np.max(primary.rho)),
    )
    if has_stencil:
        outcome.check_at_most(
            "ermakov-residual", max_relative, config.residual_tolerance,
            "finite-difference residual of rho'' + k rho - rho^-3 over |rho^-3| + |k| rho",
        )

    if direct is not None and pinney is not None:
        gap = float(np.max(np.abs(direct.rho - pinney.rho)))
        outcome.metrics["max_pinney_gap"] = gap
        outcome.check_at_most(
            "pinney-vs-direct", gap, config.pinney_tolerance,
            "max |rho_pinney - rho_direct| over the time grid",
        )

    rho_eq = equilibrium_rho(config)
    if rho_eq is not None:
        deviation = float(np.max(np.abs(primary.rho - rho_eq)))
        outcome.metrics["max_equilibrium_deviation"] = deviation
        outcome.check_at_most(
            "stationary-equilibrium", deviation, config.stationary_tolerance,
            f"rho stays at k0^(-1/4) = {rho_eq:.12g}",
        )

    for checkpoint in config.checkpoints:
        name = f"checkpoint-t={checkpoint.t:.12g}"
        if not primary.times[0] <= checkpoint.t <= primary.times[-1]:
            outcome.check_true(name, False, f"t={checkpoint.t} lies outside [{config.t0}, {config.t1}]")
            continue
        rho_at, _ = primary.sample(checkpoint.t)
        outcome.check_at_most(
            name, abs(rho_at - checkpoint.rho), checkpoint.tolerance,
            f"rho({checkpoint.t:.12g}) = {rho_at:.15g}, expected {checkpoint.rho:.15g}",
        )

    logger.info("Ermakov run: min rho=%.6g, max residual=%.3e", outcome.metrics["min_rho"], max_residual)
    return outcome
