# commands/kvn.py
# KvN propagation of a Gaussian with <I>, Var(I) and the norm tracked over time.

from __future__ import annotations

import logging
import math
from pathlib import Path

import numpy as np

from dynamics.profiles import StiffnessProfile
from invariant.study import run_invariant_study
from propagator.characteristics import solve_characteristics
from propagator.field import PhaseSpaceField
from propagator.split_step import propagate
from schemas import KvnConfig
from services.outcome import CommandOutcome
from services.plotdata import emit_plotdata
from utils import write_json

logger = logging.getLogger(__name__)

OBSERVABLES_FILE = "observables.csv"
REPORT_FILE = "invariant_report.csv"
REPORT_SUMMARY_FILE = "invariant_summary.json"

# error ratio expected from a second-order scheme when dt is halved
CONVERGENCE_RATIO = (3.5, 4.5)


def oracle_error(field0: PhaseSpaceField, profile: StiffnessProfile, t1: float, dt: float) -> float:
    """L-infinity gap between the split-step field and the characteristics solution at t1."""
    result = propagate(field0, profile, t1, dt, observers=(), stride=max(1, round((t1 - field0.time) / dt)))
    oracle = solve_characteristics(field0, profile, t1)
    return float(np.max(np.abs(result.field.values - oracle.values)))


def _check_convergence(config: KvnConfig, field0: PhaseSpaceField, outcome: CommandOutcome) -> None:
    coarse = oracle_error(field0, config.profile, config.t1, config.convergence_dt)
    fine = oracle_error(field0, config.profile, config.t1, config.convergence_dt / 2)
    ratio = coarse / fine if fine > 0 else math.inf
    outcome.metrics.update(convergence_linf_coarse=coarse, convergence_linf_fine=fine, convergence_ratio=ratio)
    low, high = CONVERGENCE_RATIO
    outcome.check_true(
        "second-order-convergence",
        math.isfinite(ratio) and low <= ratio <= high,
        f"oracle error {coarse:.3e} at dt={config.convergence_dt:g}, {fine:.3e} at dt/2; "
        f"ratio must lie in [{low}, {high}]",
        value=ratio if math.isfinite(ratio) else str(ratio),
    )


def execute(config: KvnConfig, out_dir: Path) -> CommandOutcome:
    outcome = CommandOutcome()
    report = run_invariant_study(config)

    outcome.artifacts.append(report.observables_to_csv(out_dir / OBSERVABLES_FILE))
    outcome.artifacts.append(report.to_csv(out_dir / REPORT_FILE))
    outcome.artifacts.append(write_json(out_dir / REPORT_SUMMARY_FILE, report.summary()))
    outcome.artifacts.extend(emit_plotdata(report, out_dir))
    outcome.metrics.update(report.summary())

    outcome.check_at_most(
        "norm-conservation", report.max_norm_error, config.norm_tolerance, "max | ||psi(t)|| - 1 |"
    )
    outcome.check_at_most(
        "invariant-expectation-drift", report.max_rel_drift_I, config.drift_tolerance_I,
        "max relative drift of <I>",
    )
    outcome.check_at_most(
        "invariant-variance-drift", report.max_rel_drift_var, config.drift_tolerance_var,
        "max drift of Var(I), relative unless Var(I) starts at roundoff level",
    )

    if config.expected_initial_I is not None:
        initial = float(report.expect_I[0])
        outcome.check_at_most(
            "initial-invariant", abs(initial - config.expected_initial_I), config.initial_I_tolerance,
            f"<I>(t0) = {initial:.15g}, expected {config.expected_initial_I:.15g}",
        )

    if config.oracle_tolerance is not None:
        oracle = solve_characteristics(report.initial_field, config.profile, config.t1)
        error = float(np.max(np.abs(report.final_field.values - oracle.values)))
        outcome.metrics["oracle_linf"] = error
        outcome.check_at_most(
            "characteristics-oracle", error, config.oracle_tolerance,
            f"L-infinity gap to the characteristics solution at t={config.t1:.12g}",
        )

    if config.convergence_dt is not None:
        _check_convergence(config, report.initial_field, outcome)

    logger.info(
        "KvN run: drift(I)=%.3e, drift(Var)=%.3e, norm error=%.3e",
        report.max_rel_drift_I, report.max_rel_drift_var, report.max_norm_error,
    )
    return outcome
