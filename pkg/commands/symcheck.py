# commands/symcheck.py
# Exact checks of operator identities in the normal-ordered Weyl algebra.

from __future__ import annotations

import logging
from pathlib import Path

import pandas as pd

from schemas import SymcheckConfig
from services.outcome import CommandOutcome
from utils import write_csv
from weyl.identities import SymbolicCheck, check_expressions, run_all_identities, run_identity

logger = logging.getLogger(__name__)

RESULTS_FILE = "symcheck.csv"


def _collect(config: SymcheckConfig) -> list[SymbolicCheck]:
    if config.identity == "custom":
        lhs, rhs = config.expressions
        return [check_expressions(lhs, rhs, config.frame)]
    if config.identity == "all":
        return run_all_identities()
    return [run_identity(config.identity)]


def execute(config: SymcheckConfig, out_dir: Path) -> CommandOutcome:
    outcome = CommandOutcome()
    checks = _collect(config)

    frame = pd.DataFrame([check.to_row() for check in checks], columns=["identity", "passed", "defect", "description"])
    outcome.artifacts.append(write_csv(frame, out_dir / RESULTS_FILE))

    for check in checks:
        outcome.check_true(f"identity-{check.name}", check.passed, detail=f"defect: {check.defect}")
        logger.info("%s: defect %s", check.name, check.defect)
    outcome.metrics.update(
        checks=len(checks),
        failed=sum(1 for check in checks if not check.passed),
        defects={check.name: check.defect for check in checks},
    )
    return outcome
