# services/plotdata.py
# Plot-ready two-column CSV files. Nothing is rendered here; any plotting
# tool that reads CSV can use them directly.

from __future__ import annotations

import logging
from pathlib import Path

import pandas as pd

from dynamics.ermakov import ErmakovSolution
from errors import LabError
from invariant.study import InvariantReport
from utils import write_csv

logger = logging.getLogger(__name__)

INVARIANT_SERIES = "invariant_vs_t.csv"
NORM_SERIES = "norm_vs_t.csv"
RHO_SERIES = "rho_vs_t.csv"


class PlotDataError(LabError):
    """Raised when a report holds nothing to plot."""


def _series(times, values, name: str) -> pd.DataFrame:
    frame = pd.DataFrame({"t": times, name: values})
    if frame.empty:
        raise PlotDataError("no series")
    return frame


def emit_plotdata(report: InvariantReport | ErmakovSolution, out_dir: str | Path) -> list[Path]:
    """
    Write the time series of a completed report into out_dir.

    A KvN report yields ``invariant_vs_t.csv`` (t,expect_I) and
    ``norm_vs_t.csv`` (t,norm); an Ermakov solution yields ``rho_vs_t.csv``
    (t,rho). Raises PlotDataError("no series") for an empty report.
    """
    out_dir = Path(out_dir)
    if isinstance(report, InvariantReport):
        frames = {
            INVARIANT_SERIES: _series(report.times, report.expect_I, "expect_I"),
            NORM_SERIES: _series(report.times, report.norms, "norm"),
        }
    elif isinstance(report, ErmakovSolution):
        frames = {RHO_SERIES: _series(report.times, report.rho, "rho")}
    else:
        raise PlotDataError(f"no series: cannot plot a {type(report).__name__}")

    out_dir.mkdir(parents=True, exist_ok=True)
    written = [write_csv(frame, out_dir / name) for name, frame in frames.items()]
    logger.info("Wrote plot data: %s", ", ".join(path.name for path in written))
    return written
