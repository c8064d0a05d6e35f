# middleware/error_handler.py
# Run guard: whatever a command does, the output directory ends up with
# either a passing summary or a FAILED marker, and the exit status agrees.

from __future__ import annotations

import logging
from pathlib import Path
from typing import Callable

from schemas import RunSummary

logger = logging.getLogger(__name__)

FAILED_MARKER = "FAILED"

EXIT_OK = 0
EXIT_ASSERTIONS_FAILED = 1
EXIT_ERROR = 2


def write_failed_marker(out_dir: str | Path, reason: str) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    marker = out_dir / FAILED_MARKER
    marker.write_text(reason.rstrip() + "\n", encoding="utf-8")
    return marker


def clear_failed_marker(out_dir: str | Path) -> None:
    """Remove a marker left behind by an earlier run into the same directory."""
    (Path(out_dir) / FAILED_MARKER).unlink(missing_ok=True)


def failed_assertions_text(summary: RunSummary) -> str:
    lines = [f"{summary.command}: assertions failed"]
    for assertion in summary.assertions:
        if not assertion.passed:
            lines.append(f"  {assertion.name}: value={assertion.value} threshold={assertion.threshold}")
    return "\n".join(lines)


def guarded_run(action: Callable[[], RunSummary], out_dir: str | Path) -> int:
    """
    Execute ``action`` and translate its result into an exit status.

    Artifacts written before an exception are kept. The FAILED marker is
    present exactly when the returned status is non-zero.
    """
    clear_failed_marker(out_dir)
    try:
        summary = action()
    except KeyboardInterrupt:
        write_failed_marker(out_dir, "interrupted")
        raise
    except Exception as exc:
        # Log the full error with traceback for debugging
        logger.exception("Run aborted: %s", exc)
        write_failed_marker(out_dir, f"{type(exc).__name__}: {exc}")
        return EXIT_ERROR

    if not summary.passed:
        write_failed_marker(out_dir, failed_assertions_text(summary))
        return EXIT_ASSERTIONS_FAILED
    return EXIT_OK
