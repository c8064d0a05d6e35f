# services/outcome.py
# What a command hands back to the runner: assertions, metrics, artifacts.

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from schemas import AssertionResult


@dataclass
class CommandOutcome:
    assertions: list[AssertionResult] = field(default_factory=list)
    metrics: dict[str, Any] = field(default_factory=dict)
    artifacts: list[Path] = field(default_factory=list)
    rng: str | None = None

    def check_at_most(self, name: str, value: float, threshold: float, detail: str | None = None) -> bool:
        """Record ``value <= threshold``; NaN and inf fail."""
        passed = bool(math.isfinite(value) and value <= threshold)
        self.assertions.append(
            AssertionResult(name=name, passed=passed, value=_plain(value), threshold=threshold, detail=detail)
        )
        return passed

    def check_true(self, name: str, passed: bool, detail: str | None = None, value: Any = None) -> bool:
        self.assertions.append(AssertionResult(name=name, passed=bool(passed), value=value, detail=detail))
        return bool(passed)


def _plain(value: float) -> float | str:
    return float(value) if math.isfinite(value) else str(value)
