# services/runner.py
# Reads a run configuration, dispatches it to its command and writes the
# summary that decides the exit status.

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from pydantic import ValidationError

import commands
from dynamics.profiles import profile_to_dict
from errors import LabError
from schemas import RUN_CONFIG_ADAPTER, RunConfig, RunSummary
from utils import read_json_source, write_json

logger = logging.getLogger(__name__)

SUMMARY_FILE = "summary.json"


class ConfigError(LabError):
    """Raised when a run configuration cannot be read or validated."""

    def __init__(self, problems: list[str]) -> None:
        super().__init__("Invalid run configuration:\n  " + "\n  ".join(problems))
        self.problems = problems


@dataclass
class ConfigOverrides:
    """Command-line values that replace or extend the JSON document."""

    seed: int | None = None
    dt: float | None = None
    profile_params: dict[str, Any] = field(default_factory=dict)

    def apply(self, payload: dict[str, Any]) -> dict[str, Any]:
        payload = dict(payload)
        command = payload.get("command")
        for flag, value, owner in (("seed", self.seed, "classical"), ("dt", self.dt, "kvn")):
            if value is None:
                continue
            if command != owner:
                raise ConfigError([f"$.{flag}: --{flag} only applies to the {owner} command, not {command!r}"])
            payload[flag] = value
        if self.profile_params:
            profile = payload.get("profile")
            if not isinstance(profile, dict):
                raise ConfigError(["$.profile: --profile-param needs a profile block in the config"])
            payload["profile"] = {**profile, **self.profile_params}
        return payload


def parse_profile_param(text: str) -> tuple[str, Any]:
    """NAME=VALUE with VALUE read as JSON when possible (numbers, lists)."""
    name, separator, raw_value = text.partition("=")
    if not separator or not name.strip():
        raise ConfigError([f"--profile-param expects NAME=VALUE, got {text!r}"])
    try:
        value = json.loads(raw_value)
    except json.JSONDecodeError:
        value = raw_value
    return name.strip(), value


def _format_validation_error(exc: ValidationError, command: str | None) -> list[str]:
    problems = []
    for error in exc.errors():
        location = list(error.get("loc", ()))
        # discriminated unions prefix the location with the tag
        if location and command is not None and location[0] == command:
            location = location[1:]
        path = "$" + "".join(f"[{part}]" if isinstance(part, int) else f".{part}" for part in location)
        problems.append(f"{path}: {error.get('msg', 'invalid value')}")
    return problems


def validate_config(payload: Any, *, command: str | None = None, overrides: ConfigOverrides | None = None) -> RunConfig:
    if not isinstance(payload, dict):
        raise ConfigError([f"$: expected a JSON object, got {type(payload).__name__}"])
    payload = dict(payload)
    if command is not None:
        declared = payload.setdefault("command", command)
        if declared != command:
            raise ConfigError([f"$.command: config is for {declared!r}, not {command!r}"])
    if overrides is not None:
        if overrides.profile_params and "profile" not in payload:
            # --profile-param tweaks the command's default profile
            defaults = validate_config(payload, command=command)
            if hasattr(defaults, "profile"):
                payload["profile"] = profile_to_dict(defaults.profile)
        payload = overrides.apply(payload)
    try:
        return RUN_CONFIG_ADAPTER.validate_python(payload)
    except ValidationError as exc:
        raise ConfigError(_format_validation_error(exc, payload.get("command"))) from exc


def parse_config(
    source: str | Path | None,
    *,
    command: str | None = None,
    overrides: ConfigOverrides | None = None,
) -> RunConfig:
    """
    Read and validate a run configuration from a path, or stdin for "-".

    ``source`` may be None when the command alone is enough (all defaults).
    """
    if source is None:
        payload: Any = {}
    else:
        try:
            payload = read_json_source(source)
        except OSError as exc:
            raise ConfigError([f"$: cannot read {source}: {exc}"]) from exc
        except json.JSONDecodeError as exc:
            raise ConfigError([f"$: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"]) from exc
    return validate_config(payload, command=command, overrides=overrides)


def dump_config(config: RunConfig) -> str:
    return RUN_CONFIG_ADAPTER.dump_json(config, by_alias=True, indent=2).decode("utf-8")


def run(config: RunConfig, out_dir: str | Path) -> RunSummary:
    """
    Execute one command and write its artifacts and summary.json into out_dir.

    The summary's status is "failed" when any assertion fails; exceptions
    propagate to the caller's run guard.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / SUMMARY_FILE).unlink(missing_ok=True)
    module = commands.command_module(config.command)

    logger.info("Running %s into %s", config.command, out_dir)
    started = time.perf_counter()
    outcome = module.execute(config, out_dir)
    elapsed = time.perf_counter() - started

    summary = RunSummary(
        command=config.command,
        parameters=json.loads(dump_config(config)),
        assertions=outcome.assertions,
        metrics=outcome.metrics,
        wall_clock_seconds=elapsed,
        artifacts=sorted({path.name for path in outcome.artifacts} | {SUMMARY_FILE}),
        rng=outcome.rng,
    )
    summary.status = "passed" if summary.passed else "failed"
    write_summary(summary, out_dir)

    for assertion in summary.assertions:
        if not assertion.passed:
            logger.warning("Assertion %s failed (value=%s, threshold=%s)", assertion.name, assertion.value, assertion.threshold)
    logger.info("%s finished in %.2fs: %s", config.command, elapsed, summary.status)
    return summary


def write_summary(summary: RunSummary, out_dir: Path) -> Path:
    return write_json(out_dir / SUMMARY_FILE, summary.model_dump(mode="python"))


def read_summary(out_dir: str | Path) -> RunSummary | None:
    """The summary of a finished run, or None when the run never got that far."""
    path = Path(out_dir) / SUMMARY_FILE
    if not path.is_file():
        return None
    return RunSummary.model_validate_json(path.read_text(encoding="utf-8"))
