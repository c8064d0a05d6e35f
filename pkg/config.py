# config.py
# Centralized numerical settings. Every value has a default; a .env file or
# the process environment may override them.

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from pathlib import Path

from dotenv import load_dotenv

from errors import SettingsError

_BASE_DIR = Path(__file__).resolve().parent
load_dotenv(dotenv_path=_BASE_DIR / ".env")

logger = logging.getLogger(__name__)

_ENV_PREFIX = "KVN_LAB_"


def _read_float(name: str, default: float, *, positive: bool = True) -> float:
    raw_value = os.getenv(f"{_ENV_PREFIX}{name}")
    if raw_value is None or not raw_value.strip():
        return default
    try:
        value = float(raw_value)
    except ValueError as exc:
        raise SettingsError(f"{_ENV_PREFIX}{name} must be a number, got {raw_value!r}") from exc
    if positive and not value > 0:
        raise SettingsError(f"{_ENV_PREFIX}{name} must be positive, got {value}")
    return value


def _read_int(name: str, default: int) -> int:
    raw_value = os.getenv(f"{_ENV_PREFIX}{name}")
    if raw_value is None or not raw_value.strip():
        return default
    try:
        value = int(raw_value)
    except ValueError as exc:
        raise SettingsError(f"{_ENV_PREFIX}{name} must be an integer, got {raw_value!r}") from exc
    if value < 1:
        raise SettingsError(f"{_ENV_PREFIX}{name} must be at least 1, got {value}")
    return value


@dataclass(frozen=True)
class LabSettings:
    """Tolerances and guards shared by the solvers."""

    rtol: float = 1e-12
    atol: float = 1e-14
    rho_min: float = 1e-6
    wronskian_floor: float = 1e-12
    boundary_mass: float = 1e-8
    gaussian_tail: float = 1e-12
    fft_workers: int = 1
    log_level: str = "INFO"

    @classmethod
    def from_env(cls) -> LabSettings:
        log_level = os.getenv(f"{_ENV_PREFIX}LOG_LEVEL", "INFO").strip().upper() or "INFO"
        if not isinstance(logging.getLevelName(log_level), int):
            raise SettingsError(f"{_ENV_PREFIX}LOG_LEVEL is not a logging level: {log_level!r}")

        return cls(
            rtol=_read_float("RTOL", cls.rtol),
            atol=_read_float("ATOL", cls.atol),
            rho_min=_read_float("RHO_MIN", cls.rho_min),
            wronskian_floor=_read_float("WRONSKIAN_FLOOR", cls.wronskian_floor),
            boundary_mass=_read_float("BOUNDARY_MASS", cls.boundary_mass),
            gaussian_tail=_read_float("GAUSSIAN_TAIL", cls.gaussian_tail),
            fft_workers=_read_int("FFT_WORKERS", cls.fft_workers),
            log_level=log_level,
        )


_CACHED_SETTINGS: LabSettings | None = None


def get_settings() -> LabSettings:
    global _CACHED_SETTINGS
    if _CACHED_SETTINGS is None:
        _CACHED_SETTINGS = LabSettings.from_env()
        logger.debug("Loaded lab settings: %s", _CACHED_SETTINGS)
    return _CACHED_SETTINGS


def reset_settings() -> None:
    """Drop the cached settings so the next access re-reads the environment."""
    global _CACHED_SETTINGS
    _CACHED_SETTINGS = None
