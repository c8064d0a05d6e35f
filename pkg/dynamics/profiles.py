# dynamics/profiles.py
# ==========================================================
# Time-dependent stiffness k(t) of the oscillator
# Four kinds share one JSON shape: {"kind": ..., <parameters>}
# ==========================================================

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Annotated, Any, Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError, field_validator

from errors import LabError


class ProfileError(LabError, ValueError):
    """Raised when a profile description is malformed."""


class ProfileDomainError(ProfileError):
    """Raised when a profile is evaluated outside its declared domain."""


@dataclass(frozen=True, slots=True)
class ClassicalState:
    """Point (q, p) of the oscillator's phase space, m=1 and ħ=1."""

    q: float
    p: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.q) and math.isfinite(self.p)):
            raise ValueError(f"Classical state must be finite, got q={self.q}, p={self.p}")


class _ProfileBase(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    @property
    def domain(self) -> tuple[float, float]:
        return (-math.inf, math.inf)

    def evaluate(self, t: float | np.ndarray) -> float | np.ndarray:
        """Return k(t) for a scalar time or an array of times."""
        times = np.asarray(t, dtype=float)
        lo, hi = self.domain
        if times.size and (np.any(times < lo) or np.any(times > hi) or np.any(np.isnan(times))):
            bad = times[(times < lo) | (times > hi) | np.isnan(times)]
            raise ProfileDomainError(
                f"{self.kind} profile is defined on [{lo}, {hi}]; cannot evaluate at t={float(bad.flat[0])}"
            )
        values = self._evaluate(times)
        if values.ndim == 0:
            return float(values)
        return values

    def _evaluate(self, times: np.ndarray) -> np.ndarray:
        raise NotImplementedError("Profiles implement _evaluate")


class ConstantProfile(_ProfileBase):
    kind: Literal["constant"] = "constant"
    k0: float

    def _evaluate(self, times: np.ndarray) -> np.ndarray:
        return np.full_like(times, self.k0)


class MathieuProfile(_ProfileBase):
    """k(t) = a + q·cos(ω t)."""

    kind: Literal["mathieu"] = "mathieu"
    a: float
    q: float
    omega: float

    def _evaluate(self, times: np.ndarray) -> np.ndarray:
        return self.a + self.q * np.cos(self.omega * times)


class TableProfile(_ProfileBase):
    """Piecewise-linear interpolation of sorted (t, k) samples; no extrapolation."""

    kind: Literal["table"] = "table"
    points: tuple[tuple[float, float], ...]

    @field_validator("points")
    @classmethod
    def _check_points(cls, points: tuple[tuple[float, float], ...]) -> tuple[tuple[float, float], ...]:
        if len(points) < 2:
            raise ValueError("table profile needs at least 2 points")
        times = [t for t, _ in points]
        if any(not math.isfinite(t) or not math.isfinite(k) for t, k in points):
            raise ValueError("table profile points must be finite")
        if any(later <= earlier for earlier, later in zip(times, times[1:])):
            raise ValueError("table profile times must be strictly increasing")
        return points

    @property
    def domain(self) -> tuple[float, float]:
        return (self.points[0][0], self.points[-1][0])

    def _evaluate(self, times: np.ndarray) -> np.ndarray:
        knots = np.array([t for t, _ in self.points])
        values = np.array([k for _, k in self.points])
        return np.asarray(np.interp(times, knots, values))


class PolynomialProfile(_ProfileBase):
    """k(t) = c0 + c1·t + c2·t² + ..."""

    kind: Literal["polynomial"] = "polynomial"
    coefficients: tuple[float, ...]

    @field_validator("coefficients")
    @classmethod
    def _check_coefficients(cls, coefficients: tuple[float, ...]) -> tuple[float, ...]:
        if not coefficients:
            raise ValueError("polynomial profile needs at least one coefficient")
        if any(not math.isfinite(c) for c in coefficients):
            raise ValueError("polynomial coefficients must be finite")
        return coefficients

    def _evaluate(self, times: np.ndarray) -> np.ndarray:
        return np.asarray(np.polynomial.polynomial.polyval(times, self.coefficients))


StiffnessProfile = Annotated[
    Union[ConstantProfile, MathieuProfile, TableProfile, PolynomialProfile],
    Field(discriminator="kind"),
]

PROFILE_ADAPTER: TypeAdapter[StiffnessProfile] = TypeAdapter(StiffnessProfile)


def eval_stiffness(profile: StiffnessProfile, t: float) -> float:
    """k(t) of the given profile; pure in (profile, t)."""
    return float(profile.evaluate(float(t)))


def profile_from_dict(payload: dict[str, Any]) -> StiffnessProfile:
    try:
        return PROFILE_ADAPTER.validate_python(payload)
    except ValidationError as exc:
        raise ProfileError(f"Invalid stiffness profile: {exc}") from exc


def profile_from_json(text: str) -> StiffnessProfile:
    try:
        return PROFILE_ADAPTER.validate_json(text)
    except ValidationError as exc:
        raise ProfileError(f"Invalid stiffness profile: {exc}") from exc


def profile_to_dict(profile: StiffnessProfile) -> dict[str, Any]:
    return PROFILE_ADAPTER.dump_python(profile, mode="json")


def with_overrides(profile: StiffnessProfile, overrides: dict[str, Any]) -> StiffnessProfile:
    """Copy of ``profile`` with some parameters replaced, re-validated."""
    if not overrides:
        return profile
    return profile_from_dict({**profile_to_dict(profile), **overrides})


def covers(profile: StiffnessProfile, start: float, stop: float) -> bool:
    lo, hi = profile.domain
    return lo <= start and stop <= hi
