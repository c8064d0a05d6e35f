# schemas.py
# ==========================================================
# Pydantic schemas for run configurations and run summaries
# One config model per command; unknown keys are rejected everywhere
# ==========================================================

from __future__ import annotations

from typing import Annotated, Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, field_validator, model_validator

from dynamics.profiles import ConstantProfile, MathieuProfile, StiffnessProfile
from weyl.identities import IDENTITIES


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


# ---------------------- Shared blocks ----------------------
class GridConfig(_Strict):
    n_x: int = Field(default=256, alias="nx")
    n_p: int = Field(default=256, alias="np")
    l_x: float = Field(default=8.0, alias="lx", gt=0)
    l_p: float = Field(default=8.0, alias="lp", gt=0)


class InitialConfig(_Strict):
    x0: float = 0.0
    p0: float = 0.0
    sx: float = Field(default=1.0, gt=0)
    sp: float = Field(default=1.0, gt=0)


class RhoCheckpoint(_Strict):
    t: float
    rho: float
    tolerance: float = Field(default=1e-8, gt=0)


# ---------------------- Command configs ----------------------
class ErmakovConfig(_Strict):
    command: Literal["ermakov"] = "ermakov"
    profile: StiffnessProfile = ConstantProfile(k0=1.0)
    rho0: float = Field(default=1.0, gt=0)
    rhodot0: float = 0.0
    t0: float = 0.0
    t1: float = 20.0
    samples: int = Field(default=2001, ge=2)
    method: Literal["direct", "pinney", "both"] = "both"
    pinney_tolerance: float = Field(default=1e-8, gt=0)
    stationary_tolerance: float = Field(default=1e-9, gt=0)
    residual_tolerance: float = Field(default=1e-3, gt=0)
    checkpoints: list[RhoCheckpoint] = Field(default_factory=list)


class ClassicalConfig(_Strict):
    command: Literal["classical"] = "classical"
    profile: StiffnessProfile = MathieuProfile(a=1.0, q=0.5, omega=2.0)
    rho0: float = Field(default=1.0, gt=0)
    rhodot0: float = 0.0
    t0: float = 0.0
    t1: float = 20.0
    samples: int = Field(default=2001, ge=2)
    seed: int = Field(default=42, ge=0)
    count: int = Field(default=100, ge=1)
    box: float = Field(default=2.0, gt=0, description="states are drawn from [-box, box]^2")
    include_origin: bool = False
    drift_tolerance: float = Field(default=1e-7, gt=0)


class KvnConfig(_Strict):
    command: Literal["kvn"] = "kvn"
    profile: StiffnessProfile = ConstantProfile(k0=1.0)
    grid: GridConfig = Field(default_factory=GridConfig)
    initial: InitialConfig = Field(default_factory=InitialConfig)
    rho0: float = Field(default=1.0, gt=0)
    rhodot0: float = 0.0
    rho_equation: Literal["ermakov", "pinney", "linear-control"] = "ermakov"
    t0: float = 0.0
    t1: float = 10.0
    dt: float = Field(default=1e-3, gt=0)
    observe_stride: int = Field(default=100, ge=1)
    drift_tolerance_I: float = Field(default=1e-4, gt=0)
    drift_tolerance_var: float = Field(default=1e-3, gt=0)
    norm_tolerance: float = Field(default=1e-10, gt=0)
    expected_initial_I: Optional[float] = None
    initial_I_tolerance: float = Field(default=1e-6, gt=0)
    oracle_tolerance: Optional[float] = Field(default=None, gt=0)
    convergence_dt: Optional[float] = Field(
        default=None, gt=0, description="coarse step of the dt-halving check against the characteristics solution"
    )

    @model_validator(mode="after")
    def _check_span(self) -> KvnConfig:
        if not self.t1 > self.t0:
            raise ValueError("t1 must exceed t0")
        return self


class SymcheckConfig(_Strict):
    command: Literal["symcheck"] = "symcheck"
    identity: str = "eq8-total"
    expressions: Optional[list[str]] = None
    frame: Optional[Literal["qQpP", "frame12", "xlambda"]] = None

    @field_validator("identity")
    @classmethod
    def _check_identity(cls, identity: str) -> str:
        known = (*IDENTITIES, "all", "custom")
        if identity not in known:
            raise ValueError(f"unknown identity {identity!r}; known: {', '.join(known)}")
        return identity

    @model_validator(mode="after")
    def _check_custom(self) -> SymcheckConfig:
        if self.identity == "custom":
            if not self.expressions or len(self.expressions) != 2:
                raise ValueError("custom identities need exactly two expressions [lhs, rhs]")
        elif self.expressions is not None:
            raise ValueError("expressions are only accepted with identity 'custom'")
        return self


RunConfig = Annotated[
    Union[ErmakovConfig, ClassicalConfig, KvnConfig, SymcheckConfig],
    Field(discriminator="command"),
]

RUN_CONFIG_ADAPTER: TypeAdapter[RunConfig] = TypeAdapter(RunConfig)

COMMANDS = ("ermakov", "classical", "kvn", "symcheck")


# ---------------------- Summary schemas ----------------------
class AssertionResult(BaseModel):
    name: str
    passed: bool
    value: Optional[float | str] = None
    threshold: Optional[float] = None
    detail: Optional[str] = None


class RunSummary(BaseModel):
    command: str
    parameters: dict[str, Any]
    assertions: list[AssertionResult] = Field(default_factory=list)
    metrics: dict[str, Any] = Field(default_factory=dict)
    wall_clock_seconds: float = 0.0
    artifacts: list[str] = Field(default_factory=list)
    rng: Optional[str] = None
    status: Literal["passed", "failed"] = "passed"

    @property
    def passed(self) -> bool:
        return all(assertion.passed for assertion in self.assertions)
