# weyl/identities.py
# Catalogue of exact operator identities checked by the symcheck command.

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

from errors import LabError
from weyl.expressions import FrameAmbiguityError, parse_operator
from weyl.frames import Frame
from weyl.operators import (
    InvariantForm,
    build_hamiltonian,
    build_invariant,
    build_subhamiltonian,
    invariance_defect,
)
from weyl.polynomial import FrameMismatchError, WeylPolynomial, adjoint
from weyl.substitutions import substitute_linear, verify_canonical

logger = logging.getLogger(__name__)


class UnknownIdentityError(LabError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown identity"


@dataclass(frozen=True, slots=True)
class SymbolicCheck:
    name: str
    passed: bool
    defect: str
    description: str = ""

    def to_row(self) -> dict[str, object]:
        return {"identity": self.name, "passed": self.passed, "defect": self.defect, "description": self.description}


def _polynomial_check(name: str, description: str, defect: WeylPolynomial) -> SymbolicCheck:
    return SymbolicCheck(name=name, passed=defect.is_zero(), defect=defect.to_text(), description=description)


def _canonical_check(name: str, description: str, *substitutions: str) -> SymbolicCheck:
    reports = [verify_canonical(substitution) for substitution in substitutions]
    failed = [report for report in reports if not report.passed]
    defect = "; ".join(f"{report.substitution}: {report.to_text()}" for report in failed) or "0"
    return SymbolicCheck(name=name, passed=not failed, defect=defect, description=description)


def _hermiticity() -> SymbolicCheck:
    defects = []
    for form in (InvariantForm.TOTAL_QQPP, InvariantForm.TOTAL_XLAMBDA, InvariantForm.TOTAL_FRAME12):
        invariant = build_invariant(form)
        difference = adjoint(invariant) - invariant
        if not difference.is_zero():
            defects.append(f"{form.value}: {difference.to_text()}")
    return SymbolicCheck(
        name="hermiticity",
        passed=not defects,
        defect="; ".join(defects) or "0",
        description="adjoint of every total invariant form equals the form",
    )


IDENTITIES: dict[str, Callable[[], SymbolicCheck]] = {
    "eq10-I1": lambda: _polynomial_check(
        "eq10-I1",
        "dI1/dt - i[I1, H1] vanishes after Ermakov reduction",
        invariance_defect(build_invariant(InvariantForm.I1), build_subhamiltonian(1), +1),
    ),
    "eq9-I2": lambda: _polynomial_check(
        "eq9-I2",
        "dI2/dt + i[I2, H2] vanishes after Ermakov reduction",
        invariance_defect(build_invariant(InvariantForm.I2), build_subhamiltonian(2), -1),
    ),
    "eq8-total": lambda: _polynomial_check(
        "eq8-total",
        "total invariant is conserved by the KvN Hamiltonian",
        invariance_defect(build_invariant(InvariantForm.TOTAL_QQPP), build_hamiltonian(Frame.KVN), +1),
    ),
    "eq8-liouville": lambda: _polynomial_check(
        "eq8-liouville",
        "total invariant is conserved by the Liouville generator",
        invariance_defect(build_invariant(InvariantForm.TOTAL_XLAMBDA), build_hamiltonian(Frame.LIOUVILLE), +1),
    ),
    "eq7-split": lambda: _polynomial_check(
        "eq7-split",
        "rotated KvN Hamiltonian equals H1 - H2",
        substitute_linear(build_hamiltonian(Frame.KVN), "canonical-rotation") - build_hamiltonian(Frame.SPLIT),
    ),
    "canonical-rotation": lambda: _canonical_check(
        "canonical-rotation",
        "rotation and its inverse preserve every commutator",
        "canonical-rotation",
        "canonical-rotation-inverse",
    ),
    "canonical-relabel": lambda: _canonical_check(
        "canonical-relabel",
        "relabeling and its inverse preserve every commutator",
        "kvn-relabel",
        "kvn-relabel-inverse",
    ),
    "form-equality-15": lambda: _polynomial_check(
        "form-equality-15",
        "I1 + I2 rotated back equals the KvN-frame invariant",
        substitute_linear(build_invariant(InvariantForm.TOTAL_FRAME12), "canonical-rotation-inverse")
        - build_invariant(InvariantForm.TOTAL_QQPP),
    ),
    "form-equality-16": lambda: _polynomial_check(
        "form-equality-16",
        "KvN-frame invariant relabeled equals the Liouville-frame invariant",
        substitute_linear(build_invariant(InvariantForm.TOTAL_QQPP), "kvn-relabel-inverse")
        - build_invariant(InvariantForm.TOTAL_XLAMBDA),
    ),
    "hermiticity": _hermiticity,
}


def run_identity(name: str) -> SymbolicCheck:
    try:
        check = IDENTITIES[name]
    except KeyError:
        raise UnknownIdentityError(
            f"Unknown identity {name!r}; known: {', '.join(IDENTITIES)}"
        ) from None
    result = check()
    logger.info("Identity %s: %s", name, "passed" if result.passed else f"FAILED ({result.defect})")
    return result


def run_all_identities() -> list[SymbolicCheck]:
    return [run_identity(name) for name in IDENTITIES]


def check_expressions(lhs: str, rhs: str, frame: Frame | str | None = None) -> SymbolicCheck:
    """Exact equality of two parsed expressions; a frameless side adopts the other's frame."""
    try:
        left = parse_operator(lhs, frame)
    except FrameAmbiguityError:
        right = parse_operator(rhs, frame)
        left = parse_operator(lhs, right.frame)
    else:
        right = parse_operator(rhs, frame if frame is not None else left.frame)
    if left.frame is not right.frame:
        raise FrameMismatchError(f"{lhs!r} and {rhs!r} live in different frames")
    difference = left - right
    return SymbolicCheck(
        name="custom",
        passed=difference.is_zero(),
        defect=difference.to_text(),
        description=f"{lhs} == {rhs}",
    )
