# weyl/substitutions.py
# Linear frame-to-frame substitutions: the relabeling that exposes the KvN
# variables of the Liouville frame and the rotation that splits the KvN
# Hamiltonian into two oscillators.

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Mapping

from errors import LabError
from weyl.coefficients import Coefficient
from weyl.frames import Frame, commutation_value
from weyl.polynomial import FrameMismatchError, WeylPolynomial, commutator

logger = logging.getLogger(__name__)


class UnknownSubstitutionError(LabError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown substitution"


@dataclass(frozen=True)
class LinearSubstitution:
    """Replaces every ``source`` variable by a linear polynomial in ``target``."""

    name: str
    source: Frame
    target: Frame
    images: Mapping[str, WeylPolynomial]
    inverse_name: str | None = None
    _power_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        missing = [name for name in self.source.variables if name not in self.images]
        if missing:
            raise ValueError(f"substitution {self.name!r} has no image for {', '.join(missing)}")
        for name, image in self.images.items():
            if image.frame is not self.target:
                raise FrameMismatchError(
                    f"image of {name} in {self.name!r} lives in {image.frame.value}, expected {self.target.value}"
                )

    def image_power(self, name: str, power: int) -> WeylPolynomial:
        key = (name, power)
        if key not in self._power_cache:
            self._power_cache[key] = self.images[name] ** power
        return self._power_cache[key]


def linear_combination(frame: Frame, weights: Mapping[str, Coefficient]) -> WeylPolynomial:
    result = WeylPolynomial.zero(frame)
    for name, weight in weights.items():
        result = result + WeylPolynomial.generator(frame, name).scale(weight)
    return result


def substitute_linear(poly: WeylPolynomial, substitution: LinearSubstitution | str) -> WeylPolynomial:
    """Rewrite ``poly`` in the substitution's target frame, re-normal-ordered."""
    if isinstance(substitution, str):
        substitution = get_substitution(substitution)
    if poly.frame is not substitution.source:
        raise FrameMismatchError(
            f"{substitution.name!r} expects a {substitution.source.value} polynomial, got {poly.frame.value}"
        )

    result = WeylPolynomial.zero(substitution.target)
    for monomial, coefficient in poly.items():
        # monomials are ordered products in the source frame's variable order
        image = WeylPolynomial.constant(substitution.target, coefficient)
        for name, power in zip(substitution.source.variables, monomial):
            if power:
                image = image * substitution.image_power(name, power)
        result = result + image
    return result


# ============================================================
# Canonicality check
# ============================================================

@dataclass(frozen=True, slots=True)
class CommutatorDefect:
    left: str
    right: str
    expected: str
    actual: str

    def to_text(self) -> str:
        return f"[{self.left},{self.right}]={self.actual} (expected {self.expected})"


@dataclass(frozen=True, slots=True)
class CanonicalityReport:
    substitution: str
    defects: tuple[CommutatorDefect, ...]

    @property
    def passed(self) -> bool:
        return not self.defects

    def to_text(self) -> str:
        if self.passed:
            return "0"
        return "; ".join(defect.to_text() for defect in self.defects)


def verify_canonical(substitution: LinearSubstitution | str) -> CanonicalityReport:
    """Compare every commutator of the images with the source frame's table."""
    if isinstance(substitution, str):
        substitution = get_substitution(substitution)
    source, target = substitution.source, substitution.target

    defects: list[CommutatorDefect] = []
    for left, right in combinations(range(4), 2):
        left_name, right_name = source.variables[left], source.variables[right]
        actual = commutator(substitution.images[left_name], substitution.images[right_name])
        expected = WeylPolynomial.constant(target, commutation_value(source, left, right))
        if actual != expected:
            defects.append(
                CommutatorDefect(
                    left=left_name,
                    right=right_name,
                    expected=expected.to_text(),
                    actual=actual.to_text(),
                )
            )

    report = CanonicalityReport(substitution=substitution.name, defects=tuple(defects))
    if not report.passed:
        logger.info("Substitution %s is not canonical: %s", substitution.name, report.to_text())
    return report


# ============================================================
# Built-in substitutions
# ============================================================

_S = Coefficient.monomial(s=1)
_ONE = Coefficient.one()


def _build(name, source, target, weights, inverse_name) -> LinearSubstitution:
    images = {variable: linear_combination(target, combo) for variable, combo in weights.items()}
    return LinearSubstitution(name=name, source=source, target=target, images=images, inverse_name=inverse_name)


def rotation_substitution(scale: Coefficient = _S, *, name: str = "canonical-rotation") -> LinearSubstitution:
    """KvN frame to the split frame; ``scale`` other than s gives a non-canonical variant."""
    return _build(
        name,
        Frame.KVN,
        Frame.SPLIT,
        {
            "q": {"q1": scale, "q2": -scale},
            "Q": {"q1": scale, "q2": scale},
            "p": {"p1": scale, "p2": scale},
            "P": {"p1": scale, "p2": -scale},
        },
        "canonical-rotation-inverse" if name == "canonical-rotation" else None,
    )


@lru_cache(maxsize=None)
def builtin_substitutions() -> dict[str, LinearSubstitution]:
    built = [
        _build(
            "kvn-relabel",
            Frame.LIOUVILLE,
            Frame.KVN,
            {
                "x": {"q": _ONE},
                "p": {"p": _ONE},
                "lambda_x": {"P": _ONE},
                "lambda_p": {"Q": -_ONE},
            },
            "kvn-relabel-inverse",
        ),
        _build(
            "kvn-relabel-inverse",
            Frame.KVN,
            Frame.LIOUVILLE,
            {
                "q": {"x": _ONE},
                "Q": {"lambda_p": -_ONE},
                "p": {"p": _ONE},
                "P": {"lambda_x": _ONE},
            },
            "kvn-relabel",
        ),
        rotation_substitution(),
        _build(
            "canonical-rotation-inverse",
            Frame.SPLIT,
            Frame.KVN,
            {
                "q1": {"q": _S, "Q": _S},
                "q2": {"Q": _S, "q": -_S},
                "p1": {"p": _S, "P": _S},
                "p2": {"p": _S, "P": -_S},
            },
            "canonical-rotation",
        ),
    ]
    return {substitution.name: substitution for substitution in built}


def get_substitution(name: str) -> LinearSubstitution:
    try:
        return builtin_substitutions()[name]
    except KeyError:
        known = ", ".join(sorted(builtin_substitutions()))
        raise UnknownSubstitutionError(f"Unknown substitution {name!r}; known: {known}") from None
