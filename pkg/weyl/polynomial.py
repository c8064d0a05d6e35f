# weyl/polynomial.py
# Normal-ordered polynomials in two Heisenberg pairs with coefficients in the
# exact ring of weyl.coefficients.

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial
from typing import Iterator, Mapping

from errors import LabError
from weyl.coefficients import Coefficient, integer_scalar
from weyl.frames import Frame

# Exponents of the frame's four variables, in the frame's normal order.
Monomial = tuple[int, int, int, int]

UNIT_MONOMIAL: Monomial = (0, 0, 0, 0)

# (-i)^k for the reordering y^n x^m = sum_k k! C(n,k) C(m,k) (-[x,y])^k x^(m-k) y^(n-k)
_MINUS_I_POWERS = ((1, 0), (0, -1), (-1, 0), (0, 1))


class FrameMismatchError(LabError):
    """Raised when two operands live in different frames."""


@lru_cache(maxsize=None)
def _reorder_terms(n: int, m: int) -> tuple[tuple[int, object], ...]:
    """Terms of y^n x^m in normal order when [x, y] = i."""
    terms = []
    for k in range(min(n, m) + 1):
        real, imag = _MINUS_I_POWERS[k % 4]
        weight = factorial(k) * comb(n, k) * comb(m, k)
        terms.append((k, integer_scalar(weight * real, weight * imag)))
    return tuple(terms)


@lru_cache(maxsize=65536)
def _monomial_product(frame: Frame, left: Monomial, right: Monomial) -> tuple[tuple[Monomial, object], ...]:
    partial: list[tuple[list[int], object]] = [([0, 0, 0, 0], integer_scalar(1))]
    for position, momentum in frame.pairs:
        n, m = left[momentum], right[position]
        expansions = [
            (left[position] + m - k, n - k + right[momentum], factor)
            for k, factor in _reorder_terms(n, m)
        ]
        extended = []
        for exponents, value in partial:
            for position_power, momentum_power, factor in expansions:
                updated = list(exponents)
                updated[position] = position_power
                updated[momentum] = momentum_power
                extended.append((updated, value * factor))
        partial = extended
    return tuple((tuple(exponents), value) for exponents, value in partial)


class WeylPolynomial:
    """Operator polynomial stored as {normal-ordered monomial: coefficient}.

    Zero coefficients are never stored, so equality of the term maps is
    equality of operators.
    """

    __slots__ = ("frame", "_terms")

    def __init__(self, frame: Frame | str, terms: Mapping[Monomial, Coefficient] | None = None) -> None:
        self.frame = Frame(frame)
        self._terms: dict[Monomial, Coefficient] = {
            tuple(monomial): coefficient
            for monomial, coefficient in (terms or {}).items()
            if not coefficient.is_zero()
        }

    # ---------------------------------------------------------------- builders
    @classmethod
    def zero(cls, frame: Frame | str) -> WeylPolynomial:
        return cls(frame)

    @classmethod
    def constant(cls, frame: Frame | str, coefficient: Coefficient) -> WeylPolynomial:
        return cls(frame, {UNIT_MONOMIAL: coefficient})

    @classmethod
    def one(cls, frame: Frame | str) -> WeylPolynomial:
        return cls.constant(frame, Coefficient.one())

    @classmethod
    def generator(cls, frame: Frame | str, name: str, power: int = 1) -> WeylPolynomial:
        frame = Frame(frame)
        exponents = [0, 0, 0, 0]
        exponents[frame.index(name)] = power
        return cls(frame, {tuple(exponents): Coefficient.one()})

    # ------------------------------------------------------------------ access
    @property
    def terms(self) -> dict[Monomial, Coefficient]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Coefficient]]:
        return iter(sorted(self._terms.items(), key=lambda item: (sum(item[0]), item[0])))

    def is_zero(self) -> bool:
        return not self._terms

    def is_scalar(self) -> bool:
        return all(monomial == UNIT_MONOMIAL for monomial in self._terms)

    def scalar_part(self) -> Coefficient:
        return self._terms.get(UNIT_MONOMIAL, Coefficient.zero())

    def degree(self) -> int:
        return max((sum(monomial) for monomial in self._terms), default=0)

    def coefficient(self, monomial: Monomial) -> Coefficient:
        return self._terms.get(tuple(monomial), Coefficient.zero())

    # -------------------------------------------------------------- arithmetic
    def _require_same_frame(self, other: WeylPolynomial) -> None:
        if self.frame is not other.frame:
            raise FrameMismatchError(
                f"Operands live in different frames: {self.frame.value} and {other.frame.value}"
            )

    def __add__(self, other: WeylPolynomial) -> WeylPolynomial:
        if not isinstance(other, WeylPolynomial):
            return NotImplemented
        return weyl_add(self, other)

    def __neg__(self) -> WeylPolynomial:
        return WeylPolynomial(self.frame, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: WeylPolynomial) -> WeylPolynomial:
        if not isinstance(other, WeylPolynomial):
            return NotImplemented
        return weyl_add(self, -other)

    def __mul__(self, other: WeylPolynomial | Coefficient | int) -> WeylPolynomial:
        if isinstance(other, WeylPolynomial):
            return weyl_mul(self, other)
        if isinstance(other, Coefficient):
            return self.scale(other)
        if isinstance(other, int):
            return self.scale(Coefficient.scalar(other))
        return NotImplemented

    def __rmul__(self, other: Coefficient | int) -> WeylPolynomial:
        # coefficients are central, so left and right scaling agree
        if isinstance(other, Coefficient):
            return self.scale(other)
        if isinstance(other, int):
            return self.scale(Coefficient.scalar(other))
        return NotImplemented

    def __pow__(self, exponent: int) -> WeylPolynomial:
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("operator powers must be non-negative integers")
        result = WeylPolynomial.one(self.frame)
        base = self
        while exponent:
            if exponent & 1:
                result = weyl_mul(result, base)
            exponent >>= 1
            if exponent:
                base = weyl_mul(base, base)
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeylPolynomial):
            return NotImplemented
        return self.frame is other.frame and self._terms == other._terms

    def scale(self, coefficient: Coefficient) -> WeylPolynomial:
        return WeylPolynomial(self.frame, {m: c * coefficient for m, c in self._terms.items()})

    # ---------------------------------------------------------------- printing
    def monomial_text(self, monomial: Monomial) -> str:
        return "*".join(
            name if power == 1 else f"{name}^{power}"
            for name, power in zip(self.frame.variables, monomial)
            if power
        )

    def to_text(self) -> str:
        """Deterministic rendering in the operator expression grammar."""
        pieces: list[tuple[str, str]] = []
        for monomial, coefficient in self.items():
            operator_text = self.monomial_text(monomial)
            for sign, body in coefficient.text_terms():
                if not operator_text:
                    pieces.append((sign, body))
                elif body == "1":
                    pieces.append((sign, operator_text))
                else:
                    pieces.append((sign, f"{body}*{operator_text}"))
        if not pieces:
            return "0"
        first_sign, first_body = pieces[0]
        text = first_body if first_sign == "+" else f"-{first_body}"
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"WeylPolynomial({self.frame.value}: {self.to_text()})"


def weyl_add(a: WeylPolynomial, b: WeylPolynomial) -> WeylPolynomial:
    a._require_same_frame(b)
    merged = a.terms
    for monomial, coefficient in b._terms.items():
        merged[monomial] = merged[monomial] + coefficient if monomial in merged else coefficient
    return WeylPolynomial(a.frame, merged)


def weyl_mul(a: WeylPolynomial, b: WeylPolynomial) -> WeylPolynomial:
    """Noncommutative product, re-expressed in normal order."""
    a._require_same_frame(b)
    product: dict[Monomial, Coefficient] = {}
    for left, left_coefficient in a._terms.items():
        for right, right_coefficient in b._terms.items():
            base = left_coefficient * right_coefficient
            for monomial, factor in _monomial_product(a.frame, left, right):
                contribution = Coefficient({e: v * factor for e, v in base.terms.items()})
                product[monomial] = product[monomial] + contribution if monomial in product else contribution
    return WeylPolynomial(a.frame, product)


def commutator(a: WeylPolynomial, b: WeylPolynomial) -> WeylPolynomial:
    """[a, b] = ab - ba."""
    return weyl_mul(a, b) - weyl_mul(b, a)


def adjoint(poly: WeylPolynomial) -> WeylPolynomial:
    """Formal adjoint: conjugate coefficients and reverse every monomial's factors."""
    result = WeylPolynomial.zero(poly.frame)
    for monomial, coefficient in poly._terms.items():
        reversed_product = WeylPolynomial.one(poly.frame)
        for name, power in reversed(list(zip(poly.frame.variables, monomial))):
            if power:
                reversed_product = weyl_mul(reversed_product, WeylPolynomial.generator(poly.frame, name, power))
        result = result + reversed_product.scale(coefficient.conjugate())
    return result


def time_derivative(poly: WeylPolynomial) -> WeylPolynomial:
    """Partial time derivative acting on coefficients only, Ermakov-reduced."""
    return WeylPolynomial(
        poly.frame, {m: c.time_derivative() for m, c in poly._terms.items()}
    )
