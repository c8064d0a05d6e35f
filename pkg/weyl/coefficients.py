# weyl/coefficients.py
# Exact coefficient ring: finite sums of c · rho^a · rhodot^b · k^c · s^e
# with a in Z, b, c >= 0, e in {0, 1} (s^2 = 1/2) and c a Gaussian rational.

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping

import sympy
from sympy.polys.domains import QQ_I

# Exponents of (rho, rhodot, k, s).
CoefficientExponent = tuple[int, int, int, int]

_UNIT: CoefficientExponent = (0, 0, 0, 0)


def gaussian(real: int | Fraction | str | sympy.Rational = 0, imag: int | Fraction | str | sympy.Rational = 0):
    """Exact Gaussian rational real + imag·i."""
    return QQ_I.from_sympy(sympy.Rational(real) + sympy.I * sympy.Rational(imag))


_ZERO = gaussian(0)
_ONE = gaussian(1)
_HALF = gaussian(Fraction(1, 2))


def is_zero_scalar(value) -> bool:
    return value == _ZERO


def scalar_parts(value) -> tuple[sympy.Rational, sympy.Rational]:
    """(real, imag) parts of a Gaussian rational as sympy Rationals."""
    real, imag = QQ_I.to_sympy(value).as_real_imag()
    return sympy.Rational(real), sympy.Rational(imag)


def conjugate_scalar(value):
    real, imag = scalar_parts(value)
    return gaussian(real, -imag)


@lru_cache(maxsize=None)
def integer_scalar(real: int, imag: int = 0):
    return gaussian(real, imag)


class Coefficient:
    """Immutable element of the coefficient ring.

    rho, rhodot and k are real c-numbers; rho^-3 - k rho replaces every rhodot
    derivative so rho'' never appears.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[CoefficientExponent, object] | None = None) -> None:
        self._terms: dict[CoefficientExponent, object] = {
            exponent: value
            for exponent, value in (terms or {}).items()
            if not is_zero_scalar(value)
        }

    # ---------------------------------------------------------------- builders
    @classmethod
    def zero(cls) -> Coefficient:
        return cls()

    @classmethod
    def one(cls) -> Coefficient:
        return cls({_UNIT: _ONE})

    @classmethod
    def imaginary_unit(cls) -> Coefficient:
        return cls({_UNIT: gaussian(0, 1)})

    @classmethod
    def scalar(cls, real: int | Fraction | str | sympy.Rational = 0, imag: int | Fraction | str | sympy.Rational = 0) -> Coefficient:
        return cls({_UNIT: gaussian(real, imag)})

    @classmethod
    def monomial(cls, *, rho: int = 0, rhodot: int = 0, k: int = 0, s: int = 0, value=None) -> Coefficient:
        if rhodot < 0 or k < 0 or s not in (0, 1):
            raise ValueError("rhodot and k exponents must be non-negative and s in {0, 1}")
        return cls({(rho, rhodot, k, s): _ONE if value is None else value})

    # ------------------------------------------------------------------ access
    @property
    def terms(self) -> Mapping[CoefficientExponent, object]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[CoefficientExponent, object]]:
        return iter(sorted(self._terms.items(), key=lambda item: item[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(exponent == _UNIT for exponent in self._terms)

    def is_real(self) -> bool:
        return all(scalar_parts(value)[1] == 0 for value in self._terms.values())

    # -------------------------------------------------------------- arithmetic
    def __add__(self, other: Coefficient) -> Coefficient:
        if not isinstance(other, Coefficient):
            return NotImplemented
        merged = dict(self._terms)
        for exponent, value in other._terms.items():
            merged[exponent] = merged[exponent] + value if exponent in merged else value
        return Coefficient(merged)

    def __neg__(self) -> Coefficient:
        return Coefficient({exponent: -value for exponent, value in self._terms.items()})

    def __sub__(self, other: Coefficient) -> Coefficient:
        if not isinstance(other, Coefficient):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Coefficient) -> Coefficient:
        if not isinstance(other, Coefficient):
            return NotImplemented
        product: dict[CoefficientExponent, object] = {}
        for (a1, b1, c1, s1), v1 in self._terms.items():
            for (a2, b2, c2, s2), v2 in other._terms.items():
                value = v1 * v2
                s_total = s1 + s2
                if s_total == 2:
                    value = value * _HALF
                    s_total = 0
                exponent = (a1 + a2, b1 + b2, c1 + c2, s_total)
                product[exponent] = product[exponent] + value if exponent in product else value
        return Coefficient(product)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Coefficient):
            return NotImplemented
        return self._terms == other._terms

    def __repr__(self) -> str:
        return f"Coefficient({self.to_text()})"

    # ------------------------------------------------------------- operations
    def conjugate(self) -> Coefficient:
        """Complex conjugate; rho, rhodot, k and s are real."""
        return Coefficient({exponent: conjugate_scalar(value) for exponent, value in self._terms.items()})

    def inverse(self) -> Coefficient:
        """Inverse of a single term c·rho^a·s^e; anything else is not invertible in the ring."""
        if len(self._terms) != 1:
            raise ZeroDivisionError("only single-term coefficients are invertible")
        ((a, b, c, s), value), = self._terms.items()
        if b or c:
            raise ZeroDivisionError("rhodot and k powers are not invertible")
        real, imag = scalar_parts(value)
        norm = real * real + imag * imag
        inverse_value = gaussian(real / norm, -imag / norm)
        if s:
            # 1/s = 2s
            return Coefficient({(-a, 0, 0, 1): inverse_value * integer_scalar(2)})
        return Coefficient({(-a, 0, 0, 0): inverse_value})

    def time_derivative(self) -> Coefficient:
        """d/dt with rho' = rhodot, rhodot' = rho^-3 - k rho, k and s constant."""
        derivative: dict[CoefficientExponent, object] = {}

        def accumulate(exponent: CoefficientExponent, value) -> None:
            derivative[exponent] = derivative[exponent] + value if exponent in derivative else value

        for (a, b, c, s), value in self._terms.items():
            if a:
                accumulate((a - 1, b + 1, c, s), value * integer_scalar(a))
            if b:
                accumulate((a - 3, b - 1, c, s), value * integer_scalar(b))
                accumulate((a + 1, b - 1, c + 1, s), value * integer_scalar(-b))
        return Coefficient(derivative)

    def evaluate(self, rho: float, rhodot: float, k: float) -> complex:
        """Numeric value, with s = 1/sqrt(2)."""
        total = 0j
        for (a, b, c, s), value in self._terms.items():
            real, imag = scalar_parts(value)
            factor = complex(float(real), float(imag))
            total += factor * rho ** a * rhodot ** b * k ** c * (0.5 ** 0.5) ** s
        return total

    # ---------------------------------------------------------------- printing
    def text_terms(self) -> list[tuple[str, str]]:
        """Printable (sign, body) pieces, one per real or imaginary part."""
        pieces: list[tuple[str, str]] = []
        for exponent, value in self.items():
            real, imag = scalar_parts(value)
            symbols = _symbol_factors(exponent)
            for part, unit in ((real, None), (imag, "i")):
                if part == 0:
                    continue
                sign = "-" if part < 0 else "+"
                magnitude = abs(part)
                factors: list[str] = []
                if magnitude != 1 or (unit is None and not symbols):
                    factors.append(str(magnitude))
                if unit:
                    factors.append(unit)
                factors.extend(symbols)
                pieces.append((sign, "*".join(factors)))
        return pieces

    def to_text(self) -> str:
        pieces = self.text_terms()
        if not pieces:
            return "0"
        text = ""
        for index, (sign, body) in enumerate(pieces):
            if index == 0:
                text = body if sign == "+" else f"-{body}"
            else:
                text += f" {sign} {body}"
        return text


def _symbol_factors(exponent: CoefficientExponent) -> list[str]:
    factors = []
    for name, power in zip(("rho", "rhodot", "k", "s"), exponent):
        if power == 0:
            continue
        factors.append(name if power == 1 else f"{name}^{power}")
    return factors
