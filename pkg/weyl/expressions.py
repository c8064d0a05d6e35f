# weyl/expressions.py
# Operator expression front end.
#
# Grammar
#   expr   := term (('+' | '-') term)*
#   term   := unary (('*' | '/') unary)*
#   unary  := ('+' | '-') unary | power
#   power  := atom ('^' ['+' | '-'] INTEGER)?
#   atom   := NUMBER | IDENTIFIER | '(' expr ')'
#
# Identifiers are the frame variables plus the coefficient symbols rho,
# rhodot, k, s and i. Division is only allowed by invertible scalars.

from __future__ import annotations

import re
from dataclasses import dataclass

from errors import LabError
from weyl.coefficients import Coefficient
from weyl.frames import ALL_VARIABLES, Frame, frames_containing
from weyl.polynomial import WeylPolynomial


class ExpressionError(LabError):
    def __init__(self, message: str, *, position: int | None = None) -> None:
        super().__init__(message if position is None else f"{message} at position {position}")
        self.position = position


class OperatorSyntaxError(ExpressionError):
    pass


class UnknownSymbolError(ExpressionError):
    pass


class FrameAmbiguityError(ExpressionError):
    pass


class NonInvertibleDivisorError(ExpressionError):
    pass


_COEFFICIENT_SYMBOLS = {
    "rho": Coefficient.monomial(rho=1),
    "rhodot": Coefficient.monomial(rhodot=1),
    "k": Coefficient.monomial(k=1),
    "s": Coefficient.monomial(s=1),
    "i": Coefficient.imaginary_unit(),
}

_TOKEN = re.compile(r"\s*(?:(?P<number>\d+(?:\.\d*)?|\.\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\S))")
_OPERATORS = set("+-*/^()")


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # number | name | op | end
    text: str
    position: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    cursor = 0
    while cursor < len(text):
        match = _TOKEN.match(text, cursor)
        if match is None:
            # only trailing whitespace is left
            break
        kind = match.lastgroup
        start = match.start(kind)
        value = match.group(kind)
        if kind == "op" and value not in _OPERATORS:
            raise OperatorSyntaxError(f"Unexpected character {value!r}", position=start)
        tokens.append(Token(kind, value, start))
        cursor = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


def infer_frame(tokens: list[Token], frame: Frame | str | None = None) -> Frame:
    """The one frame containing every operator variable of the expression."""
    names = [token for token in tokens if token.kind == "name"]
    for token in names:
        if token.text not in ALL_VARIABLES and token.text not in _COEFFICIENT_SYMBOLS:
            raise UnknownSymbolError(f"Unknown symbol {token.text!r}", position=token.position)

    if frame is not None:
        frame = Frame(frame)
        for token in names:
            if token.text in ALL_VARIABLES and token.text not in frame.variables:
                raise UnknownSymbolError(
                    f"Symbol {token.text!r} is not a variable of frame {frame.value}", position=token.position
                )
        return frame

    candidates = set(Frame)
    for token in names:
        if token.text in ALL_VARIABLES:
            candidates &= set(frames_containing(token.text))
            if not candidates:
                raise FrameAmbiguityError(
                    f"Variable {token.text!r} mixes frames", position=token.position
                )
    if len(candidates) != 1:
        options = ", ".join(sorted(frame.value for frame in candidates))
        raise FrameAmbiguityError(f"Cannot infer the frame of the expression (candidates: {options})")
    return candidates.pop()


class _Parser:
    def __init__(self, tokens: list[Token], frame: Frame) -> None:
        self.tokens = tokens
        self.frame = frame
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def accept(self, *ops: str) -> Token | None:
        if self.current.kind == "op" and self.current.text in ops:
            return self.advance()
        return None

    def parse(self) -> WeylPolynomial:
        result = self.expr()
        if self.current.kind != "end":
            raise OperatorSyntaxError(f"Unexpected {self.current.text!r}", position=self.current.position)
        return result

    def expr(self) -> WeylPolynomial:
        result = self.term()
        while (token := self.accept("+", "-")) is not None:
            right = self.term()
            result = result + right if token.text == "+" else result - right
        return result

    def term(self) -> WeylPolynomial:
        result = self.unary()
        while (token := self.accept("*", "/")) is not None:
            right = self.unary()
            if token.text == "*":
                result = result * right
            else:
                result = result.scale(self._inverse_scalar(right, token.position))
        return result

    def unary(self) -> WeylPolynomial:
        if (token := self.accept("+", "-")) is not None:
            operand = self.unary()
            return operand if token.text == "+" else -operand
        return self.power()

    def power(self) -> WeylPolynomial:
        base = self.atom()
        caret = self.accept("^")
        if caret is None:
            return base
        negative = False
        if (sign := self.accept("+", "-")) is not None:
            negative = sign.text == "-"
        if self.current.kind != "number" or not self.current.text.isdigit():
            raise OperatorSyntaxError("Exponent must be an integer", position=self.current.position)
        exponent = int(self.advance().text)
        if negative:
            inverse = self._inverse_scalar(base, caret.position)
            return WeylPolynomial.constant(self.frame, inverse) ** exponent
        return base ** exponent

    def atom(self) -> WeylPolynomial:
        token = self.current
        if token.kind == "number":
            self.advance()
            return WeylPolynomial.constant(self.frame, Coefficient.scalar(token.text))
        if token.kind == "name":
            self.advance()
            if token.text in _COEFFICIENT_SYMBOLS:
                return WeylPolynomial.constant(self.frame, _COEFFICIENT_SYMBOLS[token.text])
            return WeylPolynomial.generator(self.frame, token.text)
        if self.accept("(") is not None:
            inner = self.expr()
            if self.accept(")") is None:
                raise OperatorSyntaxError("Expected ')'", position=self.current.position)
            return inner
        if token.kind == "end":
            raise OperatorSyntaxError("Unexpected end of expression", position=token.position)
        raise OperatorSyntaxError(f"Unexpected {token.text!r}", position=token.position)

    @staticmethod
    def _inverse_scalar(value: WeylPolynomial, position: int) -> Coefficient:
        if not value.is_scalar() or value.is_zero():
            raise NonInvertibleDivisorError("Division by a non-scalar or zero operand", position=position)
        try:
            return value.scalar_part().inverse()
        except ZeroDivisionError as exc:
            raise NonInvertibleDivisorError(str(exc), position=position) from exc


def parse_operator(text: str, frame: Frame | str | None = None) -> WeylPolynomial:
    """Parse ``text`` into an exact normal-ordered polynomial."""
    tokens = tokenize(text)
    resolved = infer_frame(tokens, frame)
    return _Parser(tokens, resolved).parse()


def print_operator(poly: WeylPolynomial) -> str:
    return poly.to_text()
