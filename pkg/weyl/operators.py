# weyl/operators.py
# Symbolic Hamiltonians and invariants of the KvN oscillator, plus the
# invariance defect dI/dt - sign * i[I, H].

from __future__ import annotations

from enum import Enum

from weyl.coefficients import Coefficient
from weyl.frames import Frame
from weyl.polynomial import WeylPolynomial, commutator, time_derivative

_HALF = Coefficient.scalar("1/2")
_K = Coefficient.monomial(k=1)
_RHO = Coefficient.monomial(rho=1)
_RHODOT = Coefficient.monomial(rhodot=1)
_INV_RHO = Coefficient.monomial(rho=-1)
_I = Coefficient.imaginary_unit()


class InvariantForm(str, Enum):
    I1 = "I1"
    I2 = "I2"
    TOTAL_FRAME12 = "total-frame12"
    TOTAL_QQPP = "total-qQpP"
    TOTAL_XLAMBDA = "total-xlambda"


def _var(frame: Frame, name: str) -> WeylPolynomial:
    return WeylPolynomial.generator(frame, name)


def build_subhamiltonian(index: int) -> WeylPolynomial:
    """H_i = p_i^2/2 + k q_i^2/2 in the split frame."""
    if index not in (1, 2):
        raise ValueError("sub-Hamiltonian index must be 1 or 2")
    q = _var(Frame.SPLIT, f"q{index}")
    p = _var(Frame.SPLIT, f"p{index}")
    return (p * p).scale(_HALF) + (q * q).scale(_HALF * _K)


def build_hamiltonian(frame: Frame | str) -> WeylPolynomial:
    frame = Frame(frame)
    if frame is Frame.KVN:
        return _var(frame, "p") * _var(frame, "P") + (_var(frame, "q") * _var(frame, "Q")).scale(_K)
    if frame is Frame.SPLIT:
        return build_subhamiltonian(1) - build_subhamiltonian(2)
    # generator of the Liouville flow x' = p, p' = -k x
    return _var(frame, "p") * _var(frame, "lambda_x") - (_var(frame, "x") * _var(frame, "lambda_p")).scale(_K)


def _lewis_pair(position: WeylPolynomial, momentum: WeylPolynomial, rhodot_sign: int) -> WeylPolynomial:
    """1/2 [(x/rho)^2 + (rho p + sign rhodot x)^2]."""
    scaled = position.scale(_INV_RHO)
    mixed = momentum.scale(_RHO) + position.scale(_RHODOT if rhodot_sign > 0 else -_RHODOT)
    return (scaled * scaled + mixed * mixed).scale(_HALF)


def build_invariant(which: InvariantForm | str) -> WeylPolynomial:
    which = InvariantForm(which)
    if which is InvariantForm.I1:
        return _lewis_pair(_var(Frame.SPLIT, "q1"), _var(Frame.SPLIT, "p1"), -1)
    if which is InvariantForm.I2:
        return _lewis_pair(_var(Frame.SPLIT, "q2"), _var(Frame.SPLIT, "p2"), +1)
    if which is InvariantForm.TOTAL_FRAME12:
        return build_invariant(InvariantForm.I1) + build_invariant(InvariantForm.I2)
    if which is InvariantForm.TOTAL_QQPP:
        frame = Frame.KVN
        q, Q, p, P = (_var(frame, name) for name in frame.variables)
        first = p.scale(_RHO) - q.scale(_RHODOT)
        second = Q.scale(_RHODOT) - P.scale(_RHO)
        return (
            (q * q + Q * Q).scale(_HALF * _INV_RHO * _INV_RHO)
            + (first * first + second * second).scale(_HALF)
        )
    frame = Frame.LIOUVILLE
    x, p, lx, lp = (_var(frame, name) for name in frame.variables)
    classical = x.scale(_RHODOT) - p.scale(_RHO)
    dual = lp.scale(_RHODOT) + lx.scale(_RHO)
    return (
        (x * x + lp * lp).scale(_HALF * _INV_RHO * _INV_RHO)
        + (classical * classical + dual * dual).scale(_HALF)
    )


def invariance_defect(invariant: WeylPolynomial, hamiltonian: WeylPolynomial, sign: int = 1) -> WeylPolynomial:
    """dI/dt - sign * i[I, H]; the zero polynomial certifies invariance."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    bracket = commutator(invariant, hamiltonian).scale(_I if sign == 1 else -_I)
    return time_derivative(invariant) - bracket
