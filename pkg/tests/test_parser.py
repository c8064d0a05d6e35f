import pytest

from weyl.coefficients import Coefficient
from weyl.expressions import (
    FrameAmbiguityError,
    NonInvertibleDivisorError,
    OperatorSyntaxError,
    UnknownSymbolError,
    parse_operator,
    print_operator,
)
from weyl.frames import Frame
from weyl.operators import InvariantForm, build_hamiltonian, build_invariant
from weyl.polynomial import WeylPolynomial


def test_frame_is_inferred_from_variables():
    assert parse_operator("q*P").frame is Frame.KVN
    assert parse_operator("q1 + p2").frame is Frame.SPLIT
    assert parse_operator("x*lambda_x").frame is Frame.LIOUVILLE


def test_products_are_normal_ordered():
    assert parse_operator("P*q") == parse_operator("q*P - i")


def test_parses_the_kvn_hamiltonian():
    assert parse_operator("p*P + k*q*Q") == build_hamiltonian(Frame.KVN)


def test_parses_the_total_invariant():
    text = "((q^2 + Q^2)/rho^2 + (rho*p - rhodot*q)^2 + (rhodot*Q - rho*P)^2)/2"
    assert parse_operator(text) == build_invariant(InvariantForm.TOTAL_QQPP)


def test_negative_powers_of_rho():
    assert parse_operator("rho^-2*q") == parse_operator("q/rho^2")


@pytest.mark.parametrize(
    "form", [InvariantForm.TOTAL_QQPP, InvariantForm.TOTAL_XLAMBDA, InvariantForm.TOTAL_FRAME12, InvariantForm.I1]
)
def test_printed_operators_parse_back(form):
    poly = build_invariant(form)
    assert parse_operator(print_operator(poly), poly.frame) == poly


def test_printer_is_deterministic():
    assert print_operator(parse_operator("Q + q")) == print_operator(parse_operator("q + Q"))
    assert print_operator(parse_operator("q - q", Frame.KVN)) == "0"


def test_ambiguous_momentum_needs_a_frame():
    with pytest.raises(FrameAmbiguityError):
        parse_operator("p^2")
    assert parse_operator("p^2", "qQpP") == WeylPolynomial.generator(Frame.KVN, "p", 2)


def test_scalar_expression_needs_a_frame():
    with pytest.raises(FrameAmbiguityError):
        parse_operator("rho*k")
    assert parse_operator("2*i", Frame.SPLIT) == WeylPolynomial.constant(Frame.SPLIT, Coefficient.scalar(0, 2))


def test_mixed_frames_are_rejected():
    with pytest.raises(FrameAmbiguityError):
        parse_operator("q1*Q")


def test_unknown_symbol_reports_position():
    with pytest.raises(UnknownSymbolError) as info:
        parse_operator("q + zeta")
    assert info.value.position == 4


def test_variable_outside_explicit_frame():
    with pytest.raises(UnknownSymbolError):
        parse_operator("q1", Frame.KVN)


@pytest.mark.parametrize("text", ["q +", "(q*P", "q*P)", "q^P", "q ^ 1.5", "q $ P", ""])
def test_syntax_errors(text):
    with pytest.raises(OperatorSyntaxError):
        parse_operator(text, Frame.KVN)


@pytest.mark.parametrize("text", ["q/P", "q/(rho + 1)", "q/rhodot", "q/k", "q/0", "P^-1"])
def test_only_invertible_scalars_divide(text):
    with pytest.raises(NonInvertibleDivisorError):
        parse_operator(text, Frame.KVN)


def test_division_by_rational_literal():
    assert parse_operator("q/2") == WeylPolynomial.generator(Frame.KVN, "q").scale(Coefficient.scalar("1/2"))
