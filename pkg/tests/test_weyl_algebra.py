from itertools import combinations

import numpy as np
import pytest

from weyl.coefficients import Coefficient, gaussian
from weyl.frames import Frame, commutation_value
from weyl.operators import (
    InvariantForm,
    build_hamiltonian,
    build_invariant,
    build_subhamiltonian,
    invariance_defect,
)
from weyl.polynomial import (
    UNIT_MONOMIAL,
    FrameMismatchError,
    WeylPolynomial,
    adjoint,
    commutator,
    time_derivative,
)

I = Coefficient.imaginary_unit()
RHO = Coefficient.monomial(rho=1)
RHODOT = Coefficient.monomial(rhodot=1)


def var(frame, name, power=1):
    return WeylPolynomial.generator(frame, name, power)


@pytest.mark.parametrize("frame", list(Frame))
def test_commutation_table(frame):
    conjugate = set(frame.pairs)
    for left, right in combinations(range(4), 2):
        bracket = commutator(var(frame, frame.variables[left]), var(frame, frame.variables[right]))
        if (left, right) in conjugate:
            assert bracket == WeylPolynomial.constant(frame, I)
        elif (right, left) in conjugate:
            assert bracket == WeylPolynomial.constant(frame, -I)
        else:
            assert bracket.is_zero()
        assert bracket == WeylPolynomial.constant(frame, commutation_value(frame, left, right))


def test_kvn_frame_pairs():
    q, Q, p, P = (var(Frame.KVN, name) for name in "qQpP")
    assert commutator(q, P) == WeylPolynomial.constant(Frame.KVN, I)
    assert commutator(Q, p) == WeylPolynomial.constant(Frame.KVN, I)
    assert commutator(q, p).is_zero()
    assert commutator(Q, P).is_zero()


def test_reordering_single_swap():
    q, P = var(Frame.KVN, "q"), var(Frame.KVN, "P")
    assert P * q == q * P - WeylPolynomial.constant(Frame.KVN, I)


def test_reordering_squares():
    q, P = var(Frame.KVN, "q"), var(Frame.KVN, "P")
    expected = (
        q * q * P * P
        - (q * P).scale(Coefficient.scalar(0, 4))
        - WeylPolynomial.constant(Frame.KVN, Coefficient.scalar(2))
    )
    assert var(Frame.KVN, "P", 2) * var(Frame.KVN, "q", 2) == expected


def test_product_is_associative():
    x, p, lx, lp = (var(Frame.LIOUVILLE, name) for name in Frame.LIOUVILLE.variables)
    a = x * lx + p.scale(RHO)
    b = lx * lx - lp * x
    c = p * lp + x
    assert (a * b) * c == a * (b * c)


def test_commutator_is_antisymmetric():
    q1, p1, q2, p2 = (var(Frame.SPLIT, name) for name in Frame.SPLIT.variables)
    a, b = q1 * p1 * p1, q1 * q1 + p2
    assert commutator(a, b) == -commutator(b, a)


def _random_word(rng, frame, length):
    word = WeylPolynomial.one(frame)
    for index in rng.integers(0, 4, size=length):
        word = word * var(frame, frame.variables[index])
    return word


def _random_polynomial(rng, frame, max_degree=3, terms=4):
    poly = WeylPolynomial.zero(frame)
    for _ in range(terms):
        weight = Coefficient.scalar(int(rng.integers(-3, 4)), int(rng.integers(-3, 4)))
        poly = poly + _random_word(rng, frame, int(rng.integers(0, max_degree + 1))).scale(weight)
    return poly


@pytest.mark.parametrize("frame", list(Frame))
def test_random_words_associate(frame):
    rng = np.random.Generator(np.random.PCG64(11))
    for _ in range(10):
        a, b, c = (_random_word(rng, frame, int(rng.integers(1, 3))) for _ in range(3))
        assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("frame", list(Frame))
def test_jacobi_identity_on_random_polynomials(frame):
    rng = np.random.Generator(np.random.PCG64(5))
    for _ in range(4):
        a, b, c = (_random_polynomial(rng, frame) for _ in range(3))
        jacobi = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b))
        assert jacobi.is_zero()
        assert commutator(a, b) == -commutator(b, a)


def test_mixing_frames_is_an_error():
    with pytest.raises(FrameMismatchError):
        var(Frame.KVN, "q") + var(Frame.SPLIT, "q1")
    with pytest.raises(FrameMismatchError):
        commutator(var(Frame.KVN, "q"), var(Frame.LIOUVILLE, "x"))


def test_unknown_generator_name():
    with pytest.raises(KeyError):
        var(Frame.KVN, "q1")


def test_lewis_square_carries_plus_i_rho_rhodot():
    q1, p1 = var(Frame.SPLIT, "q1"), var(Frame.SPLIT, "p1")
    mixed = p1.scale(RHO) - q1.scale(RHODOT)
    square = mixed * mixed
    assert square.coefficient(UNIT_MONOMIAL) == Coefficient.monomial(rho=1, rhodot=1, value=gaussian(0, 1))
    assert square.coefficient((1, 1, 0, 0)) == Coefficient.monomial(rho=1, rhodot=1, value=gaussian(-2))


def test_coefficient_time_derivative_uses_ermakov_reduction():
    assert RHO.time_derivative() == RHODOT
    assert RHODOT.time_derivative() == Coefficient.monomial(rho=-3) - Coefficient.monomial(rho=1, k=1)
    assert Coefficient.monomial(k=1).time_derivative().is_zero()


def test_s_squares_to_one_half_and_inverts():
    s = Coefficient.monomial(s=1)
    assert s * s == Coefficient.scalar("1/2")
    assert s * s.inverse() == Coefficient.one()
    with pytest.raises(ZeroDivisionError):
        (RHO + RHODOT).inverse()


def test_coefficient_evaluation():
    value = (RHO * RHO + I * RHODOT).evaluate(2.0, 3.0, 1.0)
    assert value == pytest.approx(4.0 + 3.0j)


def test_zero_polynomial_prints_zero():
    assert WeylPolynomial.zero(Frame.KVN).to_text() == "0"
    assert (var(Frame.KVN, "q") - var(Frame.KVN, "q")).to_text() == "0"


@pytest.mark.parametrize(
    "invariant, hamiltonian, sign",
    [
        (InvariantForm.I1, lambda: build_subhamiltonian(1), +1),
        (InvariantForm.I2, lambda: build_subhamiltonian(2), -1),
        (InvariantForm.TOTAL_QQPP, lambda: build_hamiltonian(Frame.KVN), +1),
        (InvariantForm.TOTAL_XLAMBDA, lambda: build_hamiltonian(Frame.LIOUVILLE), +1),
        (InvariantForm.TOTAL_FRAME12, lambda: build_hamiltonian(Frame.SPLIT), +1),
    ],
)
def test_invariance_defect_is_exactly_zero(invariant, hamiltonian, sign):
    defect = invariance_defect(build_invariant(invariant), hamiltonian(), sign)
    assert defect.is_zero()
    assert defect.to_text() == "0"


def test_wrong_sign_leaves_a_defect():
    defect = invariance_defect(build_invariant(InvariantForm.I2), build_subhamiltonian(2), +1)
    assert not defect.is_zero()


def test_invariance_sign_must_be_unit():
    with pytest.raises(ValueError):
        invariance_defect(build_invariant(InvariantForm.I1), build_subhamiltonian(1), 2)


def test_time_derivative_of_operator_part_vanishes():
    assert time_derivative(build_hamiltonian(Frame.KVN)) == WeylPolynomial.zero(Frame.KVN)


@pytest.mark.parametrize("form", [InvariantForm.TOTAL_QQPP, InvariantForm.TOTAL_XLAMBDA, InvariantForm.TOTAL_FRAME12])
def test_invariants_are_self_adjoint(form):
    invariant = build_invariant(form)
    assert adjoint(invariant) == invariant


def test_adjoint_of_non_hermitian_product():
    q, P = var(Frame.KVN, "q"), var(Frame.KVN, "P")
    assert adjoint(q * P) == P * q
    assert adjoint(q * P) != q * P
