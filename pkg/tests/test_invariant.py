import math

import numpy as np
import pytest

from dynamics.profiles import ClassicalState
from invariant.classical import NonPositiveRhoError, classical_drift, classical_invariant, invariant_values
from invariant.operator import (
    InvariantOperatorError,
    apply_invariant,
    apply_weyl_operator,
    build_split_operator,
    check_parseval,
    expectation_invariant,
    expectation_operator,
    gaussian_spread,
    invariant_from_moments,
    variance_invariant,
)
from dynamics.ermakov import solve_ermakov_direct
from propagator.field import initialize_gaussian
from propagator.grid import make_grid
from weyl.frames import Frame
from weyl.operators import InvariantForm, build_invariant


# ----------------------------------------------------------------- classical
def test_classical_invariant_at_rest():
    assert classical_invariant(ClassicalState(1.0, 0.0), 1.0, 0.0) == pytest.approx(0.5)
    assert classical_invariant(ClassicalState(1.0, 2.0), 2.0, 0.5) == pytest.approx(0.5 * (0.25 + 3.5 ** 2))


def test_classical_invariant_needs_positive_rho():
    with pytest.raises(NonPositiveRhoError):
        classical_invariant(ClassicalState(1.0, 0.0), 0.0, 0.0)


def test_invariant_values_broadcast():
    values = invariant_values(np.array([1.0, 2.0]), np.array([0.0, 0.0]), 1.0, 0.0)
    np.testing.assert_allclose(values, [0.5, 2.0])


def test_classical_drift_on_harmonic_grid(harmonic):
    times = np.linspace(0.0, 20.0, 201)
    ermakov = solve_ermakov_direct(harmonic, 1.0, 0.0, times)
    rng = np.random.Generator(np.random.PCG64(7))
    states = [ClassicalState(float(q), float(p)) for q, p in rng.uniform(-2, 2, size=(100, 2))]
    drift = classical_drift(harmonic, states, ermakov, times)
    assert len(drift) == 100
    assert drift["max_drift"].max() <= 1e-8


def test_classical_drift_mathieu_with_origin(mathieu):
    times = np.linspace(0.0, 20.0, 401)
    ermakov = solve_ermakov_direct(mathieu, 1.0, 0.0, times)
    states = [ClassicalState(0.0, 0.0), ClassicalState(1.5, -0.7)]
    drift = classical_drift(mathieu, states, ermakov, times)
    assert list(drift["drift_kind"]) == ["absolute", "relative"]
    assert drift.loc[0, "max_drift"] == 0.0
    assert drift["max_drift"].max() <= 1e-7


def test_classical_spread_grows_with_width(harmonic):
    # rho = 1, rho' = 0: I(q, p) = (q^2 + p^2) / 2 so wider clouds carry more invariant
    widths = [1.0, 1.5, 2.0]
    rng = np.random.Generator(np.random.PCG64(3))
    base = rng.standard_normal((2000, 2))
    means = [float(np.mean(invariant_values(w * base[:, 0], w * base[:, 1], 1.0, 0.0))) for w in widths]
    assert means == sorted(means)


# ------------------------------------------------------------------ operator
def test_parseval_self_test(small_grid):
    assert check_parseval(small_grid) <= 1e-12


def test_unit_gaussian_expectation_is_one(unit_gaussian):
    op = build_split_operator(unit_gaussian.grid, 1.0, 0.0)
    assert expectation_invariant(unit_gaussian, op) == pytest.approx(1.0, abs=1e-6)
    assert gaussian_spread(1.0, 1.0) == 1.0


@pytest.mark.parametrize("sx, sp", [(0.8, 1.2), (1.3, 0.9)])
def test_gaussian_expectation_is_classical_value_plus_spread(sx, sp):
    grid = make_grid(128, 128, 10.0, 10.0)
    centre = ClassicalState(0.7, -0.4)
    field = initialize_gaussian(grid, centre, (sx, sp))
    op = build_split_operator(grid, 1.0, 0.0)
    expected = classical_invariant(centre, 1.0, 0.0) + gaussian_spread(sx, sp)
    assert expectation_invariant(field, op) == pytest.approx(expected, abs=1e-6)


def test_expectation_tends_to_classical_value_as_packets_narrow():
    grid = make_grid(128, 128, 14.0, 14.0)
    centre = ClassicalState(1.0, 0.0)
    op = build_split_operator(grid, 1.0, 0.0)
    widths = [1.0, 1.25, 1.5, 2.0]
    means = [expectation_invariant(initialize_gaussian(grid, centre, (s, s)), op) for s in widths]
    assert np.all(np.diff(means) > 0)
    for width, mean in zip(widths, means):
        assert mean == pytest.approx(classical_invariant(centre, 1.0, 0.0) + gaussian_spread(width, width), abs=1e-6)


def _dense_invariant_matrix(op):
    """M + F^-1 D F assembled as an explicit matrix on the raveled field."""
    n_x, n_p = op.grid.shape
    dft = np.kron(np.fft.fft(np.eye(n_x)), np.fft.fft(np.eye(n_p)))
    spectral = dft.conj().T @ (op.spectral.ravel()[:, None] * dft) / (n_x * n_p)
    return np.diag(op.multiplicative.ravel()) + spectral


@pytest.mark.parametrize(
    "centre, rho, rhodot",
    [(ClassicalState(0.0, 0.0), 1.0, 0.0), (ClassicalState(0.5, 0.0), 1.0, 0.0), (ClassicalState(0.0, 0.0), 1.2, 0.3)],
)
def test_variance_matches_dense_matrix(centre, rho, rhodot):
    grid = make_grid(32, 32, 7.0, 7.0)
    field = initialize_gaussian(grid, centre, (1.0, 1.0))
    op = build_split_operator(grid, rho, rhodot)
    matrix = _dense_invariant_matrix(op)
    psi = field.values.ravel()
    applied = matrix @ psi
    mean = float(np.real(np.vdot(psi, applied))) * grid.cell_area
    second = float(np.real(np.vdot(applied, applied))) * grid.cell_area
    assert expectation_invariant(field, op) == pytest.approx(mean, abs=1e-6)
    assert variance_invariant(field, op) == pytest.approx(second - mean ** 2, abs=1e-6)


def test_moment_oracle_agrees(shifted_gaussian):
    op = build_split_operator(shifted_gaussian.grid, 1.3, -0.4)
    assert invariant_from_moments(shifted_gaussian, 1.3, -0.4) == pytest.approx(
        expectation_invariant(shifted_gaussian, op), abs=1e-9
    )


def test_expectation_matches_apply(shifted_gaussian):
    op = build_split_operator(shifted_gaussian.grid, 1.3, -0.4)
    applied = apply_invariant(shifted_gaussian, op)
    direct = np.real(np.vdot(shifted_gaussian.values, applied)) * shifted_gaussian.grid.cell_area
    assert direct == pytest.approx(expectation_invariant(shifted_gaussian, op), abs=1e-9)


def test_variance_is_non_negative(shifted_gaussian):
    op = build_split_operator(shifted_gaussian.grid, 1.0, 0.0)
    assert variance_invariant(shifted_gaussian, op) >= -1e-9


@pytest.mark.parametrize("form", [InvariantForm.TOTAL_XLAMBDA, InvariantForm.TOTAL_QQPP, InvariantForm.TOTAL_FRAME12])
def test_every_frame_gives_the_same_expectation(shifted_gaussian, form):
    rho, rhodot = 1.3, -0.4
    op = build_split_operator(shifted_gaussian.grid, rho, rhodot)
    value = expectation_operator(build_invariant(form), shifted_gaussian, rho, rhodot, 1.0)
    assert value.real == pytest.approx(expectation_invariant(shifted_gaussian, op), abs=1e-8)
    assert abs(value.imag) <= 1e-8


def test_weyl_operator_application_matches_split_operator(shifted_gaussian):
    rho, rhodot = 0.9, 0.2
    op = build_split_operator(shifted_gaussian.grid, rho, rhodot)
    poly = build_invariant(InvariantForm.TOTAL_XLAMBDA)
    np.testing.assert_allclose(
        apply_weyl_operator(poly, shifted_gaussian, rho, rhodot, 1.0),
        apply_invariant(shifted_gaussian, op),
        atol=1e-9,
    )


def test_operator_needs_positive_rho(small_grid):
    with pytest.raises(NonPositiveRhoError):
        build_split_operator(small_grid, -1.0, 0.0)
    with pytest.raises(NonPositiveRhoError):
        build_split_operator(small_grid, math.nan, 0.0)


def test_operator_and_field_must_share_a_grid(unit_gaussian):
    other = make_grid(64, 64, 10.0, 10.0)
    op = build_split_operator(other, 1.0, 0.0)
    with pytest.raises(InvariantOperatorError):
        expectation_invariant(unit_gaussian, op)


def test_liouville_frame_is_a_no_op_for_liouville_polynomials():
    poly = build_invariant(InvariantForm.TOTAL_XLAMBDA)
    assert poly.frame is Frame.LIOUVILLE
