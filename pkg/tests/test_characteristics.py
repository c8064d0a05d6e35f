import math

import numpy as np
import pytest

from propagator.characteristics import backward_map, solve_characteristics
from propagator.field import PhaseSpaceField, moments, norm


def test_backward_map_undoes_a_quarter_turn(harmonic):
    matrix = backward_map(harmonic, 0.0, math.pi / 2)
    np.testing.assert_allclose(matrix, [[0.0, -1.0], [1.0, 0.0]], atol=1e-10)


def test_backward_map_is_unimodular(mathieu):
    assert np.linalg.det(backward_map(mathieu, 0.0, 4.0)) == pytest.approx(1.0, abs=1e-9)


def test_closed_form_transport_moves_the_centre(shifted_gaussian, harmonic):
    transported = solve_characteristics(shifted_gaussian, harmonic, math.pi / 2)
    assert transported.time == pytest.approx(math.pi / 2)
    m = moments(transported)
    assert m.mean_x == pytest.approx(-0.5, abs=1e-8)
    assert m.mean_p == pytest.approx(-1.0, abs=1e-8)
    assert norm(transported) == pytest.approx(1.0, abs=1e-10)


def test_spline_transport_matches_closed_form(shifted_gaussian, mathieu):
    exact = solve_characteristics(shifted_gaussian, mathieu, 1.0)
    bare = PhaseSpaceField(shifted_gaussian.grid, shifted_gaussian.values.copy(), shifted_gaussian.time)
    interpolated = solve_characteristics(bare, mathieu, 1.0)
    assert np.max(np.abs(interpolated.values - exact.values)) <= 1e-3


def test_zero_time_transport_is_identity(shifted_gaussian, mathieu):
    same = solve_characteristics(shifted_gaussian, mathieu, 0.0)
    np.testing.assert_allclose(same.values, shifted_gaussian.values, atol=1e-14)
