import math

import numpy as np
import pytest

from dynamics.profiles import ClassicalState
from propagator.characteristics import solve_characteristics
from propagator.field import BoundaryMassError, initialize_gaussian, moments, norm, outer_ring_mass
from propagator.grid import GridError, make_grid
from propagator.split_step import (
    PropagationError,
    moment_observer,
    norm_observer,
    observation_indices,
    propagate,
    step_count,
    step_strang,
)


# ---------------------------------------------------------------- grid
def test_grid_layout(small_grid):
    assert small_grid.shape == (64, 64)
    assert small_grid.dx == pytest.approx(0.25)
    assert small_grid.x[0] == -8.0
    assert small_grid.x[-1] == pytest.approx(7.75)
    assert small_grid.kappa_x[1] == pytest.approx(2 * math.pi / 16.0)
    assert small_grid.contains(-8.0, 0.0) and not small_grid.contains(8.0, 0.0)
    assert small_grid.spectral_weight == pytest.approx(small_grid.cell_area / 64 ** 2)


@pytest.mark.parametrize("nx, np_", [(48, 64), (16, 16), (64.5, 64)])
def test_grid_rejects_bad_sizes(nx, np_):
    with pytest.raises(GridError):
        make_grid(nx, np_, 8.0, 8.0)


def test_grid_rejects_bad_extent():
    with pytest.raises(GridError):
        make_grid(64, 64, 0.0, 8.0)


def test_grid_axes_are_read_only(small_grid):
    with pytest.raises(ValueError):
        small_grid.x[0] = 1.0


# ------------------------------------------------------------- initial data
def test_gaussian_is_normalized_and_centred(shifted_gaussian):
    assert norm(shifted_gaussian) == pytest.approx(1.0, abs=1e-12)
    m = moments(shifted_gaussian)
    assert m.mean_x == pytest.approx(1.0, abs=1e-10)
    assert m.mean_p == pytest.approx(-0.5, abs=1e-10)
    assert m.mean_x2 - m.mean_x ** 2 == pytest.approx(0.5, abs=1e-10)
    assert shifted_gaussian.packet is not None


def test_gaussian_touching_the_boundary_is_rejected():
    grid = make_grid(64, 64, 4.0, 4.0)
    with pytest.raises(BoundaryMassError) as info:
        initialize_gaussian(grid, ClassicalState(0.0, 0.0), (1.0, 1.0))
    lx, lp = info.value.suggested_extents
    assert lx >= 6.0 and lp >= 6.0


def test_gaussian_widths_must_be_positive(small_grid):
    with pytest.raises(ValueError):
        initialize_gaussian(small_grid, ClassicalState(0.0, 0.0), (0.0, 1.0))


def test_outer_ring_of_centred_gaussian_is_empty(unit_gaussian):
    assert outer_ring_mass(unit_gaussian) < 1e-20


# ------------------------------------------------------------------ stepping
def test_single_step_preserves_norm_and_input(shifted_gaussian, mathieu):
    before = shifted_gaussian.values.copy()
    advanced = step_strang(shifted_gaussian, mathieu, 1e-2)
    assert advanced.time == pytest.approx(1e-2)
    assert norm(advanced) == pytest.approx(1.0, abs=1e-13)
    np.testing.assert_array_equal(shifted_gaussian.values, before)


def test_norm_drift_over_ten_thousand_steps(shifted_gaussian, mathieu):
    result = propagate(shifted_gaussian, mathieu, 10.0, 1e-3, stride=1000)
    assert result.steps == 10_000
    assert np.max(np.abs(result.observations["norm"] - 1.0)) <= 1e-10


def test_observation_times_end_exactly_at_t1(unit_gaussian, harmonic):
    result = propagate(unit_gaussian, harmonic, 1.0, 0.01, observers=[norm_observer, moment_observer], stride=30)
    times = result.times
    assert times[0] == 0.0 and times[-1] == 1.0
    assert len(times) == len(observation_indices(100, 30)) == 5
    assert result.field.time == 1.0
    assert list(result.observations.columns) == ["t", "norm", "mean_x", "mean_p"]


def test_centroid_follows_the_classical_orbit(shifted_gaussian, harmonic):
    result = propagate(shifted_gaussian, harmonic, math.pi / 2, math.pi / 2000, observers=[moment_observer], stride=1000)
    final = result.observations.iloc[-1]
    assert final["mean_x"] == pytest.approx(-0.5, abs=1e-5)
    assert final["mean_p"] == pytest.approx(-1.0, abs=1e-5)


def test_harmonic_return_map(shifted_gaussian, harmonic):
    period = 2 * math.pi
    result = propagate(shifted_gaussian, harmonic, period, period / 1000, stride=1000)
    assert np.max(np.abs(result.field.values - shifted_gaussian.values)) <= 1e-3


def test_split_step_is_second_order(shifted_gaussian, mathieu):
    oracle = solve_characteristics(shifted_gaussian, mathieu, 2.0)
    errors = []
    for dt in (0.05, 0.025):
        result = propagate(shifted_gaussian, mathieu, 2.0, dt, stride=1000)
        errors.append(np.max(np.abs(result.field.values - oracle.values)))
    assert 3.5 <= errors[0] / errors[1] <= 4.5


@pytest.mark.parametrize("t1, dt", [(1.0, 0.3), (0.0, 0.1), (1.0, -0.1), (1.0, math.inf)])
def test_step_count_rejects_bad_requests(t1, dt):
    with pytest.raises(PropagationError):
        step_count(0.0, t1, dt)


def test_step_count_tolerates_rounding():
    assert step_count(0.0, 20.0, 1e-3) == 20_000
    assert step_count(0.0, 2 * math.pi, 2 * math.pi / 1000) == 1000


def test_failing_observer_is_wrapped(unit_gaussian, harmonic):
    def broken(field):
        raise RuntimeError("boom")

    with pytest.raises(PropagationError, match="boom"):
        propagate(unit_gaussian, harmonic, 0.1, 0.01, observers=[broken])


def test_observers_see_read_only_snapshots(unit_gaussian, harmonic):
    def meddling(field):
        field.values[0, 0] = 1.0
        return {}

    with pytest.raises(PropagationError):
        propagate(unit_gaussian, harmonic, 0.1, 0.01, observers=[meddling])
