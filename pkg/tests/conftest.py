import pytest

from config import reset_settings
from dynamics.profiles import ClassicalState, ConstantProfile, MathieuProfile
from propagator.field import initialize_gaussian
from propagator.grid import make_grid


@pytest.fixture(autouse=True)
def fresh_settings():
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def harmonic():
    return ConstantProfile(k0=1.0)


@pytest.fixture
def mathieu():
    return MathieuProfile(a=1.0, q=0.5, omega=2.0)


@pytest.fixture
def small_grid():
    return make_grid(64, 64, 8.0, 8.0)


@pytest.fixture
def unit_gaussian(small_grid):
    return initialize_gaussian(small_grid, ClassicalState(0.0, 0.0), (1.0, 1.0))


@pytest.fixture
def shifted_gaussian(small_grid):
    return initialize_gaussian(small_grid, ClassicalState(1.0, -0.5), (1.0, 1.0))