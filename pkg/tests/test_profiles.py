import math

import numpy as np
import pytest
from pydantic import ValidationError

from dynamics.profiles import (
    ConstantProfile,
    MathieuProfile,
    PolynomialProfile,
    ProfileDomainError,
    ProfileError,
    TableProfile,
    eval_stiffness,
    profile_from_dict,
    profile_from_json,
    profile_to_dict,
    with_overrides,
)


def test_constant_profile_scalar_and_array():
    profile = ConstantProfile(k0=4.0)
    assert eval_stiffness(profile, 3.0) == 4.0
    np.testing.assert_array_equal(profile.evaluate(np.array([0.0, 1.0, 2.0])), [4.0, 4.0, 4.0])


def test_mathieu_profile_values(mathieu):
    assert eval_stiffness(mathieu, 0.0) == pytest.approx(1.5)
    assert eval_stiffness(mathieu, math.pi / 2) == pytest.approx(0.5)
    assert eval_stiffness(mathieu, math.pi) == pytest.approx(1.5)


def test_mathieu_block_parses_from_json():
    profile = profile_from_dict({"kind": "mathieu", "a": 1, "q": 0.5, "omega": 2})
    assert profile == MathieuProfile(a=1.0, q=0.5, omega=2.0)
    assert profile_from_json(profile.model_dump_json()) == profile


def test_table_profile_interpolates_linearly():
    profile = TableProfile(points=((0.0, 1.0), (2.0, 3.0)))
    assert eval_stiffness(profile, 1.0) == pytest.approx(2.0)
    assert profile.domain == (0.0, 2.0)


def test_table_profile_refuses_extrapolation():
    profile = TableProfile(points=((0.0, 1.0), (2.0, 3.0)))
    with pytest.raises(ProfileDomainError):
        profile.evaluate(2.5)


@pytest.mark.parametrize(
    "points",
    [
        [[0.0, 1.0]],
        [[1.0, 1.0], [0.0, 2.0]],
        [[0.0, 1.0], [0.0, 2.0]],
    ],
)
def test_table_profile_rejects_bad_points(points):
    with pytest.raises(ValidationError):
        TableProfile(points=points)


def test_polynomial_profile():
    profile = PolynomialProfile(coefficients=(1.0, 2.0, 3.0))
    assert eval_stiffness(profile, 2.0) == pytest.approx(17.0)


def test_unknown_kind_and_extra_keys_are_profile_errors():
    with pytest.raises(ProfileError):
        profile_from_dict({"kind": "sawtooth", "k0": 1.0})
    with pytest.raises(ProfileError):
        profile_from_dict({"kind": "constant", "k0": 1.0, "k1": 2.0})


@pytest.mark.parametrize(
    "payload",
    [
        {"kind": "constant", "k0": math.nan},
        {"kind": "constant", "k0": math.inf},
        {"kind": "mathieu", "a": 1.0, "q": -math.inf, "omega": 2.0},
        {"kind": "polynomial", "coefficients": [1.0, math.nan]},
    ],
)
def test_non_finite_parameters_are_profile_errors(payload):
    with pytest.raises(ProfileError):
        profile_from_dict(payload)


def test_with_overrides_revalidates(mathieu):
    changed = with_overrides(mathieu, {"q": 0.25})
    assert changed.q == 0.25
    assert changed.omega == mathieu.omega
    assert profile_to_dict(changed)["kind"] == "mathieu"
    with pytest.raises(ProfileError):
        with_overrides(mathieu, {"q": "lots"})


def test_profiles_are_immutable(harmonic):
    with pytest.raises(ValidationError):
        harmonic.k0 = 2.0
