import pytest

from weyl.expressions import UnknownSymbolError
from weyl.identities import (
    IDENTITIES,
    UnknownIdentityError,
    check_expressions,
    run_all_identities,
    run_identity,
)


@pytest.mark.parametrize("name", list(IDENTITIES))
def test_bundled_identity_holds(name):
    check = run_identity(name)
    assert check.passed, check.defect
    assert check.defect == "0"
    assert check.name == name


def test_total_invariant_defect_prints_zero():
    assert run_identity("eq8-total").to_row() == {
        "identity": "eq8-total",
        "passed": True,
        "defect": "0",
        "description": "total invariant is conserved by the KvN Hamiltonian",
    }


def test_run_all_covers_the_catalogue():
    assert [check.name for check in run_all_identities()] == list(IDENTITIES)


def test_unknown_identity():
    with pytest.raises(UnknownIdentityError, match="known:"):
        run_identity("eq99")


def test_custom_check_passes_for_equal_operators():
    check = check_expressions("P*q", "q*P - i")
    assert check.passed
    assert check.defect == "0"


def test_custom_check_prints_the_difference():
    check = check_expressions("P*q", "q*P")
    assert not check.passed
    assert check.defect == "-i"


def test_frameless_side_adopts_the_other_frame():
    assert check_expressions("p*P", "P*p").passed
    assert check_expressions("rho^2*k", "k*rho*rho", frame="xlambda").passed
    assert check_expressions("p^2", "p*p + x - x").passed


def test_custom_check_across_frames_fails():
    with pytest.raises(UnknownSymbolError):
        check_expressions("q1", "q", frame=None)
