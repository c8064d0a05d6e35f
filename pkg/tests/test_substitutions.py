import pytest

from weyl.coefficients import Coefficient
from weyl.frames import Frame
from weyl.operators import InvariantForm, build_hamiltonian, build_invariant
from weyl.polynomial import FrameMismatchError, WeylPolynomial
from weyl.substitutions import (
    UnknownSubstitutionError,
    builtin_substitutions,
    get_substitution,
    rotation_substitution,
    substitute_linear,
    verify_canonical,
)


@pytest.mark.parametrize("name", sorted(builtin_substitutions()))
def test_builtin_maps_are_canonical(name):
    report = verify_canonical(name)
    assert report.passed
    assert report.to_text() == "0"


def test_corrupted_rotation_reports_both_broken_brackets():
    corrupted = rotation_substitution(Coefficient.one(), name="rotation-without-scale")
    report = verify_canonical(corrupted)
    assert not report.passed
    assert [(d.left, d.right) for d in report.defects] == [("q", "P"), ("Q", "p")]
    assert report.defects[0].to_text() == "[q,P]=2*i (expected i)"
    assert report.defects[1].actual == "2*i"


def test_rotation_splits_the_kvn_hamiltonian():
    rotated = substitute_linear(build_hamiltonian(Frame.KVN), "canonical-rotation")
    assert rotated.frame is Frame.SPLIT
    assert rotated == build_hamiltonian(Frame.SPLIT)


def test_rotation_round_trip():
    hamiltonian = build_hamiltonian(Frame.KVN)
    there = substitute_linear(hamiltonian, "canonical-rotation")
    assert substitute_linear(there, "canonical-rotation-inverse") == hamiltonian


def test_relabel_maps_liouville_generator_to_kvn_hamiltonian():
    relabeled = substitute_linear(build_hamiltonian(Frame.LIOUVILLE), "kvn-relabel")
    assert relabeled == build_hamiltonian(Frame.KVN)


@pytest.mark.parametrize(
    "source, substitution, target",
    [
        (InvariantForm.TOTAL_FRAME12, "canonical-rotation-inverse", InvariantForm.TOTAL_QQPP),
        (InvariantForm.TOTAL_QQPP, "canonical-rotation", InvariantForm.TOTAL_FRAME12),
        (InvariantForm.TOTAL_QQPP, "kvn-relabel-inverse", InvariantForm.TOTAL_XLAMBDA),
        (InvariantForm.TOTAL_XLAMBDA, "kvn-relabel", InvariantForm.TOTAL_QQPP),
    ],
)
def test_invariant_forms_map_onto_each_other(source, substitution, target):
    assert substitute_linear(build_invariant(source), substitution) == build_invariant(target)


def test_inverse_names_point_at_each_other():
    for name, substitution in builtin_substitutions().items():
        partner = get_substitution(substitution.inverse_name)
        assert partner.inverse_name == name
        assert (partner.source, partner.target) == (substitution.target, substitution.source)


def test_source_frame_must_match():
    with pytest.raises(FrameMismatchError):
        substitute_linear(WeylPolynomial.generator(Frame.SPLIT, "q1"), "kvn-relabel")


def test_unknown_substitution_name():
    with pytest.raises(UnknownSubstitutionError, match="known:"):
        get_substitution("shear")
    with pytest.raises(KeyError):
        substitute_linear(WeylPolynomial.one(Frame.KVN), "shear")
