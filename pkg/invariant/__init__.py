# Classical and KvN evaluations of the Ermakov-Lewis invariant.

from invariant.classical import NonPositiveRhoError, classical_drift, classical_invariant
from invariant.operator import (
    InvariantOperatorError,
    InvariantOperatorSplit,
    ParsevalSelfTestError,
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
from invariant.study import InvariantReport, InvariantStudyError, run_invariant_study

__all__ = [
    "InvariantOperatorError",
    "InvariantOperatorSplit",
    "InvariantReport",
    "InvariantStudyError",
    "NonPositiveRhoError",
    "ParsevalSelfTestError",
    "apply_invariant",
    "apply_weyl_operator",
    "build_split_operator",
    "check_parseval",
    "classical_drift",
    "classical_invariant",
    "expectation_invariant",
    "expectation_operator",
    "gaussian_spread",
    "invariant_from_moments",
    "run_invariant_study",
    "variance_invariant",
]
