# Exact operator algebra for the KvN oscillator.

from weyl.coefficients import Coefficient
from weyl.expressions import (
    FrameAmbiguityError,
    NonInvertibleDivisorError,
    OperatorSyntaxError,
    UnknownSymbolError,
    parse_operator,
    print_operator,
)
from weyl.frames import CanonicalVariable, Frame, commutation_value
from weyl.identities import IDENTITIES, SymbolicCheck, UnknownIdentityError, check_expressions, run_identity
from weyl.operators import (
    InvariantForm,
    build_hamiltonian,
    build_invariant,
    build_subhamiltonian,
    invariance_defect,
)
from weyl.polynomial import (
    FrameMismatchError,
    WeylPolynomial,
    adjoint,
    commutator,
    time_derivative,
    weyl_add,
    weyl_mul,
)
from weyl.substitutions import (
    CanonicalityReport,
    LinearSubstitution,
    UnknownSubstitutionError,
    get_substitution,
    substitute_linear,
    verify_canonical,
)

__all__ = [
    "CanonicalVariable",
    "CanonicalityReport",
    "Coefficient",
    "Frame",
    "FrameAmbiguityError",
    "FrameMismatchError",
    "IDENTITIES",
    "InvariantForm",
    "LinearSubstitution",
    "NonInvertibleDivisorError",
    "OperatorSyntaxError",
    "SymbolicCheck",
    "UnknownIdentityError",
    "UnknownSubstitutionError",
    "UnknownSymbolError",
    "WeylPolynomial",
    "adjoint",
    "build_hamiltonian",
    "build_invariant",
    "build_subhamiltonian",
    "check_expressions",
    "commutation_value",
    "commutator",
    "get_substitution",
    "invariance_defect",
    "parse_operator",
    "print_operator",
    "run_identity",
    "substitute_linear",
    "time_derivative",
    "verify_canonical",
    "weyl_add",
    "weyl_mul",
]
