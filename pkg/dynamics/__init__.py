# Stiffness profiles, Hill trajectories and the Ermakov amplitude.

from dynamics.ermakov import (
    ErmakovIntegrationError,
    ErmakovSingularityError,
    ErmakovSolution,
    PinneyConstructionError,
    ermakov_residual,
    relative_ermakov_residual,
    solve_ermakov_direct,
    solve_ermakov_pinney,
    solve_rho_control,
)
from dynamics.hill import (
    HillIntegrationError,
    HillTrajectory,
    IntegrationError,
    fundamental_matrix,
    solve_hill,
    solve_hill_batch,
)
from dynamics.profiles import (
    ClassicalState,
    ConstantProfile,
    MathieuProfile,
    PolynomialProfile,
    ProfileDomainError,
    ProfileError,
    StiffnessProfile,
    TableProfile,
    eval_stiffness,
    profile_from_dict,
    profile_from_json,
    profile_to_dict,
    with_overrides,
)

__all__ = [
    "ClassicalState",
    "ConstantProfile",
    "ErmakovIntegrationError",
    "ErmakovSingularityError",
    "ErmakovSolution",
    "HillIntegrationError",
    "HillTrajectory",
    "IntegrationError",
    "MathieuProfile",
    "PinneyConstructionError",
    "PolynomialProfile",
    "ProfileDomainError",
    "ProfileError",
    "StiffnessProfile",
    "TableProfile",
    "ermakov_residual",
    "eval_stiffness",
    "fundamental_matrix",
    "profile_from_dict",
    "profile_from_json",
    "profile_to_dict",
    "relative_ermakov_residual",
    "solve_ermakov_direct",
    "solve_ermakov_pinney",
    "solve_hill",
    "solve_hill_batch",
    "solve_rho_control",
    "with_overrides",
]
