# invariant/operator.py
# The KvN invariant as an operator on phase-space fields.
#
# In the Liouville frame the invariant is M(x, p) + D(lambda_x, lambda_p):
# M acts by multiplication on the grid, D by multiplication on the double
# spectral grid where lambda_x, lambda_p become kappa_x, kappa_p.

from __future__ import annotations

import dataclasses
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import fft

from config import get_settings
from errors import LabError
from invariant.classical import NonPositiveRhoError
from propagator.field import PhaseSpaceField
from propagator.grid import PhaseSpaceGrid
from weyl.frames import Frame
from weyl.polynomial import WeylPolynomial
from weyl.substitutions import substitute_linear

logger = logging.getLogger(__name__)

PARSEVAL_TOLERANCE = 1e-12
PARSEVAL_SEED = 20240601


class InvariantOperatorError(LabError):
    """Operator and field do not share a grid."""


class ParsevalSelfTestError(LabError):
    pass


@dataclass(frozen=True, eq=False)
class InvariantOperatorSplit:
    grid: PhaseSpaceGrid
    rho: float
    rhodot: float
    multiplicative: np.ndarray = dataclasses.field(repr=False)
    spectral: np.ndarray = dataclasses.field(repr=False)


def build_split_operator(grid: PhaseSpaceGrid, rho: float, rhodot: float) -> InvariantOperatorSplit:
    """M = 1/2[x^2/rho^2 + (rho' x - rho p)^2], D = 1/2[kp^2/rho^2 + (rho' kp + rho kx)^2]."""
    if not (math.isfinite(rho) and rho > 0):
        raise NonPositiveRhoError(f"rho must be positive, got {rho}")
    x, p = grid.x_column, grid.p_row
    kx, kp = grid.kappa_x_column, grid.kappa_p_row
    multiplicative = 0.5 * (x ** 2 / rho ** 2 + (rhodot * x - rho * p) ** 2)
    spectral = 0.5 * (kp ** 2 / rho ** 2 + (rhodot * kp + rho * kx) ** 2)
    for part in (multiplicative, spectral):
        part.setflags(write=False)
    return InvariantOperatorSplit(grid, float(rho), float(rhodot), multiplicative, spectral)


def _require_grid(field: PhaseSpaceField, op: InvariantOperatorSplit) -> None:
    if field.grid != op.grid:
        raise InvariantOperatorError(
            f"operator built on {op.grid.describe()} applied to a field on {field.grid.describe()}"
        )


def _fft2(values: np.ndarray) -> np.ndarray:
    return fft.fft2(values, workers=get_settings().fft_workers)


def _ifft2(values: np.ndarray) -> np.ndarray:
    return fft.ifft2(values, workers=get_settings().fft_workers)


def apply_invariant(field: PhaseSpaceField, op: InvariantOperatorSplit) -> np.ndarray:
    """I psi with one forward and one inverse double transform."""
    _require_grid(field, op)
    return op.multiplicative * field.values + _ifft2(op.spectral * _fft2(field.values))


def expectation_invariant(field: PhaseSpaceField, op: InvariantOperatorSplit) -> float:
    """<psi|I|psi> for a unit-norm field; M and D are weighed by their own densities."""
    _require_grid(field, op)
    grid = field.grid
    spectral_density = np.abs(_fft2(field.values)) ** 2
    real_part = float(np.sum(op.multiplicative * field.density())) * grid.cell_area
    spectral_part = float(np.sum(op.spectral * spectral_density)) * grid.spectral_weight
    return real_part + spectral_part


def variance_invariant(field: PhaseSpaceField, op: InvariantOperatorSplit) -> float:
    """<I^2> - <I>^2 with I^2 applied as two successive applications of I."""
    once = PhaseSpaceField(field.grid, apply_invariant(field, op), field.time)
    twice = apply_invariant(once, op)
    second = float(np.real(np.vdot(field.values, twice))) * field.grid.cell_area
    mean = expectation_invariant(field, op)
    return second - mean ** 2


def gaussian_spread(sx: float, sp: float) -> float:
    """<I> minus the classical value for a Gaussian packet at rho = 1, rho' = 0."""
    return 0.25 * (sx ** 2 + sp ** 2 + sx ** -2 + sp ** -2)


def invariant_from_moments(field: PhaseSpaceField, rho: float, rhodot: float) -> float:
    """<I> from second moments of |psi|^2 and of the spectral density."""
    if not (math.isfinite(rho) and rho > 0):
        raise NonPositiveRhoError(f"rho must be positive, got {rho}")
    grid = field.grid
    density = field.density() * grid.cell_area
    spectral_density = np.abs(_fft2(field.values)) ** 2 * grid.spectral_weight
    x, p = grid.x_column, grid.p_row
    kx, kp = grid.kappa_x_column, grid.kappa_p_row

    xx = float(np.sum(density * x * x))
    pp = float(np.sum(density * p * p))
    xp = float(np.sum(density * x * p))
    kxkx = float(np.sum(spectral_density * kx * kx))
    kpkp = float(np.sum(spectral_density * kp * kp))
    kxkp = float(np.sum(spectral_density * kx * kp))

    classical_part = xx / rho ** 2 + rhodot ** 2 * xx - 2 * rho * rhodot * xp + rho ** 2 * pp
    dual_part = kpkp / rho ** 2 + rhodot ** 2 * kpkp + 2 * rho * rhodot * kxkp + rho ** 2 * kxkx
    return 0.5 * (classical_part + dual_part)


# ============================================================
# General operator polynomials on fields
# ============================================================

def to_liouville_frame(poly: WeylPolynomial) -> WeylPolynomial:
    if poly.frame is Frame.SPLIT:
        poly = substitute_linear(poly, "canonical-rotation-inverse")
    if poly.frame is Frame.KVN:
        poly = substitute_linear(poly, "kvn-relabel-inverse")
    return poly


def apply_weyl_operator(
    poly: WeylPolynomial, field: PhaseSpaceField, rho: float, rhodot: float, k: float
) -> np.ndarray:
    """A psi for an operator polynomial A in any frame.

    Each normal-ordered monomial x^a p^b lambda_x^c lambda_p^d acts right to
    left: the lambda powers as multipliers on the double spectral grid, then
    x^a p^b on the grid.
    """
    liouville = to_liouville_frame(poly)
    grid = field.grid
    x, p = grid.x_column, grid.p_row
    kx, kp = grid.kappa_x_column, grid.kappa_p_row
    spectrum = _fft2(field.values)

    result = np.zeros(grid.shape, dtype=complex)
    for (a, b, c, d), coefficient in liouville.items():
        value = coefficient.evaluate(rho, rhodot, k)
        if value == 0:
            continue
        if c or d:
            term = _ifft2(spectrum * (kx ** c) * (kp ** d))
        else:
            term = field.values
        result += value * (x ** a) * (p ** b) * term
    return result


def expectation_operator(
    poly: WeylPolynomial, field: PhaseSpaceField, rho: float, rhodot: float, k: float
) -> complex:
    applied = apply_weyl_operator(poly, field, rho, rhodot, k)
    return complex(np.vdot(field.values, applied)) * field.grid.cell_area


# ============================================================
# Parseval self-test
# ============================================================

@lru_cache(maxsize=None)
def check_parseval(grid: PhaseSpaceGrid) -> float:
    """Relative mismatch of the real-space and spectral norms of a random field."""
    rng = np.random.default_rng(PARSEVAL_SEED)
    values = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    direct = float(np.sum(np.abs(values) ** 2)) * grid.cell_area
    spectral = float(np.sum(np.abs(_fft2(values)) ** 2)) * grid.spectral_weight
    mismatch = abs(direct - spectral) / direct
    if mismatch > PARSEVAL_TOLERANCE:
        raise ParsevalSelfTestError(
            f"Parseval check failed on {grid.describe()}: relative mismatch {mismatch:.3e}"
        )
    logger.debug("Parseval self-test on %s: mismatch %.2e", grid.describe(), mismatch)
    return mismatch
