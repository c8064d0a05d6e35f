# propagator/characteristics.py
# Exact Liouville transport used as an oracle for the split-step propagator:
# psi(z, t1) = psi0(Phi(t0 <- t1) z), Phi the flow of Hill's equation.

from __future__ import annotations

import logging

import numpy as np
from scipy.interpolate import RectBivariateSpline

from dynamics.hill import IntegrationError, fundamental_matrix
from dynamics.profiles import StiffnessProfile
from errors import LabError
from propagator.field import PhaseSpaceField

logger = logging.getLogger(__name__)

# periodic copies on each side so the spline stencil never sees an edge
_PAD = 4


class CharacteristicsError(LabError):
    def __init__(self, message: str, *, node: tuple[int, int] | None = None) -> None:
        super().__init__(message if node is None else f"{message} at node {node}")
        self.node = node


def backward_map(
    profile: StiffnessProfile,
    t0: float,
    t1: float,
    *,
    rtol: float | None = None,
    atol: float | None = None,
) -> np.ndarray:
    """2x2 matrix taking (x, p) at t1 to the foot of its characteristic at t0."""
    try:
        return fundamental_matrix(profile, t1, t0, rtol=rtol, atol=atol)
    except IntegrationError as exc:
        raise CharacteristicsError(f"backward flow from t={t1} to t={t0} failed: {exc}") from exc


def _periodic_spline_sampler(field: PhaseSpaceField):
    grid = field.grid
    x = np.concatenate([grid.x[-_PAD:] - 2 * grid.l_x, grid.x, grid.x[:_PAD] + 2 * grid.l_x])
    p = np.concatenate([grid.p[-_PAD:] - 2 * grid.l_p, grid.p, grid.p[:_PAD] + 2 * grid.l_p])
    padded = np.pad(field.values, _PAD, mode="wrap")
    real = RectBivariateSpline(x, p, padded.real, kx=3, ky=3)
    imag = RectBivariateSpline(x, p, padded.imag, kx=3, ky=3)

    def sample(xq: np.ndarray, pq: np.ndarray) -> np.ndarray:
        xq = np.mod(xq + grid.l_x, 2 * grid.l_x) - grid.l_x
        pq = np.mod(pq + grid.l_p, 2 * grid.l_p) - grid.l_p
        return real.ev(xq, pq) + 1j * imag.ev(xq, pq)

    return sample


def solve_characteristics(
    field0: PhaseSpaceField,
    profile: StiffnessProfile,
    t1: float,
    *,
    rtol: float | None = None,
    atol: float | None = None,
) -> PhaseSpaceField:
    """psi at t1 by backward characteristics.

    Gaussian initial data are evaluated in closed form at the feet of the
    characteristics; other fields are interpolated with periodic bicubic
    splines.
    """
    grid = field0.grid
    matrix = backward_map(profile, field0.time, t1, rtol=rtol, atol=atol)
    x, p = grid.mesh()
    x_foot = matrix[0, 0] * x + matrix[0, 1] * p
    p_foot = matrix[1, 0] * x + matrix[1, 1] * p

    finite = np.isfinite(x_foot) & np.isfinite(p_foot)
    if not np.all(finite):
        bad = np.argwhere(~finite)[0]
        raise CharacteristicsError("non-finite characteristic foot", node=(int(bad[0]), int(bad[1])))

    if field0.packet is not None:
        values = field0.packet.evaluate(x_foot, p_foot)
        logger.debug("Characteristics oracle: closed-form Gaussian at t=%g", t1)
    else:
        values = _periodic_spline_sampler(field0)(x_foot, p_foot)
        logger.debug("Characteristics oracle: bicubic interpolation at t=%g", t1)
    return PhaseSpaceField(grid, values, t1)
