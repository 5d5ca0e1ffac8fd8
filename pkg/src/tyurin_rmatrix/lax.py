"""Closed-form Krichever Lax differential on the elliptic curve.

    L(z) = pi . Lt(z) . alpha,      pi = alpha^{-1}
    Lt_aa = p_a
    Lt_ab(z) = (alpha beta^T)_ab  theta(z-q_a) theta(z+q_a-q_b) theta(q_b) theta'(0)
                                  / (theta(z) theta(z-q_b) theta(q_b-q_a) theta(q_a))

The extra pole sits at the origin.  ``state`` arguments are anything with
``q, p, alpha, beta, curve`` attributes: a validated
:class:`~tyurin_rmatrix.phase_space.ExtendedPhasePoint` or a
:class:`~tyurin_rmatrix.phase_space.PhaseArrays` holding duals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import dual
from .contour import laurent_coefficients
from .dual import value
from .errors import PoleError
from .theta import DEFAULT_CONTROL, SeriesControl, theta, theta_prime_zero, torus_distance


@dataclass(frozen=True)
class LaurentData:
    residue: np.ndarray
    L0: np.ndarray
    L1: np.ndarray
    center: complex
    radius: float


def poles(state) -> np.ndarray:
    """Pole locations: the marked points followed by the origin."""
    return np.concatenate([np.asarray(value(state.q)), [0.0]])


def check_regular(state, z, guard: float) -> None:
    z = np.asarray(z, dtype=complex)
    d = torus_distance(z[..., None], poles(state), state.curve)
    if np.any(np.asarray(d) < guard):
        raise PoleError(f"Lax differential evaluated at (or within {guard:g} of) a pole")


def coupling_ratio(state, z, ctrl: SeriesControl = DEFAULT_CONTROL):
    """The theta-function ratio multiplying (alpha beta^T)_ab, diagonal set to 0."""
    curve = state.curve
    q = state.q
    n = value(q).shape[0]
    eye = np.eye(n)
    zz = np.asarray(z, dtype=complex)[..., None, None]
    qa = q[:, None]
    qb = q[None, :]
    # one batched theta evaluation for all seven factors
    args = [zz - qa, zz + qa - qb, qb, zz, zz - qb, qb - qa + 0.5 * eye, qa]
    flat, shapes = dual.ravel_concat(args)
    t_zqa, t_shift, t_qb, t_z, t_zqb, t_diff, t_qa = dual.split_as(theta(flat, curve, ctrl), shapes)
    num = t_zqa * t_shift * t_qb * theta_prime_zero(curve, ctrl)
    # 0.5 on the diagonal keeps theta(q_b - q_a) away from its zero; masked below
    den = t_z * t_zqb * t_diff * t_qa
    return (num / den) * (1.0 - eye)


def lax_tilde(state, z, ctrl: SeriesControl = DEFAULT_CONTROL):
    """Lax matrix in the basis dual to the Tyurin vectors: alpha L alpha^{-1}."""
    n = value(state.q).shape[0]
    eye = np.eye(n)
    coupling = dual.matmul(state.alpha, state.beta.T)
    return coupling * coupling_ratio(state, z, ctrl) + eye * state.p[None, :]


def lax(state, z, ctrl: SeriesControl = DEFAULT_CONTROL):
    """L(z) as an (..., n, n) array for scalar or array ``z``.

    Raises :class:`PoleError` if any ``z`` is within ``ctrl.pole_guard`` of
    a marked point or of the origin.
    """
    check_regular(state, z, ctrl.pole_guard)
    lt = lax_tilde(state, z, ctrl)
    return dual.matmul(dual.matmul(dual.inv(state.alpha), lt), state.alpha)


def default_radius(state, center: complex) -> float:
    """A quarter of the distance from ``center`` to the nearest other pole."""
    others = [pt for pt in poles(state) if torus_distance(pt, center, state.curve) > 1e-12]
    return 0.25 * float(np.min(torus_distance(np.array(others), center, state.curve)))


def _check_radius(state, center: complex, radius: float, ctrl: SeriesControl) -> None:
    others = [pt for pt in poles(state) if torus_distance(pt, center, state.curve) > 1e-12]
    nearest = float(np.min(torus_distance(np.array(others), center, state.curve)))
    # the circle must also stay inside the fundamental domain around its centre
    limit = min(nearest, 0.5 * min(1.0, state.curve.tau.imag))
    if not (10 * ctrl.pole_guard < radius < limit):
        raise ValueError(f"contour radius {radius:g} infeasible (must lie in "
                         f"({10 * ctrl.pole_guard:g}, {limit:g}))")


def laurent_at(state, a: int, radius: float | None = None,
               ctrl: SeriesControl = DEFAULT_CONTROL, rtol: float = 1e-11) -> LaurentData:
    """Residue, constant and linear Laurent coefficients of L at ``q_a``."""
    center = complex(value(state.q)[a])
    return _laurent(state, center, radius, ctrl, rtol)


def _laurent(state, center, radius, ctrl, rtol):
    if radius is None:
        radius = default_radius(state, center)
    _check_radius(state, center, radius, ctrl)
    c = laurent_coefficients(lambda z: lax(state, z, ctrl), center, radius, (-1, 0, 1), rtol=rtol)
    return LaurentData(c[-1], c[0], c[1], center, radius)


def residue_at_origin(state, radius: float | None = None,
                      ctrl: SeriesControl = DEFAULT_CONTROL, rtol: float = 1e-11) -> np.ndarray:
    return _laurent(state, 0.0, radius, ctrl, rtol).residue
