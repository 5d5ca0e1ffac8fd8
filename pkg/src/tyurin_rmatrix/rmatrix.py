"""Scalar r-matrix r_jk(z, w) dw on the elliptic curve and its 4-index tensor.

    r_jk(z, w) = delta_jk (E(z - w) + E(w))
                 - sum_a pi_k^a alpha_a^j (E(z - q_a) + E(q_a))

with pi = alpha^{-1} (``pi[k, a]``).  The full r-matrix differential is
``sum r_jk e_ij (x) e_ki``, i.e. component (i, j, k, l) equals
``delta_li r_jk``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import dual
from .contour import laurent_coefficients
from .dual import value
from .errors import PoleError, SingularSystemError
from .theta import DEFAULT_CONTROL, SeriesControl, log_derivative_E, torus_distance

READINGS = ("standard", "transposed")


@dataclass(frozen=True)
class HoloBasis:
    """Constant holomorphic differentials u_a(w) dw dual to the Tyurin vectors.

    ``pi`` is the inverse of the alpha matrix; ``u[a, i] = pi[i, a]``.
    """

    pi: np.ndarray

    @property
    def u(self) -> np.ndarray:
        return self.pi.T

    def __call__(self, w) -> np.ndarray:
        """u_{ai}(w); independent of w in genus one."""
        w = np.asarray(w)
        return np.broadcast_to(self.u, w.shape + self.u.shape)


def holo_basis(alpha, cond_max: float = 1e8) -> HoloBasis:
    alpha = np.asarray(alpha, dtype=complex)
    cond = float(np.linalg.cond(alpha))
    if not cond < cond_max:
        raise SingularSystemError(f"alpha is ill-conditioned (cond={cond:.3e})", cond)
    return HoloBasis(np.linalg.inv(alpha))


def _check(state, z, w, guard):
    curve = state.curve
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    q = np.asarray(value(state.q))
    if np.any(torus_distance(z - w, 0.0, curve) < guard):
        raise PoleError("r-matrix evaluated at w = z")
    if np.any(torus_distance(w, 0.0, curve) < guard):
        raise PoleError("r-matrix evaluated at w = 0")
    if np.any(torus_distance(z[..., None], q, curve) < guard):
        raise PoleError("r-matrix evaluated at z = q_a")


def r_scalar(state, z, w, ctrl: SeriesControl = DEFAULT_CONTROL, reading: str = "standard"):
    """Matrix ``r[..., j, k] = r_jk(z, w)``; z and w broadcast against each other.

    ``w`` may coincide with a marked point (the null-vector conditions live
    there); poles are w = z, w = 0 and z = q_a.  ``reading="transposed"``
    swaps the index placement of the alpha/pi term.
    """
    if reading not in READINGS:
        raise ValueError(f"unknown index reading {reading!r}")
    _check(state, z, w, ctrl.pole_guard)
    curve = state.curve
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    n = value(state.q).shape[0]
    pi = dual.inv(state.alpha)
    diag = log_derivative_E(z - w, curve, ctrl) + log_derivative_E(w, curve, ctrl)
    zq = z[..., None] - state.q
    shifts = log_derivative_E(zq, curve, ctrl) + log_derivative_E(state.q, curve, ctrl)
    # (alpha^T diag(shifts) pi^T)[j, k] = sum_a alpha_a^j shifts_a pi_k^a
    second = dual.matmul(state.alpha.T * shifts[..., None, :], pi.T)
    if reading == "transposed":
        second = second.T if isinstance(second, dual.Dual) else np.swapaxes(second, -1, -2)
    return np.asarray(diag)[..., None, None] * np.eye(n) - second


def r_tensor(state, z, w, ctrl: SeriesControl = DEFAULT_CONTROL, reading: str = "standard"):
    """Component [..., i, j, k, l] = delta_li r_jk(z, w)."""
    r = value(r_scalar(state, z, w, ctrl, reading))
    n = r.shape[-1]
    return np.einsum("li,...jk->...ijkl", np.eye(n), r)


@dataclass(frozen=True)
class RLaurent:
    res: np.ndarray
    r0: np.ndarray
    r1: np.ndarray


def r_laurent_in_z(state, a: int, w, radius: float | None = None,
                   ctrl: SeriesControl = DEFAULT_CONTROL, reading: str = "standard",
                   rtol: float = 1e-11) -> RLaurent:
    """z-Laurent data of r(., w) at ``q_a``; ``w`` may be an array of points.

    The circle must isolate q_a from the other marked points and from every
    requested w.
    """
    curve = state.curve
    q = np.asarray(value(state.q))
    center = complex(q[a])
    w = np.asarray(w, dtype=complex)
    others = [q[b] for b in range(q.size) if b != a]
    seps = [torus_distance(np.array(others), center, curve)] if others else []
    nearest = min([float(np.min(s)) for s in seps] + [float(np.min(torus_distance(w, center, curve)))])
    if radius is None:
        radius = nearest / 3
    if not radius < nearest:
        raise ValueError(f"radius {radius:g} does not isolate q_{a} (nearest singularity {nearest:g})")

    def f(zs):
        zs = zs.reshape(zs.shape + (1,) * w.ndim)
        return value(r_scalar(state, zs, w, ctrl, reading))

    c = laurent_coefficients(f, center, radius, (-1, 0, 1), rtol=rtol)
    return RLaurent(c[-1], c[0], c[1])
