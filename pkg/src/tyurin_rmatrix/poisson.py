"""Canonical Poisson brackets in chart coordinates and the Yang-Baxter check.

Phase-space functions are callables ``f(state)`` taking a
:class:`~tyurin_rmatrix.phase_space.PhaseArrays` (whose entries may be duals)
and returning a scalar or an array.  Derivatives come from forward-mode dual
arithmetic; central differences with one Richardson step serve as the
independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import dual
from .dual import Dual, value
from .errors import DifferentiationMismatch
from .lax import lax
from .phase_space import Chart, ExtendedPhasePoint, chart_arrays, chart_coordinates
from .rmatrix import r_scalar
from .theta import DEFAULT_CONTROL, SeriesControl

PhaseFunction = Callable[[object], object]


@dataclass(frozen=True)
class BracketConvention:
    """Signs of the canonical pairs: {q_a, p_a} = +1, {alpha, beta} = ``alpha_beta``."""

    alpha_beta: int = 1

    def flipped(self) -> "BracketConvention":
        return BracketConvention(-self.alpha_beta)


DEFAULT_CONVENTION = BracketConvention()


@dataclass(frozen=True)
class DerivativeBundle:
    labels: tuple[tuple, ...]
    value: np.ndarray
    jacobian: np.ndarray  # value.shape + (K,)

    @property
    def partials(self) -> dict[tuple, np.ndarray]:
        return {lab: self.jacobian[..., k] for k, lab in enumerate(self.labels)}

    def __getitem__(self, label) -> np.ndarray:
        return self.jacobian[..., self.labels.index(tuple(label))]


def default_chart(x: ExtendedPhasePoint) -> Chart:
    return Chart.uniform(x.n, 0)


def _dual_jacobian(f: PhaseFunction, coords: np.ndarray, chart: Chart, curve):
    out = f(chart_arrays(Dual.variables(coords), chart, curve))
    return value(out), dual.jacobian(out, coords.size)


def _fd_jacobian(f: PhaseFunction, coords: np.ndarray, chart: Chart, curve, step: float):
    def ev(c):
        return np.asarray(value(f(chart_arrays(c, chart, curve))))

    val = ev(coords)
    cols = []
    for k in range(coords.size):
        e = np.zeros(coords.size, complex)
        e[k] = 1.0

        def central(h):
            return (ev(coords + h * e) - ev(coords - h * e)) / (2 * h)

        coarse = central(step)
        fine = central(step / 2)
        cols.append((4 * fine - coarse) / 3)
    return val, np.stack(cols, axis=-1)


def differentiate(f: PhaseFunction, x: ExtendedPhasePoint, chart: Chart | None = None,
                  method: str = "dual", step: float = 1e-5) -> DerivativeBundle:
    """Partial derivatives of ``f`` with respect to the canonical chart coordinates."""
    chart = chart or default_chart(x)
    coords = chart_coordinates(x, chart)
    if method == "dual":
        val, jac = _dual_jacobian(f, coords, chart, x.curve)
    elif method == "fd":
        val, jac = _fd_jacobian(f, coords, chart, x.curve, step)
    else:
        raise ValueError(f"unknown differentiation method {method!r}")
    return DerivativeBundle(tuple(chart.labels()), np.asarray(val), np.asarray(jac))


def derivative_disagreement(f: PhaseFunction, x: ExtendedPhasePoint,
                            chart: Chart | None = None, rtol: float = 1e-5,
                            raise_on_mismatch: bool = True) -> float:
    """Largest dual-vs-finite-difference discrepancy relative to the largest partial."""
    chart = chart or default_chart(x)
    ad = differentiate(f, x, chart, "dual")
    fd = differentiate(f, x, chart, "fd")
    scale = max(float(np.abs(ad.jacobian).max(initial=0.0)), 1e-300)
    per_coord = np.abs(ad.jacobian - fd.jacobian).reshape(-1, len(ad.labels)).max(axis=0) / scale
    worst = int(np.argmax(per_coord)) if per_coord.size else 0
    err = float(per_coord[worst]) if per_coord.size else 0.0
    if raise_on_mismatch and err > rtol:
        raise DifferentiationMismatch(
            f"derivative methods disagree on {ad.labels[worst]}: relative {err:.2e} > {rtol:g}"
        )
    return err


def symplectic_matrix(chart: Chart, convention: BracketConvention = DEFAULT_CONVENTION) -> np.ndarray:
    """Omega with {c_K, c_M} = Omega[K, M] for the chart's coordinate ordering."""
    n = chart.n
    m = n * (n - 1)
    om = np.zeros((chart.dimension, chart.dimension))
    for a in range(n):
        om[a, n + a] = 1.0
        om[n + a, a] = -1.0
    for k in range(m):
        om[2 * n + k, 2 * n + m + k] = convention.alpha_beta
        om[2 * n + m + k, 2 * n + k] = -convention.alpha_beta
    return om


def bracket_from_jacobians(jf: np.ndarray, jg: np.ndarray, chart: Chart,
                           convention: BracketConvention = DEFAULT_CONVENTION) -> np.ndarray:
    om = symplectic_matrix(chart, convention)
    return np.tensordot(jf @ om, jg, axes=([-1], [-1]))


def bracket(f: PhaseFunction, g: PhaseFunction, x: ExtendedPhasePoint,
            chart: Chart | None = None,
            convention: BracketConvention = DEFAULT_CONVENTION, method: str = "dual"):
    """{f, g}; array-valued f, g give an array of shape f.shape + g.shape."""
    chart = chart or default_chart(x)
    jf = differentiate(f, x, chart, method).jacobian
    jg = differentiate(g, x, chart, method).jacobian
    out = bracket_from_jacobians(jf, jg, chart, convention)
    return complex(out) if out.ndim == 0 else out


def yang_baxter_rhs(r_zw: np.ndarray, r_wz: np.ndarray, Lz: np.ndarray, Lw: np.ndarray) -> np.ndarray:
    """[r(z,w), L_1(z)] - [r_21(w,z), L_2(w)] for general 4-index r."""
    return (
        np.einsum("imkl,mj->ijkl", r_zw, Lz)
        - np.einsum("im,mjkl->ijkl", Lz, r_zw)
        - np.einsum("kmij,ml->ijkl", r_wz, Lw)
        + np.einsum("km,mlij->ijkl", Lw, r_wz)
    )


def scalar_yang_baxter_rhs(r_zw: np.ndarray, r_wz: np.ndarray, Lz: np.ndarray, Lw: np.ndarray) -> np.ndarray:
    """The same right-hand side written through the scalar matrix r_jk."""
    eye = np.eye(Lz.shape[-1])
    return (
        np.einsum("il,mk,mj->ijkl", eye, r_zw, Lz)
        - np.einsum("il,jk->ijkl", Lz, r_zw)
        - np.einsum("kj,mi,ml->ijkl", eye, r_wz, Lw)
        + np.einsum("kj,li->ijkl", Lw, r_wz)
    )


@dataclass(frozen=True)
class BracketTensor:
    D: np.ndarray
    R: np.ndarray

    @property
    def residual(self) -> float:
        """max|D - R| / max(1, max|D|)."""
        return float(np.abs(self.D - self.R).max() / max(1.0, np.abs(self.D).max()))


def lax_jacobians(x: ExtendedPhasePoint, points, chart: Chart,
                  ctrl: SeriesControl = DEFAULT_CONTROL, method: str = "dual") -> DerivativeBundle:
    pts = np.asarray(points, dtype=complex)
    return differentiate(lambda s: lax(s, pts, ctrl), x, chart, method)


def bracket_tensor(x: ExtendedPhasePoint, z: complex, w: complex, chart: Chart | None = None,
                   convention: BracketConvention = DEFAULT_CONVENTION, reading: str = "standard",
                   ctrl: SeriesControl = DEFAULT_CONTROL, method: str = "dual") -> BracketTensor:
    """D_ijkl = {L_ij(z), L_kl(w)} and its r-matrix prediction R_ijkl."""
    chart = chart or default_chart(x)
    bundle = lax_jacobians(x, [z, w], chart, ctrl, method)
    D = bracket_from_jacobians(bundle.jacobian[0], bundle.jacobian[1], chart, convention)
    Lz, Lw = bundle.value[0], bundle.value[1]
    R = scalar_yang_baxter_rhs(
        r_scalar(x, z, w, ctrl, reading), r_scalar(x, w, z, ctrl, reading), Lz, Lw
    )
    return BracketTensor(D, R)


def trace_power(z: complex, k: int, ctrl: SeriesControl = DEFAULT_CONTROL) -> PhaseFunction:
    def f(state):
        return dual.trace(dual.matrix_power(lax(state, z, ctrl), k))

    return f


def involution_check(x: ExtendedPhasePoint, z: complex, w: complex, k: int = 2,
                     chart: Chart | None = None,
                     convention: BracketConvention = DEFAULT_CONVENTION,
                     ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """{tr L(z)^k, tr L(w)^k} computed directly from the canonical bracket."""
    if k not in (2, 3):
        raise ValueError("k must be 2 or 3")
    return bracket(trace_power(z, k, ctrl), trace_power(w, k, ctrl), x, chart, convention)
