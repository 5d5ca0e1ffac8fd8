"""Gauge compensator, dressed Lax matrix, dressed r-matrix and the spin
Calogero-Moser constraint.

With as many marked points as the rank, the slice fixes the Tyurin matrix to
a multiple of the identity: ``G(alpha) = det(A)^{-1/n} A`` maps ``A`` to
``det(A)^{1/n} * I``.  Only the off-diagonal minor conditions can be imposed
this way; the residual diagonal torus is left unfixed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import dual
from .dual import value
from .lax import lax
from .phase_space import Chart, ExtendedPhasePoint, moment_map
from .poisson import DEFAULT_CONVENTION, BracketConvention, bracket
from .rmatrix import r_tensor
from .theta import DEFAULT_CONTROL, SeriesControl


@dataclass(frozen=True)
class GaugeSlice:
    indices: tuple[int, ...]
    kind: str = "diagonal_minor"

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if self.kind != "diagonal_minor":
            raise ValueError(f"unsupported slice kind {self.kind!r}")
        if len(set(idx)) != len(idx) or any(i < 0 for i in idx) or list(idx) != sorted(idx):
            raise ValueError("slice indices must be distinct, non-negative and increasing")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def full(cls, n: int) -> "GaugeSlice":
        return cls(tuple(range(n)))


@dataclass(frozen=True)
class OrbitPoint:
    eta: np.ndarray

    def __post_init__(self):
        eta = np.asarray(self.eta, dtype=complex)
        if eta.ndim != 2 or eta.shape[0] != eta.shape[1]:
            raise ValueError("eta must be a square matrix")
        if abs(np.trace(eta)) > 1e-12 * max(1.0, np.abs(eta).max()):
            raise ValueError("orbit coordinates must be traceless")
        object.__setattr__(self, "eta", eta)


def _minor(alpha, gslice: GaugeSlice):
    n = value(alpha).shape[-1]
    if len(gslice.indices) != n or max(gslice.indices) >= value(alpha).shape[0]:
        raise ValueError("slice must select n rows of the alpha matrix")
    if isinstance(alpha, dual.Dual):
        return alpha[list(gslice.indices)]
    return np.asarray(alpha)[list(gslice.indices)]


def nth_root(d: complex, n: int, reference: complex | None = None) -> tuple[complex, bool]:
    """n-th root of ``d``: principal, or the branch closest to ``reference``.

    The flag reports whether continuation left the principal branch.
    """
    principal = complex(d) ** (1.0 / n)
    if reference is None:
        return principal, False
    roots = principal * np.exp(2j * np.pi * np.arange(n) / n)
    best = complex(roots[np.argmin(np.abs(roots - reference))])
    return best, not np.isclose(best, principal)


def compensator(alpha, gslice: GaugeSlice | None = None):
    """G(alpha) = det(A)^{-1/n} A (principal branch); A is the selected minor."""
    n = value(alpha).shape[-1]
    gslice = gslice or GaugeSlice.full(n)
    A = _minor(alpha, gslice)
    d = dual.det(A)
    if abs(complex(value(d))) == 0:
        raise ValueError("alpha minor is singular")
    return A * (d ** (-1.0 / n))


def dressed_lax(state, z, gslice: GaugeSlice | None = None, ctrl: SeriesControl = DEFAULT_CONTROL):
    """l^G(z) = G(alpha) L(z) G(alpha)^{-1}; invariant under the SL_n action."""
    G = compensator(state.alpha, gslice)
    return dual.matmul(dual.matmul(G, lax(state, z, ctrl)), dual.inv(G))


def on_slice(x: ExtendedPhasePoint, gslice: GaugeSlice | None = None, tol: float = 1e-10) -> bool:
    G = compensator(x.alpha, gslice)
    return bool(np.abs(G - np.eye(x.n)).max() <= tol)


def compensator_bracket(x: ExtendedPhasePoint, w: complex, gslice: GaugeSlice | None = None,
                        chart: Chart | None = None,
                        convention: BracketConvention = DEFAULT_CONVENTION,
                        ctrl: SeriesControl = DEFAULT_CONTROL) -> np.ndarray:
    """{G_ij(alpha), L_kl(w)} as an [i, j, k, l] array."""
    chart = chart or Chart.diagonal(x.n)
    return bracket(lambda s: compensator(s.alpha, gslice), lambda s: lax(s, w, ctrl), x, chart, convention)


def r_hitchin(x: ExtendedPhasePoint, z: complex, w: complex, gslice: GaugeSlice | None = None,
              chart: Chart | None = None, convention: BracketConvention = DEFAULT_CONVENTION,
              ctrl: SeriesControl = DEFAULT_CONTROL, tol: float = 1e-10) -> np.ndarray:
    """r(z, w) + {G_1(alpha), L_2(w)} at a slice point (G(alpha) = identity)."""
    if not on_slice(x, gslice, tol):
        raise ValueError("r_hitchin requires a point on the gauge slice (G(alpha) = identity)")
    return r_tensor(x, z, w, ctrl) + compensator_bracket(x, w, gslice, chart, convention, ctrl)


def spin_cm_residual(x, orbit: OrbitPoint) -> float:
    """max |sum_a beta_a^i alpha_a^j + eta_ij|."""
    return float(np.abs(value(moment_map(x)) + orbit.eta).max())
