"""Meromorphic vector-valued differentials on the torus from their singular parts.

An elliptic differential with simple and double poles is assembled from the
atoms ``E(z - p)`` (leading term ``1/(z-p)``) and ``-E'(z - p)`` (leading
term ``1/(z-p)^2``) plus a constant vector; the residues must sum to zero.
The constant is then fixed by ``n`` linear conditions pairing the regular
part at each Tyurin point ``q_a`` with ``alpha_a``.  In genus one the
holomorphic differentials are the constants, so the interpolation matrix
is the alpha matrix itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import EllipticityError, SingularSystemError
from .theta import (
    DEFAULT_CONTROL,
    CurveModulus,
    SeriesControl,
    e_regular_coefficient,
    log_derivative_E,
    log_derivative_E_prime,
    reduce_mod_lattice,
    torus_distance,
)


@dataclass(frozen=True)
class SingularPart:
    pole: complex
    order1: np.ndarray
    order2: np.ndarray | None = None

    def __post_init__(self):
        o1 = np.atleast_1d(np.asarray(self.order1, dtype=complex))
        o2 = np.zeros_like(o1) if self.order2 is None else np.atleast_1d(np.asarray(self.order2, dtype=complex))
        if o1.shape != o2.shape:
            raise ValueError("order1 and order2 must have the same shape")
        object.__setattr__(self, "pole", complex(self.pole))
        object.__setattr__(self, "order1", o1)
        object.__setattr__(self, "order2", o2)


@dataclass(frozen=True)
class MeromorphicDifferential:
    """Callable z -> vector value of an elliptic differential ``v(z) dz``."""

    sing: tuple[SingularPart, ...]
    const: np.ndarray
    curve: CurveModulus
    ctrl: SeriesControl = field(default=DEFAULT_CONTROL, repr=False)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.broadcast_to(self.const, z.shape + self.const.shape).astype(complex)
        for s in self.sing:
            e = np.asarray(log_derivative_E(z - s.pole, self.curve, self.ctrl))
            out = out + e[..., None] * s.order1
            if np.any(s.order2):
                de = np.asarray(log_derivative_E_prime(z - s.pole, self.curve, self.ctrl))
                out = out - de[..., None] * s.order2
        return out

    def regular_part(self, point: complex) -> np.ndarray:
        """Constant Laurent coefficient at ``point`` (the value if regular there)."""
        c1 = e_regular_coefficient(self.curve, self.ctrl)
        out = self.const.astype(complex).copy()
        for s in self.sing:
            d0, _, k = reduce_mod_lattice(point - s.pole, self.curve)
            if abs(d0) < 1e-12:
                # E(u + m + k tau) = E(u) - 2 pi i k, and E(u) - 1/u -> 0
                out = out - 2j * np.pi * k * s.order1 - c1 * s.order2
            else:
                out = out + log_derivative_E(point - s.pole, self.curve, self.ctrl) * s.order1
                out = out - log_derivative_E_prime(point - s.pole, self.curve, self.ctrl) * s.order2
        return out


def build_differential(sing: Sequence[SingularPart], const_term, curve: CurveModulus,
                       ctrl: SeriesControl = DEFAULT_CONTROL, tol: float = 1e-12) -> MeromorphicDifferential:
    const = np.atleast_1d(np.asarray(const_term, dtype=complex))
    sing = tuple(sing)
    for s in sing:
        if s.order1.shape != const.shape:
            raise ValueError("singular parts and constant term must share a shape")
    total = sum((s.order1 for s in sing), np.zeros_like(const))
    scale = max([1.0] + [float(np.abs(s.order1).max()) for s in sing])
    if np.abs(total).max() > tol * scale:
        raise EllipticityError(f"residues sum to {total}, not zero; no elliptic differential exists")
    return MeromorphicDifferential(sing, const, curve, ctrl)


@dataclass(frozen=True)
class KricheverProblem:
    sing: tuple[SingularPart, ...]
    alpha: np.ndarray
    q: np.ndarray
    b: np.ndarray
    curve: CurveModulus

    def __post_init__(self):
        alpha = np.asarray(self.alpha, dtype=complex)
        q = np.asarray(self.q, dtype=complex).reshape(-1)
        b = np.asarray(self.b, dtype=complex).reshape(-1)
        n = q.size
        if alpha.shape != (n, n) or b.shape != (n,):
            raise ValueError("alpha must be n x n and b must have n entries")
        if np.any(np.abs(alpha).max(axis=1) == 0):
            raise ValueError("Tyurin vectors must be nonzero")
        for a in range(n):
            for c in range(a + 1, n):
                if torus_distance(q[a], q[c], self.curve) < 1e-12:
                    raise ValueError("Tyurin points must be distinct modulo the lattice")
        object.__setattr__(self, "sing", tuple(self.sing))
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "b", b)


def m_matrix(alpha, q) -> np.ndarray:
    """Genus-one interpolation matrix M[a, i] = mu(q_a) alpha_a^i with mu = 1."""
    alpha = np.asarray(alpha, dtype=complex)
    mu = np.ones(np.asarray(q).shape[0])
    return mu[:, None] * alpha


def m_condition(alpha, q) -> float:
    m = m_matrix(alpha, q)
    if m.size == 0 or np.linalg.matrix_rank(m) < m.shape[0]:
        return float("inf")
    return float(np.linalg.cond(m))


def solve_krichever(prob: KricheverProblem, ctrl: SeriesControl = DEFAULT_CONTROL,
                    cond_max: float = 1e10) -> MeromorphicDifferential:
    """Unique differential with the prescribed singular parts and
    ``alpha_a . v|_regular at q_a = b_a`` for every a."""
    n = prob.q.size
    base = build_differential(prob.sing, np.zeros(n, complex), prob.curve, ctrl)
    cond = m_condition(prob.alpha, prob.q)
    if not cond < cond_max:
        raise SingularSystemError(f"interpolation matrix is singular (cond={cond:.3e})", cond)
    reg = np.array([prob.alpha[a] @ base.regular_part(prob.q[a]) for a in range(n)])
    h = np.linalg.solve(m_matrix(prob.alpha, prob.q), prob.b - reg)
    return MeromorphicDifferential(base.sing, h, prob.curve, ctrl)


def lax_column_problem(state, j: int) -> KricheverProblem:
    """Singular data and eigenvector conditions defining column j of L."""
    n = state.q.size
    T = state.beta.T @ state.alpha
    sing = [SingularPart(state.q[a], state.beta[a] * state.alpha[a, j]) for a in range(n)]
    sing.append(SingularPart(0.0, -T[:, j]))
    b = state.p * state.alpha[:, j]
    return KricheverProblem(tuple(sing), state.alpha, state.q, b, state.curve)


def r_row_problem(state, z0: complex, j: int) -> KricheverProblem:
    """Singular data in w and null-vector conditions defining w -> r_j.(z0, w)."""
    n = state.q.size
    e = np.eye(n)[j]
    sing = (SingularPart(0.0, e), SingularPart(z0, -e))
    return KricheverProblem(sing, state.alpha, state.q, np.zeros(n), state.curve)


def reconstruct_lax(state, ctrl: SeriesControl = DEFAULT_CONTROL):
    """Evaluator z -> L(z) assembled column by column from the solver."""
    cols = [solve_krichever(lax_column_problem(state, j), ctrl) for j in range(state.q.size)]
    return lambda z: np.stack([c(z) for c in cols], axis=-1)


def reconstruct_r(state, z0: complex, ctrl: SeriesControl = DEFAULT_CONTROL):
    """Evaluator w -> r(z0, w) (matrix [j, k]) assembled row by row from the solver."""
    rows = [solve_krichever(r_row_problem(state, z0, j), ctrl) for j in range(state.q.size)]
    return lambda w: np.stack([r(w) for r in rows], axis=-2)
