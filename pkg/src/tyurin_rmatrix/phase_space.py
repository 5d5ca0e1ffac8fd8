"""Points of the unreduced phase space over the elliptic curve.

A point is ``n`` marked points ``q_a`` with momenta ``p_a`` and, for each
marked point, a Tyurin vector ``alpha_a`` and a conjugate vector ``beta_a``
with ``beta_a . alpha_a = 0``.  Arrays are stored with the point index first:
``alpha[a, i]`` is component ``i`` of the vector attached to ``q_a``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
from scipy.linalg import null_space

from .dual import Dual, value
from .errors import ConstraintError
from .theta import CurveModulus, torus_distance

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Genericity:
    """Checkable thresholds standing in for 'generic' Tyurin data."""

    delta_min: float = 1e-3
    cond_max: float = 1e8
    constraint_tol: float = 1e-12


DEFAULT_GENERICITY = Genericity()


class PhaseArrays(NamedTuple):
    """Unvalidated coordinate arrays; entries may be :class:`Dual`."""

    q: object
    p: object
    alpha: object
    beta: object
    curve: CurveModulus


@dataclass(frozen=True, eq=False)
class ExtendedPhasePoint:
    q: np.ndarray
    p: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    curve: CurveModulus
    genericity: Genericity = field(default=DEFAULT_GENERICITY, repr=False)

    def __post_init__(self):
        q = np.array(self.q, dtype=complex).reshape(-1)
        n = q.size
        p = np.array(self.p, dtype=complex).reshape(-1)
        alpha = np.array(self.alpha, dtype=complex)
        beta = np.array(self.beta, dtype=complex)
        if n == 0 or p.shape != (n,) or alpha.shape != (n, n) or beta.shape != (n, n):
            raise ConstraintError(
                f"inconsistent shapes: q{q.shape} p{p.shape} alpha{alpha.shape} beta{beta.shape}"
            )
        for name, arr in (("q", q), ("p", p), ("alpha", alpha), ("beta", beta)):
            if not np.all(np.isfinite(arr)):
                raise ConstraintError(f"non-finite entries in {name}")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        _validate(q, alpha, beta, self.curve, self.genericity)

    @property
    def n(self) -> int:
        return self.q.size

    @property
    def arrays(self) -> PhaseArrays:
        return PhaseArrays(self.q, self.p, self.alpha, self.beta, self.curve)

    def replace(self, **changes) -> "ExtendedPhasePoint":
        fields = dict(q=self.q, p=self.p, alpha=self.alpha, beta=self.beta,
                      curve=self.curve, genericity=self.genericity)
        fields.update(changes)
        return ExtendedPhasePoint(**fields)

    def allclose(self, other: "ExtendedPhasePoint", atol: float = 1e-12) -> bool:
        return all(
            np.allclose(getattr(self, k), getattr(other, k), rtol=0, atol=atol)
            for k in ("q", "p", "alpha", "beta")
        )


def _validate(q, alpha, beta, curve, gen: Genericity) -> None:
    n = q.size
    pairing = np.einsum("ai,ai->a", beta, alpha)
    # rounding in the eliminated component scales like |beta_a| |alpha_a|
    scale = np.maximum(1.0, np.abs(beta).sum(axis=1) * np.abs(alpha).max(axis=1))
    bad = np.flatnonzero(np.abs(pairing) > gen.constraint_tol * scale)
    if bad.size:
        a = int(bad[0])
        raise ConstraintError(
            f"beta_{a} . alpha_{a} = {pairing[a]:.3e} violates the per-point constraint"
        )
    for a in range(n):
        if torus_distance(q[a], 0.0, curve) <= gen.delta_min:
            raise ConstraintError(f"q_{a} coincides with the origin modulo the lattice")
        for b in range(a + 1, n):
            if torus_distance(q[a], q[b], curve) <= gen.delta_min:
                raise ConstraintError(f"coincident points q_{a}, q_{b} modulo the lattice")
    cond = np.linalg.cond(alpha)
    if not cond < gen.cond_max:
        raise ConstraintError(f"alpha matrix singular or ill-conditioned (cond={cond:.3e})")


def new_point(q, p, alpha, beta, curve: CurveModulus,
              genericity: Genericity = DEFAULT_GENERICITY) -> ExtendedPhasePoint:
    return ExtendedPhasePoint(q, p, alpha, beta, curve, genericity)


def moment_map(x) -> np.ndarray:
    """T_ij = sum_a beta_a^i alpha_a^j (works on Dual arrays too)."""
    from .dual import matmul

    return matmul(x.beta.T, x.alpha)


def gauge_act(x: ExtendedPhasePoint, G, tol: float = 1e-10) -> ExtendedPhasePoint:
    """alpha_a -> alpha_a G^{-1}, beta_a -> G beta_a for G in SL_n."""
    G = np.asarray(G, dtype=complex)
    d = np.linalg.det(G)
    if abs(d - 1) >= tol:
        raise ValueError(f"gauge element must have unit determinant, det={d}")
    return x.replace(alpha=x.alpha @ np.linalg.inv(G), beta=x.beta @ G.T)


def rescale(x: ExtendedPhasePoint, a: int, lam: complex) -> ExtendedPhasePoint:
    if lam == 0:
        raise ValueError("rescaling factor must be nonzero")
    alpha = x.alpha.copy()
    beta = x.beta.copy()
    alpha[a] *= lam
    beta[a] /= lam
    return x.replace(alpha=alpha, beta=beta)


@dataclass(frozen=True)
class Chart:
    """Affine chart on each projective factor: ``alpha_a[pivot[a]]`` is set to 1
    and ``beta_a[pivot[a]]`` is eliminated through the per-point constraint."""

    pivot: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "pivot", tuple(int(i) for i in self.pivot))

    @classmethod
    def uniform(cls, n: int, index: int = 0) -> "Chart":
        return cls((index,) * n)

    @classmethod
    def diagonal(cls, n: int) -> "Chart":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.pivot)

    @property
    def dimension(self) -> int:
        return 2 * self.n * self.n

    def free_components(self, a: int) -> list[int]:
        return [i for i in range(self.n) if i != self.pivot[a]]

    def labels(self) -> list[tuple]:
        n = self.n
        out: list[tuple] = [("q", a) for a in range(n)] + [("p", a) for a in range(n)]
        out += [("alpha", a, mu) for a in range(n) for mu in self.free_components(a)]
        out += [("beta", a, mu) for a in range(n) for mu in self.free_components(a)]
        return out

    def index(self, label: tuple) -> int:
        return self.labels().index(tuple(label))


def normalize(x: ExtendedPhasePoint, chart: Chart) -> ExtendedPhasePoint:
    """Representative with ``alpha_a[pivot[a]] == 1`` (rescaling each point)."""
    _check_chart(x, chart)
    piv = x.alpha[np.arange(x.n), list(chart.pivot)]
    return x.replace(alpha=x.alpha / piv[:, None], beta=x.beta * piv[:, None])


def _check_chart(x, chart: Chart) -> None:
    if chart.n != x.n:
        raise ValueError(f"chart for n={chart.n} used at a point with n={x.n}")
    for a, i in enumerate(chart.pivot):
        if not 0 <= i < x.n:
            raise ValueError(f"pivot index {i} out of range")
        if abs(x.alpha[a, i]) < 1e-14 * max(1.0, np.abs(x.alpha[a]).max()):
            raise ValueError(f"pivot component alpha_{a}^{i} vanishes; chart not admissible")


def chart_coordinates(x: ExtendedPhasePoint, chart: Chart) -> np.ndarray:
    """Canonical coordinates (q, p, free alpha components, free beta components)."""
    y = normalize(x, chart)
    n = x.n
    a_free = [y.alpha[a, mu] for a in range(n) for mu in chart.free_components(a)]
    b_free = [y.beta[a, mu] for a in range(n) for mu in chart.free_components(a)]
    return np.concatenate([y.q, y.p, np.array(a_free, complex), np.array(b_free, complex)])


def chart_arrays(coords, chart: Chart, curve: CurveModulus) -> PhaseArrays:
    """Inverse chart map; ``coords`` may be a Dual of independent variables."""
    n = chart.n
    m = n * (n - 1)
    q = coords[0:n]
    p = coords[n:2 * n]
    if isinstance(coords, Dual):
        K = coords.nvar
        alpha = Dual(np.zeros((n, n), complex), np.zeros((n, n, K), complex))
        beta = Dual(np.zeros((n, n), complex), np.zeros((n, n, K), complex))
    else:
        coords = np.asarray(coords, dtype=complex)
        alpha = np.zeros((n, n), complex)
        beta = np.zeros((n, n), complex)
    pos = 2 * n
    for a in range(n):
        for mu in chart.free_components(a):
            alpha[a, mu] = coords[pos]
            beta[a, mu] = coords[pos + m]
            pos += 1
    for a in range(n):
        i = chart.pivot[a]
        alpha[a, i] = 1.0
        free = chart.free_components(a)
        if free:
            acc = beta[a, free[0]] * alpha[a, free[0]]
            for mu in free[1:]:
                acc = acc + beta[a, mu] * alpha[a, mu]
            beta[a, i] = -acc
    return PhaseArrays(q, p, alpha, beta, curve)


def from_chart(coords, chart: Chart, curve: CurveModulus,
               genericity: Genericity = DEFAULT_GENERICITY) -> ExtendedPhasePoint:
    s = chart_arrays(np.asarray(coords, dtype=complex), chart, curve)
    return ExtendedPhasePoint(s.q, s.p, s.alpha, s.beta, curve, genericity)


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based generator; identical streams across platforms."""
    return np.random.Generator(np.random.Philox(key=int(seed)))


def stream_rng(seed: int, stream: int) -> np.random.Generator:
    """Independent counter-based stream ``stream`` derived from ``seed``."""
    return np.random.Generator(np.random.Philox(key=int(seed) + (int(stream) << 64)))


def _cnormal(rng, size, scale=1.0):
    return scale * (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / np.sqrt(2)


def sample(seed: int, n: int, curve: CurveModulus, *, on_moment_surface: bool = False,
           on_gauge_slice: bool = False, avoid: Sequence[complex] = (),
           separation: float = 0.2, avoid_radius: float = 0.12,
           momentum_scale: float = 0.6, beta_scale: float = 0.5,
           genericity: Genericity = DEFAULT_GENERICITY) -> ExtendedPhasePoint:
    """Deterministic, well-separated and well-conditioned point for ``seed``.

    ``avoid`` lists probe points the marked points must stay ``avoid_radius``
    away from (modulo the lattice).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = make_rng(seed)
    tau = curve.tau
    avoid = np.asarray(list(avoid), dtype=complex)

    q: list[complex] = []
    for _ in range(100_000):
        if len(q) == n:
            break
        u, v = rng.uniform(-0.5, 0.5, size=2)
        c = complex(u + v * tau)
        if torus_distance(c, 0.0, curve) < separation:
            continue
        if any(torus_distance(c, qq, curve) < separation for qq in q):
            continue
        if avoid.size and np.min(torus_distance(avoid, c, curve)) < avoid_radius:
            continue
        q.append(c)
    else:
        raise RuntimeError("could not place well-separated marked points; relax separation")

    if on_gauge_slice:
        alpha = np.eye(n, dtype=complex)
    else:
        for _ in range(10_000):
            alpha = _cnormal(rng, (n, n))
            if np.linalg.cond(alpha) < 10 and np.abs(alpha[:, : min(n, 2)]).min() > 0.3:
                break
        else:
            raise RuntimeError("could not draw a well-conditioned alpha")

    p = _cnormal(rng, n, momentum_scale)
    if on_moment_surface:
        beta = _moment_surface_beta(rng, alpha, beta_scale)
    else:
        beta = np.zeros((n, n), complex)
        for a in range(n):
            basis = null_space(alpha[a][None, :])
            if basis.shape[1]:
                beta[a] = basis @ _cnormal(rng, basis.shape[1], beta_scale)
    return ExtendedPhasePoint(np.array(q), p, alpha, beta, curve, genericity)


def _moment_surface_beta(rng, alpha: np.ndarray, scale: float) -> np.ndarray:
    """beta in the joint kernel of the per-point pairings and of beta -> T."""
    n = alpha.shape[0]
    rows = []
    for a in range(n):
        r = np.zeros((n, n), complex)
        r[a] = alpha[a]
        rows.append(r.ravel())
    for i in range(n):
        for j in range(n):
            r = np.zeros((n, n), complex)
            r[:, i] = alpha[:, j]
            rows.append(r.ravel())
    basis = null_space(np.array(rows))
    if basis.shape[1] == 0:
        # with as many marked points as the rank, T = beta^T alpha = 0 forces beta = 0
        log.info("moment-surface kernel is trivial for n=%d; using beta = 0", n)
        return np.zeros((n, n), complex)
    return (basis @ _cnormal(rng, basis.shape[1], scale)).reshape(n, n)


def random_sl(rng: np.random.Generator, n: int, scale: float = 0.4) -> np.ndarray:
    """Random SL_n(C) element near the identity."""
    g = np.eye(n) + _cnormal(rng, (n, n), scale)
    d = np.linalg.det(g)
    return g / d ** (1.0 / n)


def state_value(state) -> PhaseArrays:
    return PhaseArrays(value(state.q), value(state.p), value(state.alpha), value(state.beta), state.curve)
