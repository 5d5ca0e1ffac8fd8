"""Verification suites.

Each ``run_<suite>`` function evaluates every check of its suite on the
configured seeds and probe pairs and returns one :class:`CheckResult` per
check id, holding the worst residual seen.  A check that raises is recorded
as failed with the error message; it never aborts the other checks.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .checks import REGISTRY, CheckResult, checks_in
from .config import SuiteConfig
from .contour import laurent_coefficients, residue
from .dynamics import FlowConfig, conservation_report, evolve, hamiltonian
from .lax import default_radius, lax, laurent_at, residue_at_origin
from .phase_space import (
    Chart,
    chart_coordinates,
    gauge_act,
    moment_map,
    normalize,
    random_sl,
    rescale,
    sample,
    stream_rng,
)
from .poisson import (
    DEFAULT_CONVENTION,
    BracketConvention,
    bracket,
    bracket_from_jacobians,
    bracket_tensor,
    derivative_disagreement,
    differentiate,
    trace_power,
    yang_baxter_rhs,
)
from .reduction import OrbitPoint, compensator, dressed_lax, r_hitchin, spin_cm_residual
from .rmatrix import holo_basis, r_laurent_in_z, r_scalar
from .solver import reconstruct_lax, reconstruct_r
from .theta import CurveModulus, log_derivative_E, theta, torus_distance

log = logging.getLogger(__name__)


def _rel(diff, ref) -> float:
    """max|diff| / max(1, max|ref|)."""
    return float(np.max(np.abs(diff), initial=0.0) / max(1.0, float(np.max(np.abs(ref), initial=0.0))))


@dataclass
class Conventions:
    """Discrete conventions in force; updated if the default fails the Yang-Baxter check."""

    bracket: BracketConvention = DEFAULT_CONVENTION
    reading: str = "standard"
    retried: bool = False

    def record(self) -> dict:
        return {
            "bracket_alpha_beta_sign": self.bracket.alpha_beta,
            "bracket_q_p_sign": 1,
            "r_index_reading": self.reading,
            "retried": self.retried,
        }


@dataclass
class Tally:
    suite: str
    config: SuiteConfig
    values: dict = field(default_factory=lambda: defaultdict(list))
    errors: dict = field(default_factory=dict)

    def add(self, check_id: str, residual: float):
        assert REGISTRY[check_id].suite == self.suite, check_id
        self.values[check_id].append(float(residual))

    def fail(self, check_id: str, exc: BaseException):
        log.warning("check %s raised %s: %s", check_id, type(exc).__name__, exc)
        self.errors.setdefault(check_id, f"{type(exc).__name__}: {exc}")

    def guard(self, check_id: str, fn):
        try:
            fn()
        except Exception as exc:  # recorded as a failure of that check
            self.fail(check_id, exc)

    def results(self) -> list[CheckResult]:
        out = []
        for spec in checks_in(self.suite):
            vals = self.values.get(spec.check_id, [])
            tol = self.config.tolerances[spec.check_id]
            detail: dict = {"evaluations": len(vals)}
            if spec.check_id in self.errors:
                detail["error"] = self.errors[spec.check_id]
                worst = float("inf")
            else:
                worst = max(vals) if vals else 0.0
            passed = spec.check_id not in self.errors and bool(np.isfinite(worst)) and worst <= tol
            out.append(CheckResult(self.suite, spec.check_id, spec.anchor, worst, tol, passed, detail))
        return out


def _curve(cfg: SuiteConfig) -> CurveModulus:
    return CurveModulus(cfg.tau)


def _point(cfg: SuiteConfig, seed: int, n: int | None = None, **kw):
    return sample(seed, n or cfg.n, _curve(cfg), avoid=cfg.probe_points(), **kw)


# ---------------------------------------------------------------- theta

def theta_grid(curve: CurveModulus, count: int = 10) -> np.ndarray:
    """count x count grid over the fundamental cell, offset from the zeros of theta."""
    u = np.linspace(-0.45, 0.45, count) + 0.013
    uu, vv = np.meshgrid(u, u + 0.007)
    return (uu + vv * curve.tau).ravel()


def run_theta(cfg: SuiteConfig, conv: Conventions | None = None) -> list[CheckResult]:
    t = Tally("theta", cfg)
    curve = _curve(cfg)
    tau = curve.tau
    z = theta_grid(curve)

    def rel(a, b):
        return float(np.max(np.abs(a - b) / np.maximum(np.abs(a), np.abs(b))))

    th = theta(z, curve)
    t.guard("theta_shift_one", lambda: t.add("theta_shift_one", rel(theta(z + 1, curve), -th)))
    t.guard("theta_shift_tau", lambda: t.add(
        "theta_shift_tau", rel(theta(z + tau, curve), -np.exp(-1j * np.pi * tau - 2j * np.pi * z) * th)))
    t.guard("theta_odd", lambda: t.add("theta_odd", rel(theta(-z, curve), -th)))

    def e_shift():
        e = log_derivative_E(z, curve)
        t.add("e_shift", rel(log_derivative_E(z + 1, curve), e))
        t.add("e_shift", rel(log_derivative_E(z + tau, curve), e - 2j * np.pi))

    t.guard("e_shift", e_shift)
    return t.results()


# ---------------------------------------------------------------- lax

def run_lax(cfg: SuiteConfig, conv: Conventions | None = None) -> list[CheckResult]:
    t = Tally("lax", cfg)
    curve = _curve(cfg)
    zs = [p[0] for p in cfg.probes]
    for seed in cfg.seeds:
        x = _point(cfg, seed)
        n = x.n

        def local():
            res_sum = residue_at_origin(x)
            t.add("lax_residue_sum", _rel(res_sum + moment_map(x), 0.0))
            for a in range(n):
                ld = laurent_at(x, a)
                expected = np.outer(x.beta[a], x.alpha[a])
                t.add("lax_residue", _rel(ld.residue - expected, expected))
                t.add("lax_left_eigenvector", _rel(x.alpha[a] @ ld.L0 - x.p[a] * x.alpha[a], x.p[a] * x.alpha[a]))
                res_sum = res_sum + ld.residue
            t.add("lax_residue_sum", _rel(res_sum, 0.0))

        try:
            local()
        except Exception as exc:
            for cid in ("lax_residue", "lax_left_eigenvector", "lax_residue_sum"):
                t.fail(cid, exc)

        def periodic():
            for z in [0.23 + 0.11j, *zs]:
                L = lax(x, z)
                t.add("lax_double_periodicity", _rel(lax(x, z + 1) - L, L))
                t.add("lax_double_periodicity", _rel(lax(x, z + curve.tau) - L, L))

        t.guard("lax_double_periodicity", periodic)

        def rescaled():
            rng = stream_rng(seed, 1)
            for a in range(n):
                lam = complex(rng.uniform(0.5, 2.0) * np.exp(2j * np.pi * rng.uniform()))
                y = rescale(x, a, lam)
                for z in zs:
                    L = lax(x, z)
                    t.add("lax_rescale_invariance", _rel(lax(y, z) - L, L))

        t.guard("lax_rescale_invariance", rescaled)

        def covariance():
            rng = stream_rng(seed, 2)
            for _ in range(3):
                g = random_sl(rng, n)
                y = gauge_act(x, g)
                for z in zs:
                    L = g @ lax(x, z) @ np.linalg.inv(g)
                    t.add("lax_gauge_covariance", _rel(lax(y, z) - L, L))

        t.guard("lax_gauge_covariance", covariance)

        def regular():
            xm = _point(cfg, seed, on_moment_surface=True)
            t.add("lax_regular_at_origin", _rel(residue_at_origin(xm), 0.0))

        t.guard("lax_regular_at_origin", regular)

        def consistency():
            for a in range(n):
                r = default_radius(x, x.q[a])
                big, small = laurent_at(x, a, r), laurent_at(x, a, r / 2)
                for u, v in ((big.residue, small.residue), (big.L0, small.L0), (big.L1, small.L1)):
                    t.add("lax_quadrature_consistency", _rel(u - v, u))

        t.guard("lax_quadrature_consistency", consistency)
    return t.results()


# ---------------------------------------------------------------- rmatrix

def _perturb_p_beta(x, seed: int):
    """Same (q, alpha) with fresh p and beta satisfying the per-point constraint."""
    rng = stream_rng(seed, 3)
    n = x.n
    p = x.p + rng.standard_normal(n) + 1j * rng.standard_normal(n)
    beta = np.empty_like(x.beta)
    for a in range(n):
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        beta[a] = v - (v @ x.alpha[a]) / (x.alpha[a] @ x.alpha[a]) * x.alpha[a]
    return x.replace(p=p, beta=beta)


def run_rmatrix(cfg: SuiteConfig, conv: Conventions | None = None) -> list[CheckResult]:
    conv = conv or Conventions()
    t = Tally("rmatrix", cfg)
    curve = _curve(cfg)
    reading = conv.reading
    for seed in cfg.seeds:
        x = _point(cfg, seed)
        n = x.n
        pi = np.linalg.inv(x.alpha)

        def duality():
            u = holo_basis(x.alpha).u
            t.add("holo_basis_duality", _rel(u @ x.alpha.T - np.eye(n), 1.0))

        t.guard("holo_basis_duality", duality)

        def null_vectors():
            for z, _w in cfg.probes:
                for a in range(n):
                    r = r_scalar(x, z, x.q[a], reading=reading)
                    t.add("r_null_vectors", _rel(r @ x.alpha[a], r))

        t.guard("r_null_vectors", null_vectors)

        def at_origin():
            for _z, w in cfg.probes:
                t.add("r_vanishes_at_origin", _rel(r_scalar(x, 0.0, w, reading=reading), 0.0))

        t.guard("r_vanishes_at_origin", at_origin)

        def w_residues():
            for z, _w in cfg.probes:
                rad = 0.3 * float(torus_distance(z, 0.0, curve))

                def f(ws):
                    return r_scalar(x, z, ws, reading=reading)

                t.add("r_w_residues", _rel(residue(f, 0.0, rad) - np.eye(n), 1.0))
                t.add("r_w_residues", _rel(residue(f, z, rad) + np.eye(n), 1.0))

        t.guard("r_w_residues", w_residues)

        def z_residue():
            for _z, w in cfg.probes:
                for a in range(n):
                    res = r_laurent_in_z(x, a, w, reading=reading).res
                    expected = -np.outer(x.alpha[a], pi[:, a])
                    t.add("r_z_residue", _rel(res - expected, expected))

        t.guard("r_z_residue", z_residue)

        def laurent_null():
            for a in range(n):
                for b in range(n):
                    if b == a:
                        continue
                    rl = r_laurent_in_z(x, a, x.q[b], reading=reading)
                    t.add("r_laurent_null_vectors", _rel(rl.r0 @ x.alpha[b], rl.r0))
                    t.add("r_laurent_null_vectors", _rel(rl.r1 @ x.alpha[b], rl.r1))
                rad = default_radius(x, x.q[a])

                def r0_alpha(ws):
                    return r_laurent_in_z(x, a, ws, reading=reading).r0 @ x.alpha[a]

                c = laurent_coefficients(r0_alpha, x.q[a], rad, (-1, 0))
                t.add("r_laurent_null_vectors", _rel(c[0], c[-1]))

        t.guard("r_laurent_null_vectors", laurent_null)

        def w_poles():
            for a in range(n):
                rad = default_radius(x, x.q[a])

                def both(ws):
                    rl = r_laurent_in_z(x, a, ws, reading=reading)
                    return np.stack([rl.r0, rl.r1], axis=1)

                c = laurent_coefficients(both, x.q[a], rad, (-2, -1))
                t.add("r_laurent_w_poles", _rel(c[-1][0] + np.eye(n), 1.0))
                t.add("r_laurent_w_poles", _rel(c[-2][0], 1.0))
                t.add("r_laurent_w_poles", _rel(c[-2][1] + np.eye(n), 1.0))

        t.guard("r_laurent_w_poles", w_poles)

        def independence():
            y = _perturb_p_beta(x, seed)
            for z, w in cfg.probes:
                r1 = r_scalar(x, z, w, reading=reading)
                r2 = r_scalar(y, z, w, reading=reading)
                t.add("r_depends_on_q_alpha_only", 0.0 if np.array_equal(r1, r2) else float(np.abs(r1 - r2).max()))

        t.guard("r_depends_on_q_alpha_only", independence)
    return t.results()


# ---------------------------------------------------------------- solver

def _random_points(rng, count: int, curve: CurveModulus, avoid, margin: float = 0.05) -> np.ndarray:
    out = []
    avoid = np.asarray(list(avoid), dtype=complex)
    while len(out) < count:
        u, v = rng.uniform(-0.5, 0.5, size=2)
        z = complex(u + v * curve.tau)
        if avoid.size and np.min(torus_distance(avoid, z, curve)) < margin:
            continue
        out.append(z)
    return np.array(out)


def run_solver(cfg: SuiteConfig, conv: Conventions | None = None) -> list[CheckResult]:
    t = Tally("solver", cfg)
    curve = _curve(cfg)
    for seed in cfg.seeds:
        x = _point(cfg, seed)
        rng = stream_rng(seed, 4)
        poles = np.concatenate([x.q, [0.0]])
        zs = _random_points(rng, 20, curve, poles)

        def lax_columns():
            rec = reconstruct_lax(x)
            for z in zs:
                L = lax(x, z)
                t.add("solver_lax_columns", _rel(rec(z) - L, L))
            for z in zs[:5]:
                v = rec(z)
                t.add("solver_periodicity", _rel(rec(z + 1) - v, v))
                t.add("solver_periodicity", _rel(rec(z + curve.tau) - v, v))

        t.guard("solver_lax_columns", lax_columns)

        def r_rows():
            z0 = cfg.probes[0][0]
            rec = reconstruct_r(x, z0)
            ws = _random_points(rng, 20, curve, [0.0, z0])
            for w in ws:
                r = r_scalar(x, z0, w)
                t.add("solver_r_rows", _rel(rec(w) - r, r))

        t.guard("solver_r_rows", r_rows)
    return t.results()


# ---------------------------------------------------------------- yang_baxter

_ALTERNATIVES = (
    ("standard", BracketConvention(1)),
    ("transposed", BracketConvention(1)),
    ("standard", BracketConvention(-1)),
    ("transposed", BracketConvention(-1)),
)


def _yb_residuals(cfg, points, conv_bracket, reading) -> float:
    worst = 0.0
    for x in points:
        for z, w in cfg.probes:
            bt = bracket_tensor(x, z, w, Chart.uniform(x.n, 0), conv_bracket, reading)
            worst = max(worst, bt.residual)
    return worst


def _choose_conventions(cfg, points, conv: Conventions) -> None:
    """Keep the default conventions unless they fail; then try each alternative once."""
    tol = cfg.tolerances["yb_residual"]
    if _yb_residuals(cfg, points[:1], conv.bracket, conv.reading) <= tol:
        return
    for reading, bc in _ALTERNATIVES[1:]:
        if _yb_residuals(cfg, points[:1], bc, reading) <= tol:
            log.warning("default conventions fail the Yang-Baxter check; using reading=%s sign=%d",
                        reading, bc.alpha_beta)
            conv.bracket, conv.reading, conv.retried = bc, reading, True
            return
    conv.retried = True


def _derivative_identities(t: Tally, x, zs) -> None:
    chart = Chart.uniform(x.n, 0)
    y = normalize(x, chart)
    n = y.n
    pi = np.linalg.inv(y.alpha)
    labels = chart.labels()
    idx = {lab: k for k, lab in enumerate(labels)}
    piv = chart.pivot
    eye = np.eye(n)

    def jac_laurent(center, orders):
        rad = default_radius(y, center)
        return laurent_coefficients(lambda nodes: differentiate(lambda s: lax(s, nodes), y, chart).jacobian,
                                    center, rad, orders)

    def momentum():
        jz = differentiate(lambda s: lax(s, np.asarray(zs)), y, chart).jacobian
        for a in range(n):
            expected = np.outer(pi[:, a], y.alpha[a])
            t.add("deriv_momentum", _rel(jz[..., idx[("p", a)]] - expected, expected))

    t.guard("deriv_momentum", momentum)

    try:
        data = {b: jac_laurent(complex(y.q[b]), (-2, -1, 0)) for b in range(n)}
        lax_data = {b: laurent_at(y, b) for b in range(n)}
    except Exception as exc:
        for cid in ("deriv_position_double_pole", "deriv_beta_residue", "deriv_alpha_residue", "deriv_regular_parts"):
            t.fail(cid, exc)
        return

    for a in range(n):
        c = data[a]
        ba = np.outer(y.beta[a], y.alpha[a])
        t.add("deriv_position_double_pole", _rel(c[-2][..., idx[("q", a)]] - ba, ba))
        for mu in chart.free_components(a):
            e_mu = eye[mu]
            e_piv = eye[piv[a]]
            expected = np.outer(e_mu - y.alpha[a, mu] * e_piv, y.alpha[a])
            t.add("deriv_beta_residue", _rel(c[-1][..., idx[("beta", a, mu)]] - expected, expected))
            expected = np.outer(y.beta[a], e_mu) - y.beta[a, mu] * np.outer(e_piv, y.alpha[a])
            t.add("deriv_alpha_residue", _rel(c[-1][..., idx[("alpha", a, mu)]] - expected, expected))

            reg_b = y.alpha[a] @ c[0][..., idx[("beta", a, mu)]]
            t.add("deriv_regular_parts", _rel(reg_b, c[0][..., idx[("beta", a, mu)]]))
            reg_a = y.alpha[a] @ c[0][..., idx[("alpha", a, mu)]]
            target = y.p[a] * e_mu - lax_data[a].L0[mu]
            t.add("deriv_regular_parts", _rel(reg_a - target, target))
        reg_q = y.alpha[a] @ c[0][..., idx[("q", a)]]
        target = -y.alpha[a] @ lax_data[a].L1
        t.add("deriv_regular_parts", _rel(reg_q - target, target))
        # off-point null conditions: alpha_b . dL(q_b) = 0 for coordinates of point a != b
        own = [k for k, lab in enumerate(labels) if lab[1] == a]
        for b in range(n):
            if b == a:
                continue
            cb = data[b][0][..., own]
            t.add("deriv_regular_parts", _rel(np.einsum("i,ijk->jk", y.alpha[b], cb), cb))


def run_yang_baxter(cfg: SuiteConfig, conv: Conventions | None = None) -> list[CheckResult]:
    conv = conv if conv is not None else Conventions()
    t = Tally("yang_baxter", cfg)
    points = [_point(cfg, seed) for seed in cfg.seeds]
    t.guard("yb_residual", lambda: _choose_conventions(cfg, points, conv))
    zs = [p[0] for p in cfg.probes]
    for x in points:
        n = x.n
        c0 = Chart.uniform(n, 0)
        c1 = Chart.uniform(n, 1 if n > 1 else 0)

        def yb():
            for z, w in cfg.probes:
                bt = bracket_tensor(x, z, w, c0, conv.bracket, conv.reading)
                t.add("yb_residual", bt.residual)
                other = bracket_tensor(x, z, w, c1, conv.bracket, conv.reading)
                t.add("yb_cross_chart", _rel(bt.D - other.D, bt.D))
                swapped = bracket_tensor(x, w, z, c0, conv.bracket, conv.reading)
                t.add("yb_antisymmetry", _rel(bt.D + swapped.D.transpose(2, 3, 0, 1), bt.D))

        try:
            yb()
        except Exception as exc:
            for cid in ("yb_residual", "yb_cross_chart", "yb_antisymmetry"):
                t.fail(cid, exc)

        _derivative_identities(t, x, zs)

        def ad_fd():
            for z, w in cfg.probes[:2]:
                t.add("ad_fd_agreement", derivative_disagreement(
                    lambda s: lax(s, np.array([z, w])), x, c0, raise_on_mismatch=False))

        t.guard("ad_fd_agreement", ad_fd)

        def involution():
            for z, w in cfg.probes:
                for k in (2, 3):
                    jf = differentiate(trace_power(z, k), x, c0).jacobian
                    jg = differentiate(trace_power(w, k), x, c0).jacobian
                    b = bracket_from_jacobians(jf, jg, c0, conv.bracket)
                    scale = float(np.linalg.norm(jf) * np.linalg.norm(jg))
                    t.add("involution", abs(complex(b)) / scale if scale > 0 else abs(complex(b)))

        t.guard("involution", involution)
    return t.results()


# ---------------------------------------------------------------- reduction

def run_reduction(cfg: SuiteConfig, conv: Conventions | None = None) -> list[CheckResult]:
    conv = conv or Conventions()
    t = Tally("reduction", cfg)
    zs = [p[0] for p in cfg.probes]
    for seed in cfg.seeds:
        x = _point(cfg, seed)
        xs = _point(cfg, seed, on_gauge_slice=True)
        n = x.n

        def det_unit():
            t.add("gauge_det_unit", abs(np.linalg.det(compensator(x.alpha)) - 1))
            t.add("gauge_det_unit", abs(np.linalg.det(compensator(xs.alpha)) - 1))

        t.guard("gauge_det_unit", det_unit)

        def invariance():
            rng = stream_rng(seed, 5)
            for _ in range(10):
                y = gauge_act(x, random_sl(rng, n))
                for z in zs[:2]:
                    ref = dressed_lax(x, z)
                    t.add("dressed_gauge_invariance", _rel(dressed_lax(y, z) - ref, ref))

        t.guard("dressed_gauge_invariance", invariance)

        def dressed_yb():
            chart = Chart.diagonal(n)
            for z, w in cfg.probes:
                D = bracket(lambda s: dressed_lax(s, z), lambda s: dressed_lax(s, w), xs, chart, conv.bracket)
                R = yang_baxter_rhs(r_hitchin(xs, z, w, chart=chart, convention=conv.bracket),
                                    r_hitchin(xs, w, z, chart=chart, convention=conv.bracket),
                                    lax(xs, z), lax(xs, w))
                t.add("dressed_yang_baxter", _rel(D - R, D))

        t.guard("dressed_yang_baxter", dressed_yb)

        def independence():
            ys = _perturb_p_beta(xs, seed)
            for z, w in cfg.probes:
                a = r_hitchin(xs, z, w, convention=conv.bracket)
                b = r_hitchin(ys, z, w, convention=conv.bracket)
                t.add("r_hitchin_independence", 0.0 if np.array_equal(a, b) else float(np.abs(a - b).max()))

        t.guard("r_hitchin_independence", independence)

        def self_bracket():
            G = lambda s: compensator(s.alpha)  # noqa: E731
            t.add("compensator_self_bracket", float(np.abs(bracket(G, G, x, Chart.uniform(n, 0))).max()))

        t.guard("compensator_self_bracket", self_bracket)

        def spin_cm():
            T = moment_map(x)
            t.add("moment_traceless", abs(np.trace(T)))
            t.add("spin_cm_identities", spin_cm_residual(x, OrbitPoint(-T)))
            t.add("spin_cm_identities", abs(spin_cm_residual(x, OrbitPoint(np.zeros((n, n)))) - np.abs(T).max()))

        t.guard("spin_cm_identities", spin_cm)
    return t.results()


# ---------------------------------------------------------------- dynamics

def run_dynamics(cfg: SuiteConfig, conv: Conventions | None = None) -> list[CheckResult]:
    conv = conv or Conventions()
    t = Tally("dynamics", cfg)
    probes = [(w, k) for w in cfg.conservation_points for k in (2, 3)]
    ids = ("flow_hamiltonian_drift", "flow_invariant_drift", "flow_moment_drift",
           "flow_constraint_drift", "flow_time_reversal")
    for seed in cfg.seeds:
        x = _point(cfg, seed)
        fc = FlowConfig(cfg.flow_point, t_end=cfg.t_end, rel_tol=cfg.rel_tol)
        try:
            traj = evolve(x, fc, conv.bracket)
            if traj.aborted:
                raise RuntimeError(f"flow aborted: {traj.aborted}")
            h0 = hamiltonian(traj.states[0], fc)
            d = traj.diagnostics
            t.add("flow_hamiltonian_drift", max(e["hamiltonian_drift"] for e in d) / max(1.0, abs(h0)))
            t.add("flow_moment_drift", max(e["moment_drift"] for e in d))
            t.add("flow_constraint_drift", max(e["constraint_max"] for e in d))
            for row in conservation_report(traj, probes):
                t.add("flow_invariant_drift", row["max_rel_drift"])
            back = evolve(traj.final, FlowConfig(cfg.flow_point, t_end=-cfg.t_end, rel_tol=cfg.rel_tol,
                                                 chart=traj.chart), conv.bracket)
            if back.aborted:
                raise RuntimeError(f"reverse flow aborted: {back.aborted}")
            t.add("flow_time_reversal", float(np.abs(chart_coordinates(back.final, traj.chart)
                                                     - chart_coordinates(traj.states[0], traj.chart)).max()))
        except Exception as exc:
            for cid in ids:
                t.fail(cid, exc)
    return t.results()


RUNNERS = {
    "theta": run_theta,
    "lax": run_lax,
    "rmatrix": run_rmatrix,
    "solver": run_solver,
    "yang_baxter": run_yang_baxter,
    "reduction": run_reduction,
    "dynamics": run_dynamics,
}


def run_suites(cfg: SuiteConfig, conv: Conventions | None = None) -> tuple[list[CheckResult], Conventions]:
    """Run the configured suites in dependency order.

    The Yang-Baxter suite fixes the conventions used by everything after it;
    when it is not requested the defaults stand.
    """
    conv = conv or Conventions()
    results: list[CheckResult] = []
    for suite in cfg.suites:
        log.info("running suite %s", suite)
        results.extend(RUNNERS[suite](cfg, conv))
    return results, conv
