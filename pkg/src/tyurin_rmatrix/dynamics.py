"""Hamiltonian flows of the spectral invariants H = tr L(z0)^k / k.

The flow is integrated in canonical chart coordinates with an embedded
Runge-Kutta 5(4) pair along the real axis of complex time.  Gradients come
from the same dual-number engine that computes the brackets.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import RK45

from . import dual
from .errors import TyurinError
from .lax import lax
from .phase_space import (
    Chart,
    ExtendedPhasePoint,
    chart_arrays,
    chart_coordinates,
    from_chart,
    gauge_act,
    moment_map,
)
from .reduction import compensator
from .poisson import DEFAULT_CONVENTION, BracketConvention, differentiate, symplectic_matrix
from .theta import DEFAULT_CONTROL, SeriesControl


@dataclass(frozen=True)
class FlowConfig:
    z0: complex
    k: int = 2
    t_end: float = 1.0
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    chart: Chart | None = None
    max_steps: int = 100_000
    min_step: float = 1e-12

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("integrator tolerances must be positive")


@dataclass
class Trajectory:
    times: np.ndarray
    states: list[ExtendedPhasePoint]
    chart: Chart
    diagnostics: list[dict] = field(default_factory=list)
    aborted: str | None = None

    @property
    def final(self) -> ExtendedPhasePoint:
        return self.states[-1]

    def to_csv(self) -> str:
        n = self.states[0].n
        header = ["t"]
        for name, shape in (("q", (n,)), ("p", (n,)), ("alpha", (n, n)), ("beta", (n, n))):
            for idx in np.ndindex(*shape):
                tag = "_".join(str(i) for i in idx)
                header += [f"{name}_{tag}_re", f"{name}_{tag}_im"]
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for t, x in zip(self.times, self.states):
            flat = np.concatenate([x.q, x.p, x.alpha.ravel(), x.beta.ravel()])
            row = [repr(float(t))]
            for v in flat:
                row += [repr(float(v.real)), repr(float(v.imag))]
            writer.writerow(row)
        return buf.getvalue()

    def diagnostics_json(self) -> str:
        return json.dumps({"aborted": self.aborted, "steps": self.diagnostics}, sort_keys=True, indent=2)


def _trace_power(state, z0, k, ctrl):
    return dual.trace(dual.matrix_power(lax(state, z0, ctrl), k)) / k


def conditioned(x: ExtendedPhasePoint) -> ExtendedPhasePoint:
    """Gauge-equivalent point whose Tyurin vectors are multiples of the unit vectors.

    Along a flow the alpha_a can drift towards one another while beta grows,
    so L(w) gets large, strongly non-normal entries over a moderate spectrum
    and trace powers lose digits to cancellation.  Spectral invariants are
    gauge invariant, so they are evaluated at this representative instead.
    """
    try:
        return gauge_act(x, compensator(x.alpha), tol=1e-8)
    except (ValueError, TyurinError):
        return x


def hamiltonian(x, cfg: FlowConfig, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    return complex(dual.value(_trace_power(conditioned(x), cfg.z0, cfg.k, ctrl)))


def spectral_invariant(x, w: complex, k: int, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """tr L(w)^k."""
    return complex(dual.value(dual.trace(dual.matrix_power(lax(conditioned(x), w, ctrl), k))))


def pick_chart(x: ExtendedPhasePoint) -> Chart:
    """Per point, pivot on the largest Tyurin component."""
    return Chart(tuple(int(i) for i in np.argmax(np.abs(x.alpha), axis=1)))


def vector_field(x: ExtendedPhasePoint, cfg: FlowConfig, chart: Chart,
                 convention: BracketConvention = DEFAULT_CONVENTION,
                 ctrl: SeriesControl = DEFAULT_CONTROL) -> np.ndarray:
    """dc/dt = {c, H} in chart coordinates."""
    grad = differentiate(lambda s: _trace_power(s, cfg.z0, cfg.k, ctrl), x, chart).jacobian
    return symplectic_matrix(chart, convention) @ grad


class FlowAborted(TyurinError):
    pass


def evolve(x0: ExtendedPhasePoint, cfg: FlowConfig,
           convention: BracketConvention = DEFAULT_CONVENTION,
           ctrl: SeriesControl = DEFAULT_CONTROL) -> Trajectory:
    """Integrate the flow of H from 0 to ``cfg.t_end`` (negative runs backwards).

    Every accepted step is revalidated as a phase-space point.  A collapse of
    the step size, a pole of L(z0) or a failed validation stops the run and
    returns the partial trajectory with ``aborted`` set.
    """
    chart = cfg.chart or pick_chart(x0)
    curve = x0.curve
    om = symplectic_matrix(chart, convention)
    gen = x0.genericity

    def rhs(t, c):
        state = chart_arrays(dual.Dual.variables(c), chart, curve)
        g = dual.jacobian(_trace_power(state, cfg.z0, cfg.k, ctrl), c.size)
        return om @ g

    c0 = chart_coordinates(x0, chart)
    start = from_chart(c0, chart, curve, gen)
    h0 = hamiltonian(start, cfg, ctrl)
    T0 = moment_map(start)
    traj = Trajectory(np.array([0.0]), [start], chart, [_diag(0.0, start, h0, T0, cfg, ctrl)])
    if cfg.t_end == 0:
        return traj

    times = [0.0]
    try:
        solver = RK45(rhs, 0.0, c0, cfg.t_end, rtol=cfg.rel_tol, atol=cfg.abs_tol)
    except Exception as exc:  # pole at the very start
        traj.aborted = f"initial evaluation failed: {exc}"
        return traj
    for _ in range(cfg.max_steps):
        if solver.status != "running":
            break
        try:
            msg = solver.step()
        except Exception as exc:
            traj.aborted = f"vector field evaluation failed at t={solver.t:g}: {exc}"
            break
        if solver.status == "failed":
            traj.aborted = f"step-size collapse at t={solver.t:g}: {msg}"
            break
        if solver.step_size is not None and solver.status == "running" and solver.step_size < cfg.min_step:
            traj.aborted = f"step-size collapse at t={solver.t:g}"
            break
        try:
            state = from_chart(solver.y, chart, curve, gen)
        except Exception as exc:
            traj.aborted = f"state left the admissible region at t={solver.t:g}: {exc}"
            break
        times.append(float(solver.t))
        traj.states.append(state)
        traj.diagnostics.append(_diag(float(solver.t), state, h0, T0, cfg, ctrl))
    else:
        traj.aborted = f"exceeded {cfg.max_steps} steps"
    traj.times = np.array(times)
    return traj


def _diag(t, x, h0, T0, cfg, ctrl) -> dict:
    try:
        h = hamiltonian(x, cfg, ctrl)
        dh = abs(h - h0)
    except TyurinError:
        dh = float("nan")
    return {
        "t": t,
        "hamiltonian_drift": float(dh),
        "constraint_max": float(np.abs(np.einsum("ai,ai->a", x.beta, x.alpha)).max()),
        "moment_drift": float(np.abs(moment_map(x) - T0).max()),
    }


def conservation_report(traj: Trajectory, probes, ctrl: SeriesControl = DEFAULT_CONTROL) -> list[dict]:
    """Relative drift max_t |I(t) - I(0)| / |I(0)| of I = tr L(w)^k per probe (w, k)."""
    if not traj.states:
        raise ValueError("empty trajectory")
    rows = []
    for w, k in probes:
        vals = np.array([spectral_invariant(x, w, k, ctrl) for x in traj.states])
        ref = abs(vals[0])
        drift = float(np.abs(vals - vals[0]).max())
        rows.append({
            "w": complex(w),
            "k": int(k),
            "initial": complex(vals[0]),
            "max_abs_drift": drift,
            "max_rel_drift": drift / ref if ref > 0 else drift,
        })
    return rows
