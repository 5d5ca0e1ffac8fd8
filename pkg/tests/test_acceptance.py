"""Acceptance criteria, each at its stated tolerance and runtime budget.

Every criterion prints one PASS/FAIL line (visible with ``pytest -s`` or in
``pytest -v`` output through the disabled capture).  Tolerances are written
out here rather than read from the registry so that a change of defaults
cannot silently loosen acceptance.
"""

import json
import subprocess
import sys
import time

import jsonschema
import pytest

from tyurin_rmatrix.config import SuiteConfig
from tyurin_rmatrix.report import REPORT_SCHEMA
from tyurin_rmatrix.suites import RUNNERS, theta_grid
from tyurin_rmatrix.theta import CurveModulus

TAUS = (1j, 2j, 0.3 + 1.1j)
RANKS = (1, 2, 3)


def _announce(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\ncriterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def _timed(suite, **kw):
    cfg = SuiteConfig(**kw)
    start = time.perf_counter()
    results = RUNNERS[suite](cfg)
    return {r.check_id: r for r in results}, time.perf_counter() - start


def _judge(results, bounds):
    """Worst residual per check id against the stated bound; returns (ok, failures)."""
    bad = []
    for cid, bound in bounds.items():
        r = results[cid]
        if not (r.max_residual <= bound):
            bad.append(f"{cid}={r.max_residual:.2e}>{bound:g}")
    return not bad, bad


def _sweep(suite, bounds, budget, ranks=RANKS, taus=TAUS, **kw):
    failures, worst_time = [], 0.0
    for n in ranks:
        for tau in taus:
            res, dt = _timed(suite, n=n, tau=tau, **kw)
            worst_time = max(worst_time, dt)
            ok, bad = _judge(res, bounds)
            if not ok:
                failures.append(f"n={n} tau={tau}: {', '.join(bad)}")
            if dt >= budget:
                failures.append(f"n={n} tau={tau}: runtime {dt:.2f}s >= {budget}s")
    return failures, worst_time


@pytest.fixture(scope="module")
def yang_baxter_runs():
    out = {}
    for n in (2, 3):
        out[n] = _timed("yang_baxter", n=n, seeds=tuple(range(10)))
    return out


def test_criterion_01_theta(capsys):
    assert all(theta_grid(CurveModulus(t)).size == 100 for t in TAUS)
    bounds = dict.fromkeys(("theta_shift_one", "theta_shift_tau", "theta_odd", "e_shift"), 1e-12)
    failures, worst = _sweep("theta", bounds, 1.0, ranks=(2,))
    _announce(capsys, 1, not failures, f"theta identities <= 1e-12 on 100 points, 3 moduli, max {worst:.2f}s {failures}")
    assert not failures


def test_criterion_02_lax(capsys):
    bounds = {
        "lax_residue": 1e-8,
        "lax_left_eigenvector": 1e-8,
        "lax_residue_sum": 1e-9,
        "lax_double_periodicity": 1e-10,
        "lax_rescale_invariance": 1e-12,
        "lax_regular_at_origin": 1e-9,
    }
    failures, worst = _sweep("lax", bounds, 5.0)
    _announce(capsys, 2, not failures, f"Lax structure, n=1..3, 3 moduli, max {worst:.2f}s {failures}")
    assert not failures


def test_criterion_03_rmatrix(capsys):
    bounds = dict.fromkeys(("r_null_vectors", "r_vanishes_at_origin", "r_w_residues", "r_z_residue",
                            "r_laurent_null_vectors", "r_laurent_w_poles"), 1e-7)
    failures, worst = _sweep("rmatrix", bounds, 10.0)
    _announce(capsys, 3, not failures, f"r-matrix structure <= 1e-7, max {worst:.2f}s {failures}")
    assert not failures


def test_criterion_04_solver(capsys):
    bounds = {"solver_lax_columns": 1e-9, "solver_r_rows": 1e-9}
    failures, worst = _sweep("solver", bounds, 5.0)
    _announce(capsys, 4, not failures, f"solver reconstructs closed forms at 20 points <= 1e-9, max {worst:.2f}s {failures}")
    assert not failures


def test_criterion_05_yang_baxter(capsys, yang_baxter_runs):
    failures, total = [], 0.0
    for n, (res, dt) in yang_baxter_runs.items():
        total += dt
        ok, bad = _judge(res, {"yb_residual": 1e-6, "yb_cross_chart": 1e-7})
        if not ok:
            failures.append(f"n={n}: {', '.join(bad)}")
    if total >= 60.0:
        failures.append(f"runtime {total:.1f}s >= 60s")
    _announce(capsys, 5, not failures, f"Yang-Baxter n=2,3 x 10 seeds x 5 probes, {total:.1f}s {failures}")
    assert not failures


def test_criterion_06_derivative_identities(capsys, yang_baxter_runs):
    bounds = {
        "deriv_momentum": 1e-9,
        "deriv_position_double_pole": 1e-7,
        "deriv_beta_residue": 1e-7,
        "deriv_alpha_residue": 1e-7,
    }
    failures = []
    for n, (res, _) in yang_baxter_runs.items():
        ok, bad = _judge(res, bounds)
        if not ok:
            failures.append(f"n={n}: {', '.join(bad)}")
    _announce(capsys, 6, not failures, f"derivative identities of L {failures}")
    assert not failures


def test_criterion_07_involution(capsys, yang_baxter_runs):
    failures = []
    for n, (res, _) in yang_baxter_runs.items():
        ok, bad = _judge(res, {"involution": 1e-6})
        if not ok:
            failures.append(f"n={n}: {', '.join(bad)}")
    _announce(capsys, 7, not failures, f"trace invariants commute (k=2,3) at 5 probe pairs per seed {failures}")
    assert not failures


def test_criterion_08_reduction(capsys):
    bounds = {
        "gauge_det_unit": 1e-12,
        "dressed_gauge_invariance": 1e-9,
        "dressed_yang_baxter": 1e-5,
        "r_hitchin_independence": 0.0,
        "spin_cm_identities": 0.0,
    }
    failures, worst = _sweep("reduction", bounds, 60.0)
    _announce(capsys, 8, not failures, f"reduction, n=1..3, 3 moduli, max {worst:.2f}s {failures}")
    assert not failures


def test_criterion_09_dynamics(capsys):
    bounds = {
        "flow_hamiltonian_drift": 1e-9,
        "flow_invariant_drift": 1e-6,
        "flow_moment_drift": 1e-6,
        "flow_constraint_drift": 1e-6,
        "flow_time_reversal": 1e-7,
    }
    # unit time, integrator rel_tol 1e-10; the runtime budget applies per configuration
    failures, worst = _sweep("dynamics", bounds, 60.0, ranks=(1, 2), t_end=1.0, rel_tol=1e-10)
    _announce(capsys, 9, not failures, f"flow conservation n=1,2, 3 moduli, max {worst:.1f}s {failures}")
    assert not failures


def test_criterion_09_dynamics_rank_three(capsys):
    bounds = {
        "flow_hamiltonian_drift": 1e-9,
        "flow_invariant_drift": 1e-6,
        "flow_moment_drift": 1e-6,
        "flow_constraint_drift": 1e-6,
        "flow_time_reversal": 1e-7,
    }
    res, dt = _timed("dynamics", n=3, t_end=1.0, rel_tol=1e-10)
    ok, bad = _judge(res, bounds)
    _announce(capsys, 9, ok, f"flow conservation n=3 (tolerances only, {dt:.1f}s) {bad}")
    assert ok


def test_criterion_10_end_to_end(capsys, tmp_path):
    out = tmp_path / "report.json"
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "tyurin_rmatrix", "run", "--out", str(out)],
                          capture_output=True, text=True)
    dt = time.perf_counter() - start
    doc = json.loads(out.read_text())
    jsonschema.validate(doc, REPORT_SCHEMA)
    ok = proc.returncode == 0 and doc["overall_pass"] and dt < 180.0
    _announce(capsys, 10, ok, f"run with default config: exit {proc.returncode}, schema-valid report, {dt:.1f}s")
    assert ok, proc.stderr[-2000:]
