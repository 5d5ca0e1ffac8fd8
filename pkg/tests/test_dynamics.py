import numpy as np
import pytest

from conftest import point
from tyurin_rmatrix.dynamics import (
    FlowConfig,
    conservation_report,
    evolve,
    hamiltonian,
    pick_chart,
    vector_field,
)
from tyurin_rmatrix.lax import lax
from tyurin_rmatrix.phase_space import gauge_act, make_rng, random_sl, rescale

Z0 = 0.41 + 0.13j


def test_rank_one_free_motion():
    x = point(0, 1)
    fc = FlowConfig(Z0, t_end=0.5)
    assert hamiltonian(x, fc) == pytest.approx(0.5 * x.p[0] ** 2)
    traj = evolve(x, fc)
    assert traj.aborted is None
    assert traj.final.q[0] == pytest.approx(x.q[0] + 0.5 * x.p[0], abs=1e-10)
    assert traj.final.p[0] == pytest.approx(x.p[0], abs=1e-12)


def test_hamiltonian_is_invariant(x3):
    fc = FlowConfig(Z0, k=3)
    h = hamiltonian(x3, fc)
    assert hamiltonian(gauge_act(x3, random_sl(make_rng(2), 3)), fc) == pytest.approx(h, rel=1e-9)
    assert hamiltonian(rescale(x3, 2, 0.5 + 2j), fc) == pytest.approx(h, rel=1e-12)


def test_vector_field_positions_follow_momenta():
    x = point(3, 1)
    fc = FlowConfig(Z0)
    v = vector_field(x, fc, pick_chart(x))
    assert v[0] == pytest.approx(x.p[0]) and v[1] == 0


def test_flow_conserves_invariants(x2):
    fc = FlowConfig(Z0, t_end=0.3)
    traj = evolve(x2, fc)
    assert traj.aborted is None and len(traj.states) > 2
    h0 = hamiltonian(traj.states[0], fc)
    assert max(d["hamiltonian_drift"] for d in traj.diagnostics) / max(1, abs(h0)) <= 1e-9
    for row in conservation_report(traj, [(0.17 + 0.38j, 2), (0.33 - 0.31j, 3)]):
        assert row["max_rel_drift"] <= 1e-6


def test_csv_layout(x2):
    traj = evolve(x2, FlowConfig(Z0, t_end=0.05))
    lines = traj.to_csv().splitlines()
    header = lines[0].split(",")
    assert header[:3] == ["t", "q_0_re", "q_0_im"]
    assert len(header) == 1 + 2 * (2 + 2 + 4 + 4)
    assert len(lines) == 1 + len(traj.states)
    assert '"aborted": null' in traj.diagnostics_json()


def test_zero_time_and_bad_config(x2):
    assert len(evolve(x2, FlowConfig(Z0, t_end=0)).states) == 1
    with pytest.raises(ValueError):
        FlowConfig(Z0, k=0)
    with pytest.raises(ValueError):
        FlowConfig(Z0, rel_tol=0)


def test_abort_returns_partial_trajectory(x2):
    traj = evolve(x2, FlowConfig(Z0, t_end=0.5, max_steps=2))
    assert traj.aborted and len(traj.states) == 3
    assert np.isfinite(traj.times).all()


def test_conditioned_representative_is_gauge_equivalent(x3):
    from tyurin_rmatrix.dynamics import conditioned, spectral_invariant

    y = conditioned(x3)
    assert np.abs(y.alpha - np.diag(np.diag(y.alpha))).max() < 1e-12
    w = 0.17 + 0.38j
    direct = np.trace(np.linalg.matrix_power(lax(x3, w), 3))
    assert spectral_invariant(x3, w, 3) == pytest.approx(direct, rel=1e-10)
