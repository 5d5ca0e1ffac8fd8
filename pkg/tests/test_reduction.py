import numpy as np
import pytest

from conftest import PROBES, point, rel
from tyurin_rmatrix.lax import lax
from tyurin_rmatrix.phase_space import Chart, gauge_act, make_rng, moment_map, random_sl
from tyurin_rmatrix.poisson import bracket, yang_baxter_rhs
from tyurin_rmatrix.reduction import (
    GaugeSlice,
    OrbitPoint,
    compensator,
    dressed_lax,
    nth_root,
    on_slice,
    r_hitchin,
    spin_cm_residual,
)
from tyurin_rmatrix.rmatrix import r_tensor


def test_compensator_basics():
    assert np.allclose(compensator(np.eye(3)), np.eye(3))
    a = make_rng(0).standard_normal((3, 3)) + 0j
    G = compensator(a)
    assert abs(np.linalg.det(G) - 1) < 1e-12
    assert np.allclose(np.linalg.inv(G) @ a, np.linalg.inv(G) @ a)
    with pytest.raises(ValueError):
        compensator([[1, 2], [2, 4]])


def test_slice_and_roots():
    with pytest.raises(ValueError):
        GaugeSlice((1, 0))
    with pytest.raises(ValueError):
        GaugeSlice((0, 1), kind="other")
    r, moved = nth_root(-8, 3)
    assert r ** 3 == pytest.approx(-8) and not moved
    r, moved = nth_root(-8, 3, reference=-2)
    assert r == pytest.approx(-2) and moved


def test_slice_points_transform_alpha_to_diagonal(x3):
    G = compensator(x3.alpha)
    # G^{-T}-action scales each alpha_a to a multiple of e_a
    a = x3.alpha @ np.linalg.inv(G)
    assert np.abs(a - np.diag(np.diag(a))).max() < 1e-10
    xs = point(2, 3, on_gauge_slice=True)
    assert on_slice(xs) and not on_slice(x3)


def test_dressed_lax_gauge_invariant(x3):
    g = random_sl(make_rng(3), 3)
    y = gauge_act(x3, g)
    for z, _ in PROBES[:3]:
        assert rel(dressed_lax(y, z), dressed_lax(x3, z)) <= 1e-9


@pytest.mark.parametrize("n", [2, 3])
def test_dressed_yang_baxter(n):
    xs = point(6, n, on_gauge_slice=True)
    chart = Chart.diagonal(n)
    z, w = PROBES[1]
    D = bracket(lambda s: dressed_lax(s, z), lambda s: dressed_lax(s, w), xs, chart)
    R = yang_baxter_rhs(r_hitchin(xs, z, w, chart=chart), r_hitchin(xs, w, z, chart=chart), lax(xs, z), lax(xs, w))
    assert rel(D, R) <= 1e-5


def test_rank_one_hitchin_equals_r():
    x = point(1, 1, on_gauge_slice=True)
    z, w = PROBES[0]
    assert np.allclose(r_hitchin(x, z, w), r_tensor(x, z, w), atol=1e-14)


def test_hitchin_requires_slice(x2):
    with pytest.raises(ValueError):
        r_hitchin(x2, *PROBES[0])


def test_spin_cm_residual(x3):
    T = moment_map(x3)
    assert spin_cm_residual(x3, OrbitPoint(-T)) == 0
    assert spin_cm_residual(x3, OrbitPoint(np.zeros((3, 3)))) == np.abs(T).max()
    with pytest.raises(ValueError):
        OrbitPoint(np.eye(2))
    with pytest.raises(ValueError):
        OrbitPoint(np.zeros(3))
