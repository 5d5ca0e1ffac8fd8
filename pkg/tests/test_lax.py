import numpy as np
import pytest

from conftest import point, rel
from tyurin_rmatrix.errors import PoleError
from tyurin_rmatrix.lax import default_radius, lax, laurent_at, residue_at_origin
from tyurin_rmatrix.phase_space import gauge_act, make_rng, moment_map, random_sl, rescale

ZS = [0.23 + 0.11j, 0.41 + 0.13j, -0.27 + 0.21j]


def test_rank_one_is_constant_momentum():
    x = point(0, 1)
    for z in ZS:
        assert lax(x, z) == pytest.approx(np.array([[x.p[0]]]))
    assert np.abs(residue_at_origin(x)).max() < 1e-12


@pytest.mark.parametrize("n,tau", [(2, 1j), (3, 1j), (2, 0.3 + 1.1j), (3, 2j)])
def test_double_periodicity(n, tau):
    x = point(2, n, tau)
    for z in ZS:
        L = lax(x, z)
        assert rel(lax(x, z + 1), L) <= 1e-10
        assert rel(lax(x, z + tau), L) <= 1e-10
        assert rel(lax(x, z - 2 * tau + 3), L) <= 1e-10


@pytest.mark.parametrize("n", [2, 3])
def test_local_data_at_marked_points(n):
    x = point(5, n)
    total = residue_at_origin(x)
    for a in range(n):
        ld = laurent_at(x, a)
        assert rel(ld.residue, np.outer(x.beta[a], x.alpha[a])) <= 1e-8
        assert rel(x.alpha[a] @ ld.L0, x.p[a] * x.alpha[a]) <= 1e-8
        total = total + ld.residue
    assert np.abs(total).max() <= 1e-9
    assert np.abs(residue_at_origin(x) + moment_map(x)).max() <= 1e-9


def test_quadrature_radius_independence(x2):
    r = default_radius(x2, x2.q[0])
    a, b = laurent_at(x2, 0, r), laurent_at(x2, 0, r / 2)
    for u, v in ((a.residue, b.residue), (a.L0, b.L0), (a.L1, b.L1)):
        assert rel(u, v) <= 1e-9


def test_regular_at_origin_on_moment_surface():
    x = point(3, 2, on_moment_surface=True)
    assert np.abs(residue_at_origin(x)).max() <= 1e-9


def test_rescale_and_gauge(x3):
    y = rescale(x3, 1, 2 - 1j)
    g = random_sl(make_rng(1), 3)
    gx = gauge_act(x3, g)
    for z in ZS:
        L = lax(x3, z)
        assert rel(lax(y, z), L) <= 1e-12
        assert rel(lax(gx, z), g @ L @ np.linalg.inv(g)) <= 1e-9


def test_batched_evaluation_matches_pointwise(x3):
    zs = np.array(ZS)
    batch = lax(x3, zs)
    assert batch.shape == (3, 3, 3)
    for k, z in enumerate(zs):
        assert np.allclose(batch[k], lax(x3, z), rtol=1e-14, atol=1e-14)


def test_errors(x2):
    with pytest.raises(PoleError):
        lax(x2, x2.q[0] + 1)
    with pytest.raises(PoleError):
        lax(x2, 1j)
    with pytest.raises(ValueError):
        laurent_at(x2, 0, radius=5.0)
