import numpy as np
import pytest

from conftest import point
from tyurin_rmatrix.errors import ConstraintError
from tyurin_rmatrix.phase_space import (
    Chart,
    chart_arrays,
    chart_coordinates,
    from_chart,
    gauge_act,
    make_rng,
    moment_map,
    new_point,
    normalize,
    random_sl,
    rescale,
    sample,
)
from tyurin_rmatrix.theta import CurveModulus

C = CurveModulus(1j)


def test_reference_points_are_valid():
    x = new_point([0.3], [1.2], [[1.0]], [[0.0]], C)
    assert x.n == 1
    b, c = 0.7 - 0.2j, -1.1j
    x = new_point([0.1, 0.35 + 0.2j], [0.0, 1.0], np.eye(2), [[0, b], [c, 0]], C)
    assert np.allclose(moment_map(x), [[0, c], [b, 0]])


def test_validation_errors():
    with pytest.raises(ConstraintError, match="coincident"):
        new_point([0.1, 0.1 + 1j], [0, 0], np.eye(2), np.zeros((2, 2)), C)
    with pytest.raises(ConstraintError, match="constraint"):
        new_point([0.1, 0.3], [0, 0], np.eye(2), [[1.0, 0], [0, 0]], C)
    with pytest.raises(ConstraintError, match="singular"):
        new_point([0.1, 0.3], [0, 0], [[1, 1], [1, 1]], [[1, -1], [1, -1]], C)
    with pytest.raises(ConstraintError, match="origin"):
        new_point([1.0 + 1j], [0], [[1.0]], [[0.0]], C)
    with pytest.raises(ValueError):
        new_point([0.1, 0.3], [0], np.eye(2), np.zeros((2, 2)), C)


def test_points_are_immutable():
    x = point(0, 2)
    with pytest.raises(ValueError):
        x.alpha[0, 0] = 3


@pytest.mark.parametrize("n", [2, 3])
def test_moment_map_gauge_equivariance_and_trace(n):
    x = point(3, n)
    g = random_sl(make_rng(5), n)
    T = moment_map(x)
    assert abs(np.trace(T)) < 1e-12
    Tg = moment_map(gauge_act(x, g))
    assert np.abs(Tg - g @ T @ np.linalg.inv(g)).max() <= 1e-10
    y = gauge_act(x, g)
    assert np.abs(np.einsum("ai,ai->a", y.beta, y.alpha)).max() < 1e-12


def test_gauge_act_rejects_non_unimodular():
    x = point(0, 2)
    with pytest.raises(ValueError):
        gauge_act(x, 2 * np.eye(2))
    assert gauge_act(x, np.eye(2)).allclose(x)


def test_rescale():
    x = point(1, 2)
    assert rescale(x, 0, 1.0).allclose(x)
    y = rescale(x, 1, 2 - 1j)
    assert np.allclose(y.alpha[1], (2 - 1j) * x.alpha[1])
    with pytest.raises(ValueError):
        rescale(x, 0, 0.0)


@pytest.mark.parametrize("chart", [Chart.uniform(3, 0), Chart.uniform(3, 1), Chart((2, 0, 1))])
def test_chart_roundtrip(chart):
    x = point(4, 3)
    y = from_chart(chart_coordinates(x, chart), chart, x.curve)
    assert y.allclose(normalize(x, chart))
    for a, i in enumerate(chart.pivot):
        assert y.alpha[a, i] == 1
        free = chart.free_components(a)
        assert np.isclose(y.beta[a, i], -sum(y.beta[a, m] * y.alpha[a, m] for m in free))


def test_chart_for_rank_one_is_q_p():
    x = point(0, 1)
    c = chart_coordinates(x, Chart.uniform(1))
    assert np.allclose(c, [x.q[0], x.p[0]])
    assert Chart.uniform(1).labels() == [("q", 0), ("p", 0)]


def test_chart_arrays_with_vanishing_pivot_rejected():
    x = new_point([0.1, 0.3], [0, 0], np.eye(2), np.zeros((2, 2)), C)
    with pytest.raises(ValueError):
        chart_coordinates(x, Chart.uniform(2, 0))


def test_sampling_contract():
    a = sample(9, 3, C)
    b = sample(9, 3, C)
    assert a.allclose(b) and np.array_equal(a.q, b.q)
    assert np.abs(np.einsum("ai,ai->a", a.beta, a.alpha)).max() < 1e-12
    m = sample(9, 3, C, on_moment_surface=True)
    assert np.abs(moment_map(m)).max() < 1e-12
    s = sample(9, 3, C, on_gauge_slice=True)
    assert np.array_equal(s.alpha, np.eye(3))


def test_chart_arrays_accepts_plain_arrays():
    x = point(2, 2)
    ch = Chart.diagonal(2)
    s = chart_arrays(chart_coordinates(x, ch), ch, x.curve)
    assert np.allclose(s.q, x.q)
