import numpy as np
import pytest

from tyurin_rmatrix import dual
from tyurin_rmatrix.dual import Dual


def _fd(f, x, h=1e-6):
    cols = []
    for k in range(x.size):
        e = np.zeros(x.size, complex)
        e[k] = h
        cols.append((f(x + e) - f(x - e)) / (2 * h))
    return np.stack(cols, axis=-1)


@pytest.fixture
def mat_vars():
    rng = np.random.default_rng(0)
    return rng.standard_normal(4) + 1j * rng.standard_normal(4) + 2 * np.array([1, 0, 0, 1])


def _as_mat(v):
    return dual.reshape(v, (2, 2))


def test_arithmetic_matches_finite_differences(mat_vars):
    def f(v):
        a = v[0] * v[1] - v[2] / v[3] + 3.0 / v[0] + v[1] ** 2.5
        return a

    d = f(Dual.variables(mat_vars))
    assert np.allclose(d.tan, _fd(lambda v: np.asarray(f(v)), mat_vars), atol=1e-8)


@pytest.mark.parametrize("op", ["inv", "det", "matmul", "trace", "power"])
def test_matrix_ops_match_finite_differences(mat_vars, op):
    fns = {
        "inv": lambda m: dual.inv(m),
        "det": lambda m: dual.det(m),
        "matmul": lambda m: dual.matmul(m, m.T if isinstance(m, Dual) else m.T),
        "trace": lambda m: dual.trace(dual.matmul(m, m)),
        "power": lambda m: dual.matrix_power(m, 3),
    }
    fn = fns[op]
    d = fn(_as_mat(Dual.variables(mat_vars)))
    ref = _fd(lambda v: np.asarray(fn(v.reshape(2, 2))), mat_vars)
    assert np.allclose(d.tan, ref, atol=1e-7)


def test_batched_matmul_with_constant_batch():
    v = Dual.variables(np.array([1.0 + 0.5j, 2.0, -1.0, 0.3j]))
    m = dual.reshape(v, (2, 2))
    batch = np.arange(12, dtype=complex).reshape(3, 2, 2)
    out = dual.matmul(batch, m)
    assert out.val.shape == (3, 2, 2) and out.tan.shape == (3, 2, 2, 4)
    for b in range(3):
        assert np.allclose(out.tan[b], dual.matmul(batch[b], m).tan)


def test_setitem_and_concat_roundtrip():
    v = Dual.variables(np.array([1.0, 2.0, 3.0]))
    flat, shapes = dual.ravel_concat([v[:2], np.ones((2, 2)), v[2]])
    parts = dual.split_as(flat, shapes)
    assert [p.shape for p in parts] == [(2,), (2, 2), ()]
    assert np.array_equal(parts[1].tan, np.zeros((2, 2, 3)))
    z = Dual(np.zeros(2), np.zeros((2, 3)))
    z[1] = v[0] * 2
    assert np.allclose(z.tan[1], [2, 0, 0])


def test_jacobian_of_constant_is_zero():
    assert np.array_equal(dual.jacobian(np.ones(3), 5), np.zeros((3, 5)))


def test_dual_exponent_rejected():
    v = Dual.variables(np.array([1.0]))
    with pytest.raises(TypeError):
        v ** v
