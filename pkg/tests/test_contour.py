import numpy as np
import pytest

from tyurin_rmatrix.contour import laurent_coefficients, residue
from tyurin_rmatrix.errors import QuadratureError


def test_rational_function_coefficients():
    c = laurent_coefficients(lambda z: 3 / (z - 0.2) ** 2 + 2 / (z - 0.2) + 5 + 7 * (z - 0.2), 0.2, 0.1,
                             orders=(-2, -1, 0, 1))
    assert np.allclose([c[-2], c[-1], c[0], c[1]], [3, 2, 5, 7], atol=1e-12)


def test_residue_excludes_outside_poles():
    f = lambda z: 1 / (z - 0.1) - 4 / (z - 1.0)  # noqa: E731
    assert residue(f, 0.1, 0.3) == pytest.approx(1, abs=1e-12)


def test_non_convergence_raises():
    f = lambda z: 1 / (z - 0.0999)  # noqa: E731  (pole just inside the circle)
    with pytest.raises(QuadratureError):
        laurent_coefficients(f, 0.0, 0.1, max_nodes=64)
