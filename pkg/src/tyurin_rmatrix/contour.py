"""Laurent coefficients by trapezoidal quadrature on circles.

For f analytic in an annulus containing ``|z - c| = r`` the coefficient of
``(z - c)^k`` is ``mean_j f(z_j) (r e^{i t_j})^{-k}`` over equispaced nodes;
the error decays geometrically in the node count.  Node counts are doubled
until the even-node subset and the full set agree.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .errors import QuadratureError


def circle_nodes(center: complex, radius: float, count: int):
    t = 2 * np.pi * np.arange(count) / count
    offsets = radius * np.exp(1j * t)
    return center + offsets, offsets


def _coefficients(values: np.ndarray, offsets: np.ndarray, orders: Sequence[int]):
    shape = (-1,) + (1,) * (values.ndim - 1)
    return {k: np.mean(values * offsets.reshape(shape) ** (-k), axis=0) for k in orders}


def laurent_coefficients(f: Callable[[np.ndarray], np.ndarray], center: complex,
                         radius: float, orders: Sequence[int] = (-1, 0, 1), *,
                         rtol: float = 1e-11, start_nodes: int = 32,
                         max_nodes: int = 1024) -> dict[int, np.ndarray]:
    """Coefficients ``{k: c_k}`` of ``f(z) = sum_k c_k (z - center)^k``.

    ``f`` is called once per refinement with a 1-d array of nodes and must
    return an array whose leading axis runs over the nodes.

    Raises
    ------
    QuadratureError
        If ``max_nodes`` is reached before two consecutive node counts agree
        to ``rtol`` relative to the largest coefficient (floored at 1).
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    count = start_nodes
    while count <= max_nodes:
        nodes, offsets = circle_nodes(center, radius, 2 * count)
        values = np.asarray(f(nodes))
        fine = _coefficients(values, offsets, orders)
        coarse = _coefficients(values[::2], offsets[::2], orders)
        scale = max(1.0, max(float(np.max(np.abs(c), initial=0.0)) for c in fine.values()))
        diff = max(float(np.max(np.abs(fine[k] - coarse[k]), initial=0.0)) for k in orders)
        if diff <= rtol * scale:
            return fine
        count *= 2
    raise QuadratureError(
        f"contour quadrature around {center} (r={radius:g}) did not converge "
        f"within {max_nodes} nodes (last disagreement {diff:.2e})"
    )


def residue(f, center: complex, radius: float, **kw) -> np.ndarray:
    return laurent_coefficients(f, center, radius, orders=(-1,), **kw)[-1]
