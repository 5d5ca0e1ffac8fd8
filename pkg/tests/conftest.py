import numpy as np
import pytest

from tyurin_rmatrix.config import DEFAULT_PROBES
from tyurin_rmatrix.phase_space import sample
from tyurin_rmatrix.theta import CurveModulus

PROBES = list(DEFAULT_PROBES)
AVOID = [z for pair in PROBES for z in pair] + [0.23 + 0.11j]


@pytest.fixture(scope="session")
def curve():
    return CurveModulus(1j)


def point(seed, n, tau=1j, **kw):
    return sample(seed, n, CurveModulus(tau), avoid=AVOID, **kw)


@pytest.fixture(scope="session")
def x2():
    return point(7, 2)


@pytest.fixture(scope="session")
def x3():
    return point(11, 3)


def rel(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return float(np.abs(a - b).max() / max(1.0, np.abs(b).max()))
