import mpmath
import numpy as np
import pytest

from tyurin_rmatrix.errors import ConvergenceError, PoleError
from tyurin_rmatrix.theta import (
    CurveModulus,
    SeriesControl,
    e_regular_coefficient,
    log_derivative_E,
    log_derivative_E_prime,
    reduce_mod_lattice,
    theta,
    theta_prime,
    theta_prime_zero,
    torus_distance,
)
from tyurin_rmatrix.suites import theta_grid

TAUS = [1j, 2j, 0.3 + 1.1j]


def mp_theta(z, tau):
    # the odd theta with characteristic (1/2, 1/2) equals -theta_1(pi z | tau)
    q = mpmath.exp(1j * mpmath.pi * tau)
    return -complex(mpmath.jtheta(1, mpmath.pi * z, q))


def mp_theta_prime(z, tau):
    q = mpmath.exp(1j * mpmath.pi * tau)
    return -complex(mpmath.pi * mpmath.jtheta(1, mpmath.pi * z, q, 1))


@pytest.mark.parametrize("tau", TAUS)
def test_theta_against_independent_library(tau):
    c = CurveModulus(tau)
    for z in [0.3 + 0.1j, -0.41 + 0.27j, 1.7 - 2.3j, 0.05 + 3.1j]:
        ref = mp_theta(z, tau)
        assert abs(theta(z, c) - ref) <= 1e-12 * max(1.0, abs(ref))
        refp = mp_theta_prime(z, tau)
        assert abs(theta_prime(z, c) - refp) <= 1e-11 * max(1.0, abs(refp))


@pytest.mark.parametrize("tau", TAUS)
def test_quasi_periodicity_and_oddness_on_grid(tau):
    c = CurveModulus(tau)
    z = theta_grid(c)
    th = theta(z, c)
    assert np.all(np.abs(theta(z + 1, c) + th) <= 1e-12 * np.maximum(1.0, np.abs(th)))
    # theta(z + tau) grows like exp(2 pi Im z); its rounding scales with it, not with theta(z)
    shifted = theta(z + tau, c)
    scale = np.maximum(1.0, np.maximum(np.abs(th), np.abs(shifted)))
    assert np.all(np.abs(shifted + np.exp(-1j * np.pi * tau - 2j * np.pi * z) * th) <= 1e-12 * scale)
    assert np.all(np.abs(theta(-z, c) + th) <= 1e-13 * np.abs(th))


@pytest.mark.parametrize("tau", TAUS)
def test_e_periodicity(tau):
    c = CurveModulus(tau)
    z = theta_grid(c)
    e = log_derivative_E(z, c)
    assert np.abs(log_derivative_E(z + 1, c) - e).max() <= 1e-11
    assert np.abs(log_derivative_E(z + tau, c) - e + 2j * np.pi).max() <= 1e-11


def test_reference_values():
    assert theta(0.0, CurveModulus(1j)) == pytest.approx(0, abs=1e-15)
    c = CurveModulus(1j)
    assert theta(1.3 + 0.1j, c) == pytest.approx(-theta(0.3 + 0.1j, c), rel=1e-13)
    c2 = CurveModulus(2j)
    z = 0.2 - 0.05j
    assert theta(-z, c2) == pytest.approx(-theta(z, c2), rel=1e-13)
    z = 0.2 + 0.3j
    assert log_derivative_E(-z, c2) == pytest.approx(-log_derivative_E(z, c2), rel=1e-13)
    assert abs(1e-3 * log_derivative_E(1e-3, c) - 1) < 1e-5
    z = 0.3 + 0.2j
    assert log_derivative_E(z + 1j, c) - log_derivative_E(z, c) == pytest.approx(-2j * np.pi, abs=1e-12)


def test_derivative_matches_finite_differences():
    c = CurveModulus(0.3 + 1.1j)
    h = 1e-5
    for z in [0.1 + 0.2j, -0.33 + 0.4j]:
        fd = (theta(z + h, c) - theta(z - h, c)) / (2 * h)
        assert abs(theta_prime(z, c) - fd) <= 1e-8 * abs(fd)
        fd = (log_derivative_E(z + h, c) - log_derivative_E(z - h, c)) / (2 * h)
        assert abs(log_derivative_E_prime(z, c) - fd) <= 1e-7 * abs(fd)


def test_regular_coefficient_of_e():
    c = CurveModulus(1j)
    c1 = e_regular_coefficient(c)
    for z in [1e-2, 2e-2j]:
        assert abs(log_derivative_E(z, c) - 1 / z - c1 * z) < 5 * abs(z) ** 3
    assert abs(theta_prime_zero(c) - mp_theta_prime(0, 1j)) < 1e-13


def test_reduce_mod_lattice_examples():
    c = CurveModulus(1j)
    assert reduce_mod_lattice(0.0, c) == (0j, 0, 0)
    z0, m, k = reduce_mod_lattice(1.2, c)
    assert (m, k) == (1, 0) and z0 == pytest.approx(0.2)
    z0, m, k = reduce_mod_lattice(0.3 + 0.9j, c)
    assert (m, k) == (0, 1) and z0 == pytest.approx(0.3 - 0.1j)
    zs = np.array([2.7 - 3.2j, -0.5 + 0.5j])
    z0, m, k = reduce_mod_lattice(zs, c)
    assert np.allclose(z0 + m + k * 1j, zs)


def test_torus_distance():
    c = CurveModulus(1j)
    assert torus_distance(0.1, 0.1 + 1j, c) == pytest.approx(0, abs=1e-15)
    assert torus_distance(0.45, -0.45, c) == pytest.approx(0.1)


def test_errors():
    with pytest.raises(ValueError):
        CurveModulus(1.0 + 0j)
    with pytest.raises(ValueError):
        SeriesControl(max_terms=4)
    with pytest.raises(PoleError):
        log_derivative_E(1 + 1j, CurveModulus(1j))
    with pytest.raises(ConvergenceError):
        theta(0.1, CurveModulus(0.001j), SeriesControl(max_terms=8))
