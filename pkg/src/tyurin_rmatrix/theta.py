"""Odd theta function of the torus C/{1, tau} and its logarithmic derivative.

    theta(z) = sum_m exp(pi i tau (m+1/2)^2 + 2 pi i (m+1/2)(z+1/2))

Arguments are first reduced to the fundamental cell; the quasi-periodicity
multiplier is reapplied exactly, so the truncated series only ever sees
``|Im z| <= Im(tau)/2`` and converges like ``exp(-pi Im(tau) m^2)``.

All public functions accept scalars, ndarrays, or :class:`~tyurin_rmatrix.dual.Dual`
arguments (derivatives propagate by the chain rule through the next
derivative of the series).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .dual import Dual
from .errors import ConvergenceError, PoleError


@dataclass(frozen=True)
class CurveModulus:
    tau: complex

    def __post_init__(self):
        tau = complex(self.tau)
        if not tau.imag > 0:
            raise ValueError(f"Im(tau) must be positive, got tau={tau}")
        object.__setattr__(self, "tau", tau)


@dataclass(frozen=True)
class SeriesControl:
    term_tolerance: float = 1e-16
    max_terms: int = 64
    pole_guard: float = 1e-8

    def __post_init__(self):
        if not self.term_tolerance > 0:
            raise ValueError("term_tolerance must be positive")
        if self.max_terms < 8:
            raise ValueError("max_terms must be at least 8")
        if not self.pole_guard >= 0:
            raise ValueError("pole_guard must be non-negative")


DEFAULT_CONTROL = SeriesControl()


def lattice_coordinates(z, curve: CurveModulus):
    """Real coordinates (x, y) with z = x + y*tau."""
    z = np.asarray(z, dtype=complex)
    y = z.imag / curve.tau.imag
    x = z.real - y * curve.tau.real
    return x, y


def reduce_mod_lattice(z, curve: CurveModulus):
    """Split ``z = z0 + m + k*tau`` with both lattice coordinates of z0 in [-1/2, 1/2).

    Works elementwise on arrays; returns ``(z0, m, k)`` with integer ``m, k``.
    """
    z = np.asarray(z, dtype=complex)
    x, y = lattice_coordinates(z, curve)
    k = np.floor(y + 0.5)
    m = np.floor(x + 0.5)
    z0 = z - m - k * curve.tau
    if z0.ndim == 0:
        return complex(z0), int(m), int(k)
    return z0, m.astype(int), k.astype(int)


def torus_distance(z, w, curve: CurveModulus):
    """Distance between z and w on C/{1, tau} (elementwise)."""
    d0, _, _ = reduce_mod_lattice(np.asarray(z) - np.asarray(w), curve)
    d0 = np.asarray(d0)
    best = np.full(d0.shape, np.inf)
    for a in (-1, 0, 1):
        for b in (-1, 0, 1):
            best = np.minimum(best, np.abs(d0 + a + b * curve.tau))
    return best if best.ndim else float(best)


@lru_cache(maxsize=64)
def _half_integers(tau: complex, ctrl: SeriesControl, order: int) -> np.ndarray:
    # after reduction |Im z0| <= Im(tau)/2, so |term(nu)| <= |2 pi nu|^order exp(-pi Im(tau) (nu^2 - |nu|))
    s = tau.imag
    for count in range(1, ctrl.max_terms + 1):
        nu = count + 0.5
        bound = (2 * math.pi * nu) ** order * math.exp(-math.pi * s * (nu * nu - nu))
        if bound < ctrl.term_tolerance:
            return np.arange(-count - 1, count + 1) + 0.5
    raise ConvergenceError(
        f"theta series did not reach tolerance {ctrl.term_tolerance} within "
        f"{ctrl.max_terms} terms (tau={tau})"
    )


def _theta_stack(z, curve: CurveModulus, ctrl: SeriesControl, upto: int) -> list[np.ndarray]:
    """[theta, theta', ..., theta^(upto)] at z, sharing one series evaluation."""
    z = np.asarray(z, dtype=complex)
    z0, m, k = reduce_mod_lattice(z, curve)
    z0, m, k = np.asarray(z0), np.asarray(m), np.asarray(k)
    nu = _half_integers(curve.tau, ctrl, upto)
    terms = np.exp(1j * np.pi * curve.tau * nu**2 + 2j * np.pi * nu * (z0[..., None] + 0.5))
    weight = 2j * np.pi * nu
    reduced = [terms.sum(axis=-1)]
    for _ in range(upto):
        terms = terms * weight
        reduced.append(terms.sum(axis=-1))
    # theta(z0 + m + k tau) = (-1)^(m+k) exp(-pi i k^2 tau - 2 pi i k z0) theta(z0);
    # the exponential is linear in z0, so derivatives follow by Leibniz
    factor = np.where((m + k) % 2 == 0, 1.0, -1.0) * np.exp(
        -1j * np.pi * k**2 * curve.tau - 2j * np.pi * k * z0
    )
    shift = -2j * np.pi * k
    out = []
    for d in range(upto + 1):
        acc = reduced[d]
        for j in range(d):
            acc = acc + math.comb(d, j) * shift ** (d - j) * reduced[j]
        out.append(factor * acc)
    return out


def _theta_raw(z, curve: CurveModulus, ctrl: SeriesControl, order: int):
    out = _theta_stack(z, curve, ctrl, order)[order]
    return out if out.ndim else complex(out)


def theta(z, curve: CurveModulus, ctrl: SeriesControl = DEFAULT_CONTROL, derivative: int = 0):
    """theta or its ``derivative``-th z-derivative, by the term-differentiated series."""
    if isinstance(z, Dual):
        t = _theta_stack(z.val, curve, ctrl, derivative + 1)
        return Dual(t[derivative], t[derivative + 1][..., None] * z.tan)
    return _theta_raw(z, curve, ctrl, derivative)


def theta_prime(z, curve: CurveModulus, ctrl: SeriesControl = DEFAULT_CONTROL):
    return theta(z, curve, ctrl, derivative=1)


@lru_cache(maxsize=64)
def theta_prime_zero(curve: CurveModulus, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    return complex(_theta_raw(0.0, curve, ctrl, 1))


@lru_cache(maxsize=64)
def e_regular_coefficient(curve: CurveModulus, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """c1 in E(z) = 1/z + c1 z + O(z^3); equals theta'''(0) / (3 theta'(0))."""
    return complex(_theta_raw(0.0, curve, ctrl, 3)) / (3 * theta_prime_zero(curve, ctrl))


def _check_guard(z, curve: CurveModulus, ctrl: SeriesControl):
    z0, _, _ = reduce_mod_lattice(z, curve)
    near = np.abs(np.asarray(z0)) < ctrl.pole_guard
    if np.any(near):
        bad = np.asarray(z)[near] if np.ndim(z) else z
        raise PoleError(f"E evaluated within {ctrl.pole_guard:g} of a lattice point: {bad}")


def _e_derivs(z, curve, ctrl, upto: int):
    """[E, E', E''][: upto + 1] for plain arguments."""
    _check_guard(z, curve, ctrl)
    t = _theta_stack(z, curve, ctrl, upto + 1)
    e = t[1] / t[0]
    out = [e]
    if upto >= 1:
        out.append(t[2] / t[0] - e**2)
    if upto >= 2:
        out.append(t[3] / t[0] - 3 * e * t[2] / t[0] + 2 * e**3)
    return out


def _maybe_scalar(x):
    x = np.asarray(x)
    return complex(x) if x.ndim == 0 else x


def log_derivative_E(z, curve: CurveModulus, ctrl: SeriesControl = DEFAULT_CONTROL):
    """E(z) = theta'(z)/theta(z).  Raises :class:`PoleError` near lattice points."""
    if isinstance(z, Dual):
        e, de = _e_derivs(z.val, curve, ctrl, 1)
        return Dual(e, de[..., None] * z.tan)
    return _maybe_scalar(_e_derivs(z, curve, ctrl, 0)[0])


def log_derivative_E_prime(z, curve: CurveModulus, ctrl: SeriesControl = DEFAULT_CONTROL):
    """E'(z); behaves like -1/z^2 + c1 near the origin."""
    if isinstance(z, Dual):
        _, de, dde = _e_derivs(z.val, curve, ctrl, 2)
        return Dual(de, dde[..., None] * z.tan)
    return _maybe_scalar(_e_derivs(z, curve, ctrl, 1)[1])
