"""First-order forward-mode differentiation over complex arrays.

A :class:`Dual` carries a value array together with its derivatives with
respect to ``K`` independent variables.  The tangent array has the value's
shape plus one trailing axis of length ``K``, so ordinary numpy broadcasting
rules apply to value and tangent alike.

Only the handful of operations needed by the Lax and r-matrix evaluators are
provided: arithmetic, indexing, transposition, (batched) matrix products,
inverse, determinant, trace and real powers.  Plain ndarrays mix freely with
duals and are treated as constants.
"""

from __future__ import annotations

from typing import Callable

import numpy as np


class Dual:
    __slots__ = ("val", "tan")
    # make ndarray <op> Dual defer to the reflected Dual method
    __array_ufunc__ = None

    def __init__(self, val, tan):
        self.val = np.asarray(val, dtype=complex)
        self.tan = np.asarray(tan, dtype=complex)
        if self.tan.shape[:-1] != self.val.shape:
            self.tan = np.broadcast_to(self.tan, self.val.shape + self.tan.shape[-1:]).copy()

    @classmethod
    def variables(cls, values) -> "Dual":
        """Seed a 1-d array of independent variables (identity tangent)."""
        values = np.asarray(values, dtype=complex).ravel()
        return cls(values, np.eye(values.size, dtype=complex))

    @property
    def shape(self) -> tuple[int, ...]:
        return self.val.shape

    @property
    def ndim(self) -> int:
        return self.val.ndim

    @property
    def nvar(self) -> int:
        return self.tan.shape[-1]

    def __repr__(self) -> str:
        return f"Dual(shape={self.shape}, nvar={self.nvar})"

    def _const_tan(self, shape):
        return np.zeros(shape + (self.nvar,), dtype=complex)

    def __neg__(self):
        return Dual(-self.val, -self.tan)

    def __add__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val + other.val, self.tan + other.tan)
        v = self.val + other
        return Dual(v, np.broadcast_to(self.tan, v.shape + (self.nvar,)))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Dual):
            return Dual(
                self.val * other.val,
                self.tan * other.val[..., None] + self.val[..., None] * other.tan,
            )
        other = np.asarray(other)
        return Dual(self.val * other, self.tan * other[..., None])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Dual):
            v = self.val / other.val
            return Dual(v, (self.tan - v[..., None] * other.tan) / other.val[..., None])
        other = np.asarray(other)
        return Dual(self.val / other, self.tan / other[..., None])

    def __rtruediv__(self, other):
        v = np.asarray(other) / self.val
        return Dual(v, -(v / self.val)[..., None] * self.tan)

    def __pow__(self, s):
        if isinstance(s, Dual):
            raise TypeError("dual exponent not supported")
        v = np.power(self.val, s)
        return Dual(v, (s * np.power(self.val, s - 1))[..., None] * self.tan)

    def __getitem__(self, key):
        if not isinstance(key, tuple):
            key = (key,)
        return Dual(self.val[key], self.tan[key + (slice(None),)])

    def __setitem__(self, key, value):
        if not isinstance(key, tuple):
            key = (key,)
        tkey = key + (slice(None),)
        if isinstance(value, Dual):
            self.val[key] = value.val
            self.tan[tkey] = value.tan
        else:
            self.val[key] = value
            self.tan[tkey] = 0.0

    @property
    def T(self):
        return Dual(np.swapaxes(self.val, -1, -2), np.swapaxes(self.tan, -2, -3))

    def sum(self, axis=None):
        if axis is None:
            return Dual(self.val.sum(), self.tan.reshape(-1, self.nvar).sum(axis=0))
        axis = axis % self.ndim
        return Dual(self.val.sum(axis=axis), self.tan.sum(axis=axis))

    def copy(self):
        return Dual(self.val.copy(), self.tan.copy())


def value(x):
    """Strip tangents (identity on plain arrays)."""
    return x.val if isinstance(x, Dual) else np.asarray(x)


def is_dual(x) -> bool:
    return isinstance(x, Dual)


def elementwise(fn: Callable, dfn: Callable, x):
    """Apply a holomorphic elementwise function ``fn`` with derivative ``dfn``."""
    if isinstance(x, Dual):
        return Dual(fn(x.val), dfn(x.val)[..., None] * x.tan)
    return fn(x)


def _tan_first(t, ndim: int | None = None):
    """Move the tangent axis to the front, padding batch axes up to ``ndim``."""
    t = np.moveaxis(t, -1, 0)
    if ndim is not None and t.ndim - 1 < ndim:
        t = t.reshape(t.shape[:1] + (1,) * (ndim - t.ndim + 1) + t.shape[1:])
    return t


def _tan_last(t):
    return np.moveaxis(t, 0, -1)


def matmul(a, b):
    """Batched matrix product for any mix of Dual and ndarray operands."""
    if not isinstance(a, Dual) and not isinstance(b, Dual):
        return np.matmul(a, b)
    nd = max(np.ndim(value(a)), np.ndim(value(b)))
    if isinstance(a, Dual) and isinstance(b, Dual):
        v = np.matmul(a.val, b.val)
        t = np.matmul(_tan_first(a.tan, nd), b.val) + np.matmul(a.val, _tan_first(b.tan, nd))
        return Dual(v, _tan_last(t))
    if isinstance(a, Dual):
        return Dual(np.matmul(a.val, b), _tan_last(np.matmul(_tan_first(a.tan, nd), b)))
    return Dual(np.matmul(a, b.val), _tan_last(np.matmul(a, _tan_first(b.tan, nd))))


def inv(a):
    if not isinstance(a, Dual):
        return np.linalg.inv(a)
    ainv = np.linalg.inv(a.val)
    t = -np.matmul(np.matmul(ainv, _tan_first(a.tan)), ainv)
    return Dual(ainv, _tan_last(t))


def det(a):
    if not isinstance(a, Dual):
        return np.linalg.det(a)
    d = np.linalg.det(a.val)
    ainv = np.linalg.inv(a.val)
    # d(det A) = det A * tr(A^{-1} dA)
    t = d[..., None] * _tan_last(np.trace(np.matmul(ainv, _tan_first(a.tan)), axis1=-2, axis2=-1))
    return Dual(d, t)


def trace(a):
    if not isinstance(a, Dual):
        return np.trace(a, axis1=-2, axis2=-1)
    return Dual(np.trace(a.val, axis1=-2, axis2=-1), np.trace(a.tan, axis1=-3, axis2=-2))


def matrix_power(a, k: int):
    if k < 1:
        raise ValueError("k must be a positive integer")
    out = a
    for _ in range(k - 1):
        out = matmul(out, a)
    return out


def reshape(x, shape):
    if isinstance(x, Dual):
        return Dual(x.val.reshape(shape), x.tan.reshape(tuple(shape) + (x.nvar,)))
    return np.reshape(x, shape)


def ravel_concat(items):
    """Concatenate the raveled ``items``; returns ``(flat, shapes)`` for :func:`split_as`."""
    vals = [np.asarray(value(i), dtype=complex) for i in items]
    shapes = [v.shape for v in vals]
    flat = np.concatenate([v.ravel() for v in vals])
    nvar = next((i.nvar for i in items if isinstance(i, Dual)), None)
    if nvar is None:
        return flat, shapes
    tans = [i.tan.reshape(-1, nvar) if isinstance(i, Dual) else np.zeros((v.size, nvar), complex)
            for i, v in zip(items, vals)]
    return Dual(flat, np.concatenate(tans)), shapes


def split_as(flat, shapes):
    out = []
    pos = 0
    for shape in shapes:
        size = int(np.prod(shape, dtype=int))
        out.append(reshape(flat[pos:pos + size], shape))
        pos += size
    return out


def jacobian(y, nvar: int) -> np.ndarray:
    """Tangent array of ``y`` with shape ``y.shape + (nvar,)``; zeros for constants."""
    if isinstance(y, Dual):
        return y.tan
    y = np.asarray(y)
    return np.zeros(y.shape + (nvar,), dtype=complex)
