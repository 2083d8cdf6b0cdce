"""
Dense arrays over Q(zeta_N).

An array is stored as ``num / den`` where ``num`` is an object ndarray of
Python ints with a leading axis of length phi(N) (power-basis coefficients)
and ``den`` is a positive int shared by every entry.  Products of arrays are
computed coefficient-slice by coefficient-slice with numpy on exact ints and
then reduced modulo the cyclotomic polynomial.
"""

from __future__ import annotations

import math
from functools import reduce

import numpy as np
from gmpy2 import mpq

from .scalars import CycNumber, _common, _power_table, cyc, euler_phi


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


class CycArray:
    __slots__ = ("N", "num", "den")

    def __init__(self, num: np.ndarray, den: int = 1, N: int = 1):
        self.N = N
        self.num = num
        self.den = int(den)

    # -- construction ------------------------------------------------------

    @classmethod
    def zeros(cls, shape, N: int = 1) -> CycArray:
        shape = tuple(shape) if not isinstance(shape, int) else (shape,)
        num = np.empty((euler_phi(N),) + shape, dtype=object)
        num.fill(0)
        return cls(num, 1, N)

    @classmethod
    def identity(cls, n: int, N: int = 1) -> CycArray:
        out = cls.zeros((n, n), N)
        for i in range(n):
            out.num[0, i, i] = 1
        return out

    @classmethod
    def from_ints(cls, a, N: int = 1) -> CycArray:
        a = np.asarray(a)
        num = np.empty((euler_phi(N),) + a.shape, dtype=object)
        num.fill(0)
        num[0] = a.astype(object)
        return cls(num, 1, N)

    @classmethod
    def from_scalars(cls, entries, N: int | None = None) -> CycArray:
        """Build from a (nested) sequence or object array of scalars."""
        if isinstance(entries, np.ndarray):
            arr = entries
        else:
            arr = np.empty(np.shape(entries), dtype=object)
            arr[...] = entries
        flat = [cyc(x) for x in arr.ravel()]
        if N is None:
            N = 1
            for x in flat:
                if x.N != N:
                    N = _common(N, x.N)
        den = 1
        lifted = []
        for x in flat:
            x = x.lift(N) if x.N != N else x
            lifted.append(x)
            for c in x.c:
                if c.denominator != 1:
                    den = _lcm(den, int(c.denominator))
        D = euler_phi(N)
        num = np.empty((D, len(lifted)), dtype=object)
        for j, x in enumerate(lifted):
            for k in range(D):
                c = x.c[k]
                num[k, j] = int(c.numerator) * (den // int(c.denominator))
        return cls(num.reshape((D,) + arr.shape), den, N)

    @classmethod
    def scalar(cls, x) -> CycArray:
        return cls.from_scalars(np.array(cyc(x), dtype=object).reshape(()))

    # -- basic properties --------------------------------------------------

    @property
    def shape(self):
        return self.num.shape[1:]

    @property
    def ndim(self):
        return self.num.ndim - 1

    @property
    def size(self):
        return int(np.prod(self.shape, dtype=object))

    def __repr__(self):
        return f"CycArray(shape={self.shape}, N={self.N})"

    def entry(self, idx) -> CycNumber:
        coeffs = tuple(mpq(int(self.num[(k,) + tuple(idx)]), self.den) for k in range(self.num.shape[0]))
        return CycNumber._raw(coeffs, self.N)

    def to_scalars(self) -> np.ndarray:
        out = np.empty(self.shape, dtype=object)
        for idx in np.ndindex(*self.shape):
            out[idx] = self.entry(idx)
        return out

    def tolist(self):
        return self.to_scalars().tolist()

    def to_complex(self) -> np.ndarray:
        D = self.num.shape[0]
        z = np.exp(2j * np.pi / self.N)
        out = np.zeros(self.shape, dtype=complex)
        for k in range(D):
            out += self.num[k].astype(float) * (z**k)
        return out / self.den

    def nonzero_mask(self) -> np.ndarray:
        return np.any(self.num != 0, axis=0)

    def is_zero(self) -> bool:
        return not np.any(self.num != 0)

    # -- shape manipulation ------------------------------------------------

    def _wrap(self, num) -> CycArray:
        return CycArray(num, self.den, self.N)

    def reshape(self, *shape) -> CycArray:
        if len(shape) == 1 and isinstance(shape[0], tuple):
            shape = shape[0]
        return self._wrap(self.num.reshape((self.num.shape[0],) + tuple(shape)))

    def transpose(self, *axes) -> CycArray:
        if not axes:
            axes = tuple(reversed(range(self.ndim)))
        elif len(axes) == 1 and isinstance(axes[0], (tuple, list)):
            axes = tuple(axes[0])
        return self._wrap(self.num.transpose((0,) + tuple(a + 1 for a in axes)))

    @property
    def T(self) -> CycArray:
        return self.transpose()

    def __getitem__(self, key) -> CycArray:
        if not isinstance(key, tuple):
            key = (key,)
        return self._wrap(self.num[(slice(None),) + key])

    def __setitem__(self, key, value):
        if not isinstance(key, tuple):
            key = (key,)
        value = as_cycarray(value)
        a, v = _align(self, value)
        if a is not self:
            self.N, self.num, self.den = a.N, a.num, a.den
        self.num[(slice(None),) + key] = v.num
        # shared denominator after alignment
        if v.den != self.den:
            raise AssertionError("alignment failed")

    def copy(self) -> CycArray:
        return CycArray(self.num.copy(), self.den, self.N)

    # -- conductor / denominator management --------------------------------

    def lift(self, M: int) -> CycArray:
        if M == self.N:
            return self
        if M % self.N:
            raise ValueError(f"cannot lift conductor {self.N} to {M}")
        step = M // self.N
        D = euler_phi(M)
        table = _power_table(M)
        out = np.empty((D,) + self.shape, dtype=object)
        out.fill(0)
        for k in range(self.num.shape[0]):
            row = table[(k * step) % M]
            for j, r in enumerate(row):
                if r:
                    out[j] = out[j] + r * self.num[k]
        return CycArray(out, self.den, M)

    def with_den(self, den: int) -> CycArray:
        if den == self.den:
            return self
        f = den // self.den
        return CycArray(self.num * f, den, self.N)

    def normalize(self) -> CycArray:
        if self.den == 1:
            return self
        g = reduce(math.gcd, self.num.ravel().tolist(), self.den)
        if g == 1:
            return self
        return CycArray(self.num // g, self.den // g, self.N)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> CycArray:
        a, b = _align(self, as_cycarray(other))
        return CycArray(a.num + b.num, a.den, a.N).normalize()

    def __sub__(self, other) -> CycArray:
        a, b = _align(self, as_cycarray(other))
        return CycArray(a.num - b.num, a.den, a.N).normalize()

    def __neg__(self) -> CycArray:
        return CycArray(-self.num, self.den, self.N)

    def scale(self, x) -> CycArray:
        x = cyc(x)
        return bilinear(self, CycArray.scalar(x), np.multiply)

    def __mul__(self, other):
        if isinstance(other, CycArray):
            return bilinear(self, other, np.multiply)
        return self.scale(other)

    __rmul__ = __mul__

    def __matmul__(self, other) -> CycArray:
        return bilinear(self, other, np.matmul)

    def __eq__(self, other):
        if not isinstance(other, CycArray):
            return NotImplemented
        if self.shape != other.shape:
            return False
        a, b = _align(self, other)
        return bool(np.all(a.num == b.num))

    __hash__ = None

    def trace(self) -> CycNumber:
        D = self.num.shape[0]
        coeffs = tuple(mpq(int(np.trace(self.num[k])), self.den) for k in range(D))
        return CycNumber._raw(coeffs, self.N)

    def sum(self, axis=None) -> CycArray:
        if axis is None:
            return CycArray(self.num.reshape(self.num.shape[0], -1).sum(axis=1), self.den, self.N)
        if isinstance(axis, int):
            axis = (axis,)
        return CycArray(self.num.sum(axis=tuple(a + 1 for a in axis)), self.den, self.N).normalize()


def as_cycarray(x) -> CycArray:
    if isinstance(x, CycArray):
        return x
    if isinstance(x, np.ndarray) and x.dtype != object:
        return CycArray.from_ints(x)
    if isinstance(x, (list, tuple, np.ndarray)):
        return CycArray.from_scalars(x)
    return CycArray.scalar(x)


def _align(a: CycArray, b: CycArray):
    if a.N != b.N:
        N = _common(a.N, b.N)
        a, b = a.lift(N), b.lift(N)
    if a.den != b.den:
        L = _lcm(a.den, b.den)
        a, b = a.with_den(L), b.with_den(L)
    return a, b


def bilinear(a: CycArray, b: CycArray, f) -> CycArray:
    """Apply a bilinear numpy operation ``f`` entrywise in the field."""
    if a.N != b.N:
        N = _common(a.N, b.N)
        a, b = a.lift(N), b.lift(N)
    return CycArray(bilinear_num(a.num, b.num, a.N, f), a.den * b.den, a.N).normalize()


def bilinear_num(anum: np.ndarray, bnum: np.ndarray, N: int, f) -> np.ndarray:
    """Coefficient-level kernel of :func:`bilinear` (no denominators)."""
    D = anum.shape[0]
    acc = [None] * (2 * D - 1)
    for p in range(D):
        ap = anum[p]
        if D > 1 and not np.any(ap != 0):
            continue
        for q in range(D):
            bq = bnum[q]
            if D > 1 and not np.any(bq != 0):
                continue
            t = f(ap, bq)
            acc[p + q] = t if acc[p + q] is None else acc[p + q] + t
    template = next((t for t in acc if t is not None), None)
    if template is None:
        template = f(anum[0], bnum[0])
    out = np.empty((D,) + np.shape(template), dtype=object)
    out.fill(0)
    for e in range(D):
        if acc[e] is not None:
            out[e] = out[e] + acc[e]
    if D > 1:
        table = _power_table(N)
        for e in range(D, 2 * D - 1):
            if acc[e] is None:
                continue
            for k, r in enumerate(table[e]):
                if r:
                    out[k] = out[k] + r * acc[e]
    return out


def tensordot(a: CycArray, b: CycArray, axes) -> CycArray:
    return bilinear(a, b, lambda x, y: np.tensordot(x, y, axes=axes))


def einsum(subscripts: str, a: CycArray, b: CycArray) -> CycArray:
    return bilinear(a, b, lambda x, y: np.einsum(subscripts, x, y))


def kron(a: CycArray, b: CycArray) -> CycArray:
    return bilinear(a, b, np.kron)


def stack(arrays, axis: int = 0) -> CycArray:
    arrays = list(arrays)
    N = 1
    den = 1
    for x in arrays:
        N = _common(N, x.N)
    arrays = [x.lift(N) for x in arrays]
    for x in arrays:
        den = _lcm(den, x.den)
    arrays = [x.with_den(den) for x in arrays]
    return CycArray(np.stack([x.num for x in arrays], axis=axis + 1), den, N)


def concatenate(arrays, axis: int = 0) -> CycArray:
    arrays = list(arrays)
    N = 1
    den = 1
    for x in arrays:
        N = _common(N, x.N)
    arrays = [x.lift(N) for x in arrays]
    for x in arrays:
        den = _lcm(den, x.den)
    arrays = [x.with_den(den) for x in arrays]
    return CycArray(np.concatenate([x.num for x in arrays], axis=axis + 1), den, N)
