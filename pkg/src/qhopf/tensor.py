"""
Sparse elements of H^{(x)k}.

A :class:`SparseTensor` maps k-tuples of basis indices to nonzero
:class:`CycNumber` coefficients.  The algebra-aware operations take the
algebra as first argument and only read its sparse structure tables
(``mult_table``, ``comult``, ``counit``, ``unit``), so they work for any
object exposing those.
"""

from __future__ import annotations

import os
from itertools import product

import numpy as np

from .cycarray import CycArray
from .scalars import ONE, CycNumber, cyc

DEFAULT_BUDGET = 5_000_000


class BudgetExceeded(RuntimeError):
    pass


def get_budget() -> int:
    env = os.environ.get("QHOPF_BUDGET")
    if env:
        return int(float(env))
    return _budget_override if _budget_override is not None else DEFAULT_BUDGET


_budget_override: int | None = None


def set_budget(n: int | None) -> None:
    """Override the entry budget for this process (None restores the default)."""
    global _budget_override
    _budget_override = n


def _check_budget(n: int) -> None:
    b = get_budget()
    if n > b:
        raise BudgetExceeded(f"tensor would hold {n} entries (budget {b})")


class SparseTensor:
    __slots__ = ("legs", "dim", "entries")

    def __init__(self, legs: int, dim: int, entries: dict | None = None):
        self.legs = legs
        self.dim = dim
        clean = {}
        if entries:
            for k, v in entries.items():
                if v:
                    clean[tuple(k)] = cyc(v)
        _check_budget(len(clean))
        self.entries = clean

    @classmethod
    def _trusted(cls, legs, dim, entries) -> SparseTensor:
        obj = cls.__new__(cls)
        obj.legs, obj.dim, obj.entries = legs, dim, entries
        return obj

    @classmethod
    def zero(cls, legs: int, dim: int) -> SparseTensor:
        return cls._trusted(legs, dim, {})

    @classmethod
    def basis(cls, dim: int, *idx, coeff=ONE) -> SparseTensor:
        return cls(len(idx), dim, {tuple(idx): coeff})

    @classmethod
    def from_vector(cls, vec) -> SparseTensor:
        return cls(1, len(vec), {(i,): v for i, v in enumerate(vec)})

    @classmethod
    def from_dense(cls, arr: CycArray) -> SparseTensor:
        mask = arr.nonzero_mask()
        ent = {tuple(int(i) for i in idx): arr.entry(idx) for idx in zip(*np.nonzero(mask))}
        return cls._trusted(arr.ndim, arr.shape[0] if arr.ndim else 1, ent)

    def to_dense(self) -> CycArray:
        out = np.empty((self.dim,) * self.legs, dtype=object)
        out.fill(0)
        for k, v in self.entries.items():
            out[k] = v
        return CycArray.from_scalars(out)

    def to_vector(self) -> list:
        if self.legs != 1:
            raise ValueError("to_vector needs a 1-leg tensor")
        return [self.entries.get((i,), CycNumber.rational(0)) for i in range(self.dim)]

    # -- linear structure --------------------------------------------------

    def __len__(self):
        return len(self.entries)

    def items(self):
        return self.entries.items()

    def get(self, key, default=None):
        return self.entries.get(tuple(key), default)

    def _same(self, other):
        if not isinstance(other, SparseTensor) or other.legs != self.legs or other.dim != self.dim:
            raise ValueError("tensor shapes differ")

    def __add__(self, other) -> SparseTensor:
        self._same(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return SparseTensor._trusted(self.legs, self.dim, {k: v for k, v in out.items() if v})

    def __neg__(self) -> SparseTensor:
        return SparseTensor._trusted(self.legs, self.dim, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other) -> SparseTensor:
        return self + (-other)

    def scale(self, c) -> SparseTensor:
        c = cyc(c)
        if not c:
            return SparseTensor.zero(self.legs, self.dim)
        return SparseTensor._trusted(self.legs, self.dim, {k: v * c for k, v in self.entries.items()})

    def __mul__(self, c):
        if isinstance(c, SparseTensor):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SparseTensor):
            return NotImplemented
        if (self.legs, self.dim) != (other.legs, other.dim):
            return False
        return (self - other).is_zero()

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.entries

    def conductor(self) -> int:
        from math import lcm
        N = 1
        for v in self.entries.values():
            N = lcm(N, v.reduced().N)
        return N

    def __repr__(self):
        return f"SparseTensor(legs={self.legs}, dim={self.dim}, nnz={len(self.entries)})"

    def format(self, labels=None) -> str:
        if not self.entries:
            return "0"
        parts = []
        for k in sorted(self.entries):
            names = [labels[i] if labels else str(i) for i in k]
            parts.append(f"({self.entries[k]})*" + "(x)".join(names))
        return " + ".join(parts)

    # -- leg manipulation --------------------------------------------------

    def tensor(self, other: SparseTensor) -> SparseTensor:
        """Outer product: legs of ``self`` followed by legs of ``other``."""
        _check_budget(len(self.entries) * len(other.entries))
        out = {}
        for ka, va in self.entries.items():
            for kb, vb in other.entries.items():
                out[ka + kb] = va * vb
        return SparseTensor._trusted(self.legs + other.legs, self.dim, out)

    def permute(self, perm) -> SparseTensor:
        """New leg ``i`` is old leg ``perm[i]``."""
        out = {tuple(k[p] for p in perm): v for k, v in self.entries.items()}
        return SparseTensor._trusted(self.legs, self.dim, out)

    def map_leg(self, leg: int, images) -> SparseTensor:
        """Apply a linear map on one leg; ``images[i]`` lists (j, c) for the image of basis i."""
        out = {}
        for k, v in self.entries.items():
            for j, c in images[k[leg]]:
                key = k[:leg] + (j,) + k[leg + 1:]
                w = v * c
                out[key] = out[key] + w if key in out else w
        return SparseTensor._trusted(self.legs, self.dim, {k: v for k, v in out.items() if v})

    def contract_leg(self, leg: int, functional) -> SparseTensor:
        """Pair one leg with a linear functional given as a list of coefficients."""
        out = {}
        for k, v in self.entries.items():
            c = functional[k[leg]]
            if c:
                key = k[:leg] + k[leg + 1:]
                w = v * c
                out[key] = out[key] + w if key in out else w
        return SparseTensor._trusted(self.legs - 1, self.dim, {k: v for k, v in out.items() if v})

    def scalar(self) -> CycNumber:
        if self.legs != 0:
            raise ValueError("not a 0-leg tensor")
        return self.entries.get((), CycNumber.rational(0))


def _legs_match(a: SparseTensor, b: SparseTensor):
    if a.legs != b.legs or a.dim != b.dim:
        raise ValueError(f"leg mismatch: {a.legs} vs {b.legs}")


def algebra_product(H, a: SparseTensor, b: SparseTensor) -> SparseTensor:
    """Product in the k-fold tensor-product algebra H^{(x)k}."""
    _legs_match(a, b)
    mt = H.mult_table
    acc: dict = {}
    budget = get_budget()
    for ka, va in a.entries.items():
        for kb, vb in b.entries.items():
            terms = [mt[i][j] for i, j in zip(ka, kb)]
            if not all(terms):
                continue
            v0 = va * vb
            if all(len(t) == 1 for t in terms):
                key = tuple(t[0][0] for t in terms)
                v = v0
                for t in terms:
                    if t[0][1] != 1:
                        v = v * t[0][1]
                acc[key] = acc[key] + v if key in acc else v
                continue
            for combo in product(*terms):
                key = tuple(k for k, _ in combo)
                v = v0
                for _, c in combo:
                    v = v * c
                acc[key] = acc[key] + v if key in acc else v
        if len(acc) > budget:
            raise BudgetExceeded(f"product exceeded {budget} entries")
    return SparseTensor._trusted(a.legs, a.dim, {k: v for k, v in acc.items() if v})


def product_all(H, *factors: SparseTensor) -> SparseTensor:
    out = factors[0]
    for f in factors[1:]:
        out = algebra_product(H, out, f)
    return out


def multiply_all_legs(H, t: SparseTensor) -> SparseTensor:
    """m^{(k)}: multiply the legs together, folding left to right."""
    if t.legs < 1:
        raise ValueError("need at least one leg")
    cur = t
    mt = H.mult_table
    while cur.legs > 1:
        acc: dict = {}
        for k, v in cur.entries.items():
            for r, c in mt[k[0]][k[1]]:
                key = (r,) + k[2:]
                w = v * c
                acc[key] = acc[key] + w if key in acc else w
        cur = SparseTensor._trusted(cur.legs - 1, cur.dim, {k: v for k, v in acc.items() if v})
    return cur


def merge_legs(H, t: SparseTensor, left: int, right: int) -> SparseTensor:
    """
    Multiply leg ``left`` by leg ``right`` (in that order) and keep the
    product in position ``min(left, right)``; the other leg is removed.
    """
    mt = H.mult_table
    keep, drop = min(left, right), max(left, right)
    acc: dict = {}
    for k, v in t.entries.items():
        for r, c in mt[k[left]][k[right]]:
            key = list(k)
            key[keep] = r
            del key[drop]
            key = tuple(key)
            w = v * c
            acc[key] = acc[key] + w if key in acc else w
    return SparseTensor._trusted(t.legs - 1, t.dim, {k: v for k, v in acc.items() if v})


def apply_coproduct_leg(H, t: SparseTensor, leg: int) -> SparseTensor:
    if not 0 <= leg < t.legs:
        raise IndexError(f"leg {leg} out of range for {t.legs} legs")
    cm = H.comult
    acc: dict = {}
    budget = get_budget()
    for k, v in t.entries.items():
        pre, post = k[:leg], k[leg + 1:]
        for (i, j), c in cm[k[leg]]:
            key = pre + (i, j) + post
            w = v * c
            acc[key] = acc[key] + w if key in acc else w
        if len(acc) > budget:
            raise BudgetExceeded(f"coproduct exceeded {budget} entries")
    return SparseTensor._trusted(t.legs + 1, t.dim, {k: v for k, v in acc.items() if v})


def counit_leg(H, t: SparseTensor, leg: int) -> SparseTensor:
    return t.contract_leg(leg, H.counit)


def unit_tensor(H, legs: int) -> SparseTensor:
    """1^{(x)legs}."""
    out = SparseTensor._trusted(0, H.dim, {(): ONE})
    one = SparseTensor._trusted(1, H.dim, {(k,): c for k, c in H.unit})
    for _ in range(legs):
        out = out.tensor(one)
    return out


def embed_factor(t: SparseTensor, target_legs: int, position: int, H=None, unit=None) -> SparseTensor:
    """Pad ``t`` with unit legs so that it occupies legs position..position+t.legs-1."""
    if position < 0 or position + t.legs > target_legs:
        raise ValueError("factor does not fit")
    if unit is None:
        unit = H.unit
    before = position
    after = target_legs - position - t.legs
    out = {}
    unit = list(unit)
    pads_b = _unit_keys(unit, before)
    pads_a = _unit_keys(unit, after)
    for kb, cb in pads_b:
        for k, v in t.entries.items():
            for ka, ca in pads_a:
                w = v
                if cb != 1:
                    w = w * cb
                if ca != 1:
                    w = w * ca
                out[kb + k + ka] = w
    return SparseTensor._trusted(target_legs, t.dim, out)


def _unit_keys(unit, n):
    keys = [((), ONE)]
    for _ in range(n):
        keys = [(k + (i,), c * u) for k, c in keys for i, u in unit]
    return keys
