"""
Product dispatch for H^{(x)k}.

Small products run on the sparse dictionaries directly.  Large ones are moved
into Wedderburn coordinates, where H is a direct sum of matrix blocks and a
product in H^{(x)k} is a batched matrix product per block tuple.
"""

from __future__ import annotations

from itertools import product as iproduct

import numpy as np

from . import linalg
from .cycarray import CycArray, bilinear_num, tensordot
from .scalars import _common
from .tensor import SparseTensor, algebra_product

# multi-leg products with more term pairs than this go through block coordinates,
# provided the pairs also outnumber DENSE_RATIO * dim**legs (the cost of going dense)
SPARSE_LIMIT = 64
DENSE_RATIO = 4


class Wedderburn:
    """Coordinates in which H = (+)_i M_{n_i}."""

    def __init__(self, H):
        from .reptheory import simple_representations
        reps = simple_representations(H)
        d = H.dim
        self.sizes = [r.dim_v for r in reps]
        if sum(n * n for n in self.sizes) != d:
            raise ValueError("simple modules do not exhaust the algebra")
        rows = []
        for r in reps:
            for a in range(r.dim_v):
                for b in range(r.dim_v):
                    rows.append([r.action[j].entry((a, b)) for j in range(d)])
        self.W = CycArray.from_scalars(rows)
        self.Winv = linalg.inverse(self.W)
        # leg groups: all 1-dim blocks together, then one group per larger block
        s = sum(1 for n in self.sizes if n == 1)
        self.groups = []
        if s:
            self.groups.append(("s", 0, s))
        off = s
        for n in self.sizes:
            if n > 1:
                self.groups.append(("m", off, n))
                off += n * n
        self.dim = d

    # -- coordinates ---------------------------------------------------------

    def _apply_legs(self, arr: CycArray, M: CycArray) -> CycArray:
        k = arr.ndim
        for leg in range(k):
            arr = tensordot(M, arr, ([1], [leg]))
            perm = list(range(1, leg + 1)) + [0] + list(range(leg + 1, k))
            arr = arr.transpose(perm)
        return arr

    def to_w(self, t: SparseTensor) -> CycArray:
        return self._apply_legs(t.to_dense(), self.W)

    def from_w(self, arr: CycArray) -> SparseTensor:
        return SparseTensor.from_dense(self._apply_legs(arr, self.Winv))

    # -- block iteration -------------------------------------------------------

    def _split(self, num: np.ndarray, gtuple):
        """View of one block tuple as (D, batch, P, P) plus the data to undo it."""
        D = num.shape[0]
        sl = tuple(slice(o, o + (s if kind == "s" else s * s)) for kind, o, s in gtuple)
        blk = num[(slice(None),) + sl]
        shape = [D]
        batch_axes, row_axes, col_axes = [], [], []
        ax = 1
        for kind, _, s in gtuple:
            if kind == "s":
                shape.append(s)
                batch_axes.append(ax)
                ax += 1
            else:
                shape += [s, s]
                row_axes.append(ax)
                col_axes.append(ax + 1)
                ax += 2
        perm = [0] + batch_axes + row_axes + col_axes
        blk = blk.reshape(shape).transpose(perm)
        bt = int(np.prod([shape[a] for a in batch_axes], dtype=int)) if batch_axes else 1
        P = int(np.prod([shape[a] for a in row_axes], dtype=int)) if row_axes else 1
        return blk.reshape(D, bt, P, P), (sl, shape, perm)

    def _merge(self, out: np.ndarray, blk: np.ndarray, info):
        sl, shape, perm = info
        D = blk.shape[0]
        inv = np.argsort(perm)
        tshape = [shape[p] for p in perm]
        tshape[0] = D
        back = blk.reshape(tshape).transpose(inv)
        out[(slice(None),) + sl] = back.reshape((D,) + tuple(
            (s if kind == "s" else s * s) for kind, _, s in self._gt))

    def mul(self, x: CycArray, y: CycArray) -> CycArray:
        if x.N != y.N:
            N = _common(x.N, y.N)
            x, y = x.lift(N), y.lift(N)
        k = x.ndim
        D = x.num.shape[0]
        out = np.empty(x.num.shape, dtype=object)
        out.fill(0)
        for gt in iproduct(self.groups, repeat=k):
            self._gt = gt
            a, info = self._split(x.num, gt)
            b, _ = self._split(y.num, gt)
            c = bilinear_num(a, b, x.N, np.matmul)
            self._merge(out, c, info)
        del D
        return CycArray(out, x.den * y.den, x.N).normalize()

    def inverse(self, x: CycArray) -> CycArray:
        k = x.ndim
        D = x.num.shape[0]
        out = np.empty(x.num.shape, dtype=object)
        out.fill(0)
        dens = []
        pieces = []
        for gt in iproduct(self.groups, repeat=k):
            self._gt = gt
            a, info = self._split(x.num, gt)
            bt, P = a.shape[1], a.shape[2]
            mats = []
            for i in range(bt):
                M = CycArray(a[:, i].copy(), x.den, x.N)
                mats.append(linalg.inverse(M))
            pieces.append((gt, info, mats))
            dens.extend(m.lift(x.N).den if m.N != x.N else m.den for m in mats)
        from math import lcm
        L = 1
        for dd in dens:
            L = lcm(L, dd)
        for gt, info, mats in pieces:
            self._gt = gt
            bt = len(mats)
            P = mats[0].shape[0]
            blk = np.empty((D, bt, P, P), dtype=object)
            for i, m in enumerate(mats):
                m = m.lift(x.N) if m.N != x.N else m
                blk[:, i] = m.with_den(L).num
            self._merge(out, blk, info)
        return CycArray(out, L, x.N).normalize()


def wedderburn(H) -> Wedderburn | None:
    """Cached Wedderburn coordinates, or None when they cannot be built."""
    if "wedderburn" not in H._shared:
        try:
            H._shared["wedderburn"] = Wedderburn(H)
        except Exception:  # not semisimple / not split over the supported fields
            H._shared["wedderburn"] = None
    return H._shared["wedderburn"]


def product(H, a: SparseTensor, b: SparseTensor) -> SparseTensor:
    pairs = len(a) * len(b)
    if a.legs == 1 or pairs <= SPARSE_LIMIT or pairs <= DENSE_RATIO * a.dim ** a.legs:
        return algebra_product(H, a, b)
    W = wedderburn(H)
    if W is None:
        return algebra_product(H, a, b)
    return W.from_w(W.mul(W.to_w(a), W.to_w(b)))


def invert(H, t: SparseTensor) -> SparseTensor | None:
    """Inverse in H^{(x)k}; raises ZeroDivisionError when t is singular."""
    W = wedderburn(H)
    if W is not None:
        inv = W.from_w(W.inverse(W.to_w(t)))
    else:
        inv = _invert_dense(H, t)
    one = _one(H, t.legs)
    if algebra_product(H, t, inv) != one:
        raise ZeroDivisionError("element is not invertible")
    return inv


def _one(H, legs):
    from .tensor import unit_tensor
    return unit_tensor(H, legs)


def _invert_dense(H, t: SparseTensor) -> SparseTensor:
    """Solve t x = 1 in H^{(x)k} by exact elimination (small algebras only)."""
    k = t.legs
    d = H.dim
    n = d ** k
    cols = []
    for idx in np.ndindex(*(d,) * k):
        e = SparseTensor._trusted(k, d, {tuple(int(i) for i in idx): _one_scalar()})
        cols.append(algebra_product(H, t, e).to_dense().reshape(n))
    from .cycarray import stack
    L = stack(cols, axis=1)
    rhs = _one(H, k).to_dense().reshape(n)
    x = linalg.solve(L, rhs)
    if x is None:
        raise ZeroDivisionError("element is not invertible")
    return SparseTensor.from_dense(x.reshape((d,) * k))


def _one_scalar():
    from .scalars import ONE
    return ONE
