"""Exact Gaussian elimination over Q(zeta_N)."""

from __future__ import annotations

from gmpy2 import mpq

from .cycarray import CycArray
from .scalars import CycNumber


def _field_rows(A: CycArray):
    """Rows of ``A`` as lists of field elements (mpq when rational)."""
    if A.N == 1:
        den = A.den
        return [[mpq(int(v), den) for v in row] for row in A.num[0].tolist()], 1
    rows = A.to_scalars().tolist()
    return rows, A.N


def _from_rows(rows, ncols: int, N: int) -> CycArray:
    if N == 1:
        return CycArray.from_scalars([[CycNumber._raw((v,), 1) for v in r] for r in rows] or
                                     _empty(0, ncols))
    return CycArray.from_scalars(rows if rows else _empty(0, ncols), N)


def _empty(n, m):
    import numpy as np
    return np.empty((n, m), dtype=object)


def rref(A: CycArray):
    """Reduced row echelon form; returns (rows, pivot_columns, N)."""
    rows, N = _field_rows(A)
    nrows = len(rows)
    ncols = A.shape[1] if A.ndim == 2 else 0
    pivots = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][col]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][col]
        pr = [v * inv if v else v for v in rows[r]]
        rows[r] = pr
        nz = [j for j in range(col, ncols) if pr[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][col]
                if f:
                    ri = rows[i]
                    for j in nz:
                        ri[j] = ri[j] - f * pr[j]
        pivots.append(col)
        r += 1
    return rows[:r], pivots, N


def rank(A: CycArray) -> int:
    return len(rref(A)[1])


def nullspace(A: CycArray) -> CycArray:
    """Columns spanning {x : A x = 0}, shape (ncols, k)."""
    ncols = A.shape[1]
    rows, pivots, N = rref(A)
    free = [j for j in range(ncols) if j not in set(pivots)]
    zero = mpq(0) if N == 1 else CycNumber._raw((mpq(0),) * len(_one(N).c), N)
    one = mpq(1) if N == 1 else _one(N)
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][f]
        basis.append(v)
    if not basis:
        return CycArray.zeros((ncols, 0), A.N)
    cols = _from_rows(basis, ncols, N)
    return cols.T


def _one(N):
    from .scalars import root_of_unity
    return root_of_unity(N, 0) if N > 2 else CycNumber._raw((mpq(1),), 1)


def solve(A: CycArray, b: CycArray) -> CycArray | None:
    """A particular solution of A x = b (b may be a matrix), or None."""
    from .cycarray import concatenate
    squeeze = b.ndim == 1
    if squeeze:
        b = b.reshape(b.shape[0], 1)
    n = A.shape[1]
    aug = concatenate([A, b], axis=1)
    rows, pivots, N = rref(aug)
    if any(p >= n for p in pivots):
        return None
    k = b.shape[1]
    zero = mpq(0) if N == 1 else CycNumber._raw((mpq(0),) * len(_one(N).c), N)
    x = [[zero] * k for _ in range(n)]
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][n:]
    out = _from_rows(x, k, N)
    return out.reshape(n) if squeeze else out


def inverse(A: CycArray) -> CycArray:
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse needs a square matrix")
    x = solve(A, CycArray.identity(n, A.N))
    if x is None or rank(A) < n:
        raise ZeroDivisionError("singular matrix")
    return x


def column_basis(A: CycArray) -> CycArray:
    """Columns of ``A`` at the pivot positions: a basis of its image."""
    _, pivots, _ = rref(A)
    if not pivots:
        return CycArray.zeros((A.shape[0], 0), A.N)
    return A[:, pivots]
