"""
Modules, characters and the Wedderburn data of a semisimple algebra.

Central primitive idempotents are located numerically and then recovered
exactly: each candidate is rationalized into a small cyclotomic field and
accepted only after exact checks (idempotent, orthogonal, central, summing
to 1).  Simple modules are built as minimal left ideals H f for a primitive
idempotent f obtained from the spectral projector of a suitable element.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .cycarray import CycArray, stack, tensordot
from .scalars import ONE, ZERO, CycNumber, cyc, euler_phi, rationalize, root_of_unity
from .tensor import SparseTensor, _check_budget

MAX_SPLIT_RETRIES = 8
_FIELDS = (1, 4, 3)


class SplitFailure(RuntimeError):
    pass


class NonIntegerDimension(RuntimeError):
    pass


class ProjectorNotIdempotent(RuntimeError):
    pass


class NotOrdinaryHopf(RuntimeError):
    pass


class Representation:
    """Action matrices rho(b_i) of a left module, one per basis element."""

    def __init__(self, algebra, action):
        self.algebra = algebra
        self.action = list(action)
        self.dim_v = self.action[0].shape[0] if self.action else 0

    def of(self, t: SparseTensor) -> CycArray:
        """rho of a 1-leg element."""
        out = CycArray.zeros((self.dim_v, self.dim_v))
        for (i,), c in t.items():
            out = out + self.action[i].scale(c)
        return out

    def is_valid(self) -> bool:
        H = self.algebra
        eye = CycArray.identity(self.dim_v)
        if self.of(H.one()) != eye:
            return False
        for i in range(H.dim):
            for j in range(H.dim):
                lhs = self.action[i] @ self.action[j]
                rhs = self.of(SparseTensor(1, H.dim, {(k,): c for k, c in H.mult_table[i][j]}))
                if lhs != rhs:
                    return False
        return True

    def __repr__(self):
        return f"Representation(dim_v={self.dim_v}, algebra={self.algebra.name!r})"


@dataclass
class CharacterVector:
    values: list

    def __call__(self, t: SparseTensor) -> CycNumber:
        s = ZERO
        for (i,), c in t.items():
            if self.values[i]:
                s = s + c * self.values[i]
        return s

    @property
    def dim(self) -> int:
        return int(self.values_at_one)

    values_at_one: CycNumber = None

    def __eq__(self, other):
        return isinstance(other, CharacterVector) and all(a == b for a, b in zip(self.values, other.values))

    def to_json(self) -> list:
        return [v.reduced().to_json() for v in self.values]

    def __str__(self):
        return "(" + ", ".join(str(v) for v in self.values) + ")"


def _char(values, H) -> CharacterVector:
    ch = CharacterVector([cyc(v) for v in values])
    ch.values_at_one = ch(H.one()).rational_value()
    return ch


def character(rho: Representation) -> CharacterVector:
    return _char([m.trace() for m in rho.action], rho.algebra)


def regular_representation(H) -> Representation:
    if "regular" not in H._shared:
        H._shared["regular"] = Representation(H, [H.left_matrix(H.basis_element(i)) for i in range(H.dim)])
    return H._shared["regular"]


def trivial_representation(H) -> Representation:
    return Representation(H, [CycArray.from_scalars([[c]]) for c in H.counit])


# ---------------------------------------------------------------------------
# exact recovery of numeric values


def _recognize(z: complex, fields=_FIELDS, tol: float = 1e-7) -> CycNumber | None:
    """Exact cyclotomic number near ``z``: a root of unity or an element of a small field."""
    if abs(abs(z) - 1) < tol:
        for m in range(1, 49):
            if abs(z**m - 1) < tol * m:
                k = round(cmath.phase(z) * m / (2 * math.pi)) % m
                return root_of_unity(m, k)
    # a loose denominator bound lets a wrong field fit too, so keep the lowest-height match
    found = [v for v in (rationalize(z, N, tol) for N in fields) if v is not None]
    if not found:
        return None
    return min(found, key=lambda v: max(int(c.denominator) for c in v.c))


def _numeric(M: CycArray) -> np.ndarray:
    return M.to_complex()


def _vec_from_numeric(H, z, fields) -> SparseTensor | None:
    out = {}
    for i, x in enumerate(z):
        if abs(x) < 1e-9:
            continue
        v = _recognize(complex(x), fields)
        if v is None:
            return None
        out[(i,)] = v
    return SparseTensor(1, H.dim, out)


def _fields_for(H):
    N = H._shared.get("mult_conductor")
    if N is None:
        from math import lcm
        N = 1
        for row in H.mult_table:
            for cell in row:
                for _, c in cell:
                    N = lcm(N, c.reduced().N)
        H._shared["mult_conductor"] = N
    fields = list(_FIELDS)
    if euler_phi(N) <= 2 and N not in fields:
        fields.append(N)
    return tuple(fields)


# ---------------------------------------------------------------------------
# centre decomposition


def central_idempotents(H, seed: int = 0) -> list:
    """Central primitive idempotents (exact), in the order of :func:`simple_characters`."""
    return [b.idempotent for b in _blocks(H, seed)]


@dataclass
class _Block:
    idempotent: SparseTensor
    dim: int
    character: CharacterVector
    rep: Representation | None = None


def _blocks(H, seed: int = 0) -> list:
    if "blocks" in H._shared:
        return H._shared["blocks"]
    from .algebra import center_basis, is_central

    Z = center_basis(H)
    fields = _fields_for(H)
    one = H.one()
    idems = None
    if len(Z) == 1:
        idems = [one]
    else:
        Zn = np.array([[complex(v) for v in _vecc(z)] for z in Z]).T       # d x k
        Ln = [_numeric(H.left_matrix(z)) for z in Z]
        unit = np.array([complex(v) for v in _vecc(one)])
        rng = np.random.default_rng(seed)
        for _ in range(MAX_SPLIT_RETRIES):
            coeffs = rng.integers(1, 10, size=len(Z))
            Lc = sum(int(c) * L for c, L in zip(coeffs, Ln))
            M = np.linalg.lstsq(Zn, Lc @ Zn, rcond=None)[0]
            lam = np.linalg.eigvals(M)
            gaps = [abs(a - b) for i, a in enumerate(lam) for b in lam[i + 1:]]
            if gaps and min(gaps) < 1e-8:
                continue
            u = np.linalg.lstsq(Zn, unit, rcond=None)[0]
            cand = []
            for i, li in enumerate(lam):
                P = np.eye(len(Z), dtype=complex)
                for j, lj in enumerate(lam):
                    if j != i:
                        P = P @ (M - lj * np.eye(len(Z))) / (li - lj)
                e = _vec_from_numeric(H, Zn @ (P @ u), fields)
                if e is None:
                    break
                cand.append(e)
            else:
                if _idempotents_ok(H, cand, is_central):
                    idems = cand
                    break
        if idems is None:
            raise SplitFailure(f"could not split the centre of {H.name} after {MAX_SPLIT_RETRIES} tries")
    blocks = []
    for e in idems:
        tr = H.regular_trace(e)
        if not tr.is_rational():
            raise NonIntegerDimension(f"regular trace {tr} is not rational")
        t = tr.rational_value()
        n = math.isqrt(int(t)) if t.denominator == 1 and t >= 0 else -1
        if n < 1 or n * n != t:
            raise NonIntegerDimension(f"regular trace {t} of a central idempotent is not a square")
        vals = [H.regular_trace(H.mul(H.basis_element(i), e)) / n for i in range(H.dim)]
        blocks.append(_Block(e, n, _char(vals, H)))
    blocks.sort(key=lambda b: (b.dim, _char_key(b.character)))
    H._shared["blocks"] = blocks
    return blocks


def _vecc(t: SparseTensor):
    from .scalars import to_complex
    return [to_complex(v) for v in t.to_vector()]


def _char_key(ch: CharacterVector):
    from .scalars import to_complex
    out = []
    for v in ch.values:
        z = to_complex(v)
        out.append((-round(z.real, 9), -round(z.imag, 9)))
    return tuple(out)


def _idempotents_ok(H, cand, is_central) -> bool:
    total = SparseTensor.zero(1, H.dim)
    for i, e in enumerate(cand):
        if e.is_zero() or H.mul(e, e) != e or not is_central(H, e):
            return False
        for f in cand[i + 1:]:
            if not H.mul(e, f).is_zero():
                return False
        total = total + e
    return total == H.one()


def simple_characters(H) -> list:
    """[(character, dimension)] sorted by dimension, trivial character first among equals."""
    return [(b.character, b.dim) for b in _blocks(H)]


def character_table_json(H) -> dict:
    return {"simples": [{"dim": n, "character": ch.to_json()} for ch, n in simple_characters(H)]}


def character_table_text(H) -> str:
    rows = simple_characters(H)
    labels = H.basis_labels
    cells = [[str(v) for v in ch.values] for ch, _ in rows]
    width = max([len(x) for r in cells for x in r] + [len(x) for x in labels])
    head = "dim | " + " ".join(f"{x:>{width}}" for x in labels)
    lines = [head, "-" * len(head)]
    for (ch, n), r in zip(rows, cells):
        lines.append(f"{n:>3} | " + " ".join(f"{x:>{width}}" for x in r))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# simple modules


def simple_representations(H) -> list:
    """Simple modules in the order of :func:`simple_characters`."""
    blocks = _blocks(H)
    for b in blocks:
        if b.rep is None:
            b.rep = _build_simple(H, b)
    return [b.rep for b in blocks]


def _build_simple(H, block: _Block) -> Representation:
    if block.dim == 1:
        return Representation(H, [CycArray.from_scalars([[v]]) for v in block.character.values])
    f = _primitive_idempotent(H, block)
    B = CycArray.from_scalars([[c for c in H.mul(H.basis_element(j), f).to_vector()] for j in range(H.dim)]).T
    basis = linalg.column_basis(B)
    if basis.shape[1] != block.dim:
        raise SplitFailure("minimal left ideal has the wrong dimension")
    action = []
    for i in range(H.dim):
        L = H.left_matrix(H.basis_element(i))
        X = linalg.solve(basis, L @ basis)
        if X is None:
            raise SplitFailure("left ideal is not stable")
        action.append(X)
    rep = Representation(H, action)
    if character(rep) != block.character:
        raise SplitFailure("simple module character mismatch")
    return rep


def _primitive_idempotent(H, block: _Block) -> SparseTensor:
    e, n = block.idempotent, block.dim
    fields = _fields_for(H)
    one = H.one()
    rest = one - e
    shift = 1000.0 + math.pi
    d = H.dim
    cands = [H.basis_element(i) for i in range(d)]
    cands += [H.basis_element(i) + H.basis_element(j) for i in range(d) for j in range(i + 1, d)]
    cands += [H.basis_element(i) + H.basis_element(j).scale(2) for i in range(d) for j in range(d) if i != j]
    for c in cands:
        a = H.mul(c, e)
        if a.is_zero():
            continue
        La = _numeric(H.left_matrix(a)) + shift * _numeric(H.left_matrix(rest))
        lam = [z for z in np.linalg.eigvals(La) if abs(z - shift) > 1e-3]
        clusters = _cluster(lam)
        if len(clusters) != n or any(len(cl) != n for cl in clusters):
            continue
        vals = [_recognize(np.mean(cl), fields) for cl in clusters]
        if any(v is None for v in vals):
            continue
        lam0 = vals[0]
        f = e
        for mu in vals[1:]:
            f = H.mul(f, (a - e.scale(mu)).scale((lam0 - mu).inverse()))
        if H.mul(f, f) == f and H.regular_trace(f) == n:
            return f
    raise SplitFailure(f"no primitive idempotent found in a block of dimension {n}")


def _cluster(vals, tol: float = 1e-6):
    clusters = []
    for z in vals:
        for cl in clusters:
            if abs(cl[0] - z) < tol:
                cl.append(z)
                break
        else:
            clusters.append([z])
    return clusters


# ---------------------------------------------------------------------------
# tensor powers, invariants, rotation


def comult_dense(H) -> CycArray:
    """C[j, a, b] with Delta(b_j) = sum C[j, a, b] b_a (x) b_b."""
    if "_comult_dense" not in H.__dict__:
        d = H.dim
        C = [[[ZERO] * d for _ in range(d)] for _ in range(d)]
        for j, row in enumerate(H.comult):
            for (a, b), c in row:
                C[j][a][b] = c
        H.__dict__["_comult_dense"] = CycArray.from_scalars(C)
    return H.__dict__["_comult_dense"]


def action_stack(rho: Representation) -> CycArray:
    """rho(b_j) stacked into shape (dim H, m, m)."""
    return stack(rho.action, axis=0)


def coproduct_power_stacks(H, rho: Representation, n: int) -> list:
    """S_k[j] = rho^{(x)k}(Delta^{(k)}(b_j)) as (dim H, m^k, m^k) arrays, k = 1..n."""
    _check_budget(rho.dim_v ** (2 * n) * H.dim)
    C = comult_dense(H)
    first = action_stack(rho)
    out = [first]
    for _ in range(2, n + 1):
        prev = out[-1]
        X = tensordot(C, first, ([1], [0]))         # j, b, P, P'
        X = tensordot(X, prev, ([1], [0]))          # j, P, P', Q, Q'
        d, p, _, q, _ = X.shape
        out.append(X.transpose(0, 1, 3, 2, 4).reshape(d, p * q, p * q))
    return out


def coproduct_power_images(H, rho: Representation, n: int) -> list:
    """R_k[j] = (rho^{(x)k})(Delta^{(k)}(b_j)) for k = 1..n (index 0 holds k = 1)."""
    return [[S[j] for j in range(H.dim)] for S in coproduct_power_stacks(H, rho, n)]


def tensor_power_action(H, rho: Representation, n: int) -> Representation:
    if n < 1:
        raise ValueError("n must be positive")
    return Representation(H, coproduct_power_images(H, rho, n)[-1])


def invariant_subspace(H, rho_n: Representation) -> CycArray:
    from .algebra import normalized_integral
    P = rho_n.of(normalized_integral(H))
    if P @ P != P:
        raise ProjectorNotIdempotent("the integral does not act as a projector")
    return linalg.column_basis(P)


def _rotation_matrix(m: int, n: int) -> CycArray:
    """E(u1 (x) ... (x) un) = u2 (x) ... (x) un (x) u1 on (C^m)^{(x)n}."""
    size = m ** n
    E = np.zeros((size, size), dtype=object)
    for idx in np.ndindex(*(m,) * n):
        src = np.ravel_multi_index(idx, (m,) * n) if n else 0
        dst = np.ravel_multi_index(idx[1:] + idx[:1], (m,) * n) if n else 0
        E[dst, src] = 1
    return CycArray.from_ints(E)


def rotation_indicator(H, rho: Representation, n: int, r: int) -> CycNumber:
    """Trace of the r-th power of the leg rotation on the invariants of V^{(x)n}."""
    if not H.is_hopf():
        raise NotOrdinaryHopf(f"{H.name} has a nontrivial associator or alpha, beta != 1")
    rho_n = tensor_power_action(H, rho, n)
    basis = invariant_subspace(H, rho_n)
    k = basis.shape[1]
    if k == 0:
        return CycNumber.rational(0)
    E = _rotation_matrix(rho.dim_v, n)
    X = linalg.solve(basis, E @ basis)
    if X is None:
        raise ArithmeticError("rotation does not preserve the invariant subspace")
    P = CycArray.identity(k)
    for _ in range(r):
        P = P @ X
    return P.trace()
