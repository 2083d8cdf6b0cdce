"""
Quasi-Hopf algebras given by structure constants.

Conventions: basis b_0..b_{d-1}; ``mult_table[i][j]`` lists (k, c) with
b_i b_j = sum c b_k; ``comult[i]`` lists ((j, k), c) with
Delta(b_i) = sum c b_j (x) b_k; ``antipode[i]`` lists (k, c) with
S(b_i) = sum c b_k.  Elements of H^{(x)k} are :class:`SparseTensor`.
The associator convention is phi (Delta(x)id)Delta(h) = (id(x)Delta)Delta(h) phi.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from gmpy2 import mpq

from . import linalg
from .cycarray import CycArray
from .scalars import ONE, ZERO, CycNumber, cyc, parse_scalar
from .tensor import (
    SparseTensor,
    algebra_product,
    apply_coproduct_leg,
    counit_leg,
    embed_factor,
    merge_legs,
    unit_tensor,
)


class ValidationFailure(RuntimeError):
    pass


class IdentityViolation(RuntimeError):
    def __init__(self, name: str, witness=None):
        super().__init__(f"identity {name} fails" + (f" at {witness}" if witness is not None else ""))
        self.name = name
        self.witness = witness


class NotUnimodularOrNotSemisimple(RuntimeError):
    pass


class CounitDegenerate(RuntimeError):
    pass


class GenerationFailure(RuntimeError):
    pass


def _rows(spec, d: int, key_len: int):
    """Normalize {i: {key: c}} / list-of-lists inputs into tuples of (key, c)."""
    out = []
    for i in range(d):
        entry = spec[i] if not isinstance(spec, dict) else spec.get(i, {})
        if isinstance(entry, dict):
            items = entry.items()
        else:
            items = entry
        row = []
        for k, c in items:
            c = cyc(c)
            if c:
                row.append((k if key_len == 2 else int(k), c))
        out.append(tuple(sorted(row, key=lambda t: t[0])))
    return out


class QuasiHopfAlgebra:
    """(H, Delta, eps, phi, alpha, beta, S) over a cyclotomic field."""

    def __init__(self, dim, mult, unit, coproduct, counit, associator, alpha, beta, antipode,
                 basis_labels=None, antipode_inverse=None, associator_inverse=None,
                 name: str = "H", tag: dict | None = None, _shared: dict | None = None):
        d = int(dim)
        self.dim = d
        self.name = name
        self.basis_labels = list(basis_labels) if basis_labels else [f"b{i}" for i in range(d)]
        if isinstance(mult, dict):
            self.mult_table = [[tuple(sorted(((int(k), cyc(c)) for k, c in
                                              (mult.get((i, j)) or {}).items() if cyc(c)),
                                             key=lambda t: t[0]))
                                for j in range(d)] for i in range(d)]
        else:
            self.mult_table = [[tuple((int(k), cyc(c)) for k, c in mult[i][j] if cyc(c))
                                for j in range(d)] for i in range(d)]
        self.comult = [tuple(((int(a), int(b)), c) for (a, b), c in row)
                       for row in _rows(coproduct, d, 2)]
        self.counit = [cyc(c) for c in counit]
        if isinstance(unit, dict):
            unit = unit.items()
        self.unit = tuple((int(k), cyc(c)) for k, c in unit if cyc(c))
        self.antipode = _rows(antipode, d, 1)
        self.associator = _as_tensor(associator, 3, d)
        self.alpha = _as_tensor(alpha, 1, d)
        self.beta = _as_tensor(beta, 1, d)
        self.tag = dict(tag or {})
        # in-memory construction data (base algebra, group, cocycle); not serialized
        self.provenance: dict = {}
        # data that only depends on the multiplication is shared with gauge twists
        self._shared = _shared if _shared is not None else {}
        self._assoc_inv = _as_tensor(associator_inverse, 3, d) if associator_inverse is not None else None
        if antipode_inverse is not None:
            self.antipode_inverse = _rows(antipode_inverse, d, 1)
        else:
            self.antipode_inverse = self._invert_antipode()

    # -- basic data ----------------------------------------------------------

    def _invert_antipode(self):
        S = self.antipode_matrix()
        try:
            Si = linalg.inverse(S)
        except ZeroDivisionError:
            raise ValidationFailure("antipode is not invertible") from None
        return [tuple((k, Si.entry((k, i))) for k in range(self.dim) if Si.entry((k, i)))
                for i in range(self.dim)]

    def antipode_matrix(self, inverse: bool = False) -> CycArray:
        rows = self.antipode_inverse if inverse else self.antipode
        M = [[ZERO] * self.dim for _ in range(self.dim)]
        for i, row in enumerate(rows):
            for k, c in row:
                M[k][i] = c
        return CycArray.from_scalars(M)

    @property
    def associator_inverse(self) -> SparseTensor:
        if self._assoc_inv is None:
            from .engine import invert
            self._assoc_inv = invert(self, self.associator)
        return self._assoc_inv

    @property
    def mult(self) -> CycArray:
        """Dense structure constants m[i, j, k]."""
        if "mult_dense" not in self._shared:
            d = self.dim
            M = [[[ZERO] * d for _ in range(d)] for _ in range(d)]
            for i in range(d):
                for j in range(d):
                    for k, c in self.mult_table[i][j]:
                        M[i][j][k] = c
            self._shared["mult_dense"] = CycArray.from_scalars(M)
        return self._shared["mult_dense"]

    def is_hopf(self) -> bool:
        """Trivial associator and alpha = beta = 1."""
        one = self.one()
        return (self.associator == unit_tensor(self, 3) and self.alpha == one and self.beta == one)

    def conductor(self) -> int:
        from math import lcm
        N = 1
        for row in self.mult_table:
            for cell in row:
                for _, c in cell:
                    N = lcm(N, c.reduced().N)
        for row in self.comult:
            for _, c in row:
                N = lcm(N, c.reduced().N)
        for t in (self.associator, self.alpha, self.beta):
            N = lcm(N, t.conductor())
        return N

    def __repr__(self):
        return f"QuasiHopfAlgebra({self.name!r}, dim={self.dim})"

    # -- element helpers ------------------------------------------------------

    def element(self, coeffs) -> SparseTensor:
        """1-leg tensor from a dict {index or label: c} or a coefficient list."""
        if isinstance(coeffs, SparseTensor):
            return coeffs
        if isinstance(coeffs, dict):
            ent = {}
            for k, c in coeffs.items():
                i = self.basis_labels.index(k) if isinstance(k, str) else int(k)
                ent[(i,)] = cyc(c)
            return SparseTensor(1, self.dim, ent)
        return SparseTensor.from_vector(list(coeffs))

    def basis_element(self, i) -> SparseTensor:
        if isinstance(i, str):
            i = self.basis_labels.index(i)
        return SparseTensor._trusted(1, self.dim, {(i,): ONE})

    def one(self, legs: int = 1) -> SparseTensor:
        return unit_tensor(self, legs)

    def mul(self, *factors: SparseTensor) -> SparseTensor:
        from .engine import product
        out = factors[0]
        for f in factors[1:]:
            out = product(self, out, f)
        return out

    def S(self, t: SparseTensor, leg: int = 0, inverse: bool = False) -> SparseTensor:
        return t.map_leg(leg, self.antipode_inverse if inverse else self.antipode)

    def delta(self, t: SparseTensor, leg: int = 0) -> SparseTensor:
        return apply_coproduct_leg(self, t, leg)

    def eps(self, t: SparseTensor, leg: int = 0) -> SparseTensor:
        return counit_leg(self, t, leg)

    def counit_value(self, t: SparseTensor) -> CycNumber:
        return self.eps(t, 0).scalar()

    def embed(self, t: SparseTensor, legs: int, position: int) -> SparseTensor:
        return embed_factor(t, legs, position, unit=self.unit)

    def merge(self, t: SparseTensor, left: int, right: int) -> SparseTensor:
        return merge_legs(self, t, left, right)

    def left_matrix(self, t: SparseTensor) -> CycArray:
        """Matrix of left multiplication by a 1-leg element."""
        d = self.dim
        M = [[ZERO] * d for _ in range(d)]
        for (i,), c in t.items():
            for j in range(d):
                for k, v in self.mult_table[i][j]:
                    M[k][j] = M[k][j] + c * v
        return CycArray.from_scalars(M)

    def regular_trace(self, t: SparseTensor) -> CycNumber:
        tau = self._shared.get("tau")
        if tau is None:
            tau = []
            for i in range(self.dim):
                s = ZERO
                for j in range(self.dim):
                    for k, v in self.mult_table[i][j]:
                        if k == j:
                            s = s + v
                tau.append(s)
            self._shared["tau"] = tau
        s = ZERO
        for (i,), c in t.items():
            if tau[i]:
                s = s + c * tau[i]
        return s

    def inverse_element(self, t: SparseTensor) -> SparseTensor | None:
        """Two-sided inverse of a 1-leg element, or None if singular."""
        L = self.left_matrix(t)
        one = CycArray.from_scalars([c for c in self.one().to_vector()])
        x = linalg.solve(L, one)
        if x is None:
            return None
        inv = SparseTensor.from_vector(x.tolist())
        if self.mul(inv, t) != self.one():
            return None
        return inv

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        enc = lambda c: c.to_json()  # noqa: E731
        mult = [[i, j, k, enc(c)] for i in range(self.dim) for j in range(self.dim)
                for k, c in self.mult_table[i][j]]
        comult = [[i, a, b, enc(c)] for i in range(self.dim) for (a, b), c in self.comult[i]]
        tens = lambda t: [list(k) + [enc(v)] for k, v in sorted(t.items())]  # noqa: E731
        out = {
            "name": self.name,
            "dim": self.dim,
            "basis_labels": self.basis_labels,
            "mult": mult,
            "unit": [[k, enc(c)] for k, c in self.unit],
            "coproduct": comult,
            "counit": [enc(c) for c in self.counit],
            "associator": tens(self.associator),
            "alpha": tens(self.alpha),
            "beta": tens(self.beta),
            "antipode": [[i, k, enc(c)] for i in range(self.dim) for k, c in self.antipode[i]],
        }
        if self._assoc_inv is not None:
            out["associator_inverse"] = tens(self._assoc_inv)
        if self.tag:
            out["construction"] = self.tag
        return out

    @classmethod
    def from_json(cls, obj) -> QuasiHopfAlgebra:
        if isinstance(obj, str):
            obj = json.loads(obj)
        d = int(obj["dim"])
        mult: dict = {}
        for i, j, k, c in obj["mult"]:
            mult.setdefault((i, j), {})[k] = parse_scalar(c)
        comult: dict = {}
        for i, a, b, c in obj["coproduct"]:
            comult.setdefault(i, {})[(a, b)] = parse_scalar(c)
        antipode: dict = {}
        for i, k, c in obj["antipode"]:
            antipode.setdefault(i, {})[k] = parse_scalar(c)

        def tens(rows, legs):
            return SparseTensor(legs, d, {tuple(r[:-1]): parse_scalar(r[-1]) for r in rows})

        unit = obj.get("unit")
        unit = {k: parse_scalar(c) for k, c in unit} if unit is not None else {0: ONE}
        inv = obj.get("associator_inverse")
        return cls(
            d, mult, unit, comult, [parse_scalar(c) for c in obj["counit"]],
            tens(obj["associator"], 3), tens(obj["alpha"], 1), tens(obj["beta"], 1), antipode,
            basis_labels=obj.get("basis_labels"), name=obj.get("name", "H"),
            associator_inverse=tens(inv, 3) if inv is not None else None,
            tag=obj.get("construction"),
        )

    def structurally_equal(self, other: QuasiHopfAlgebra) -> bool:
        if self.dim != other.dim:
            return False
        same_rows = lambda a, b: all(dict(x) == dict(y) for x, y in zip(a, b))  # noqa: E731
        return (all(same_rows(r1, r2) for r1, r2 in zip(self.mult_table, other.mult_table))
                and same_rows(self.comult, other.comult)
                and self.counit == other.counit
                and dict(self.unit) == dict(other.unit)
                and same_rows(self.antipode, other.antipode)
                and self.associator == other.associator
                and self.alpha == other.alpha
                and self.beta == other.beta)


def _as_tensor(x, legs: int, d: int) -> SparseTensor:
    if isinstance(x, SparseTensor):
        return x
    if isinstance(x, dict):
        return SparseTensor(legs, d, {(k,) if isinstance(k, int) else tuple(k): v for k, v in x.items()})
    raise TypeError(f"cannot read a {legs}-leg tensor from {type(x).__name__}")


# ---------------------------------------------------------------------------
# validation


@dataclass
class AxiomCheck:
    name: str
    formula: str
    passed: bool
    witness: object = None


@dataclass
class ValidationReport:
    algebra: str
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    @property
    def pentagon_only(self) -> bool:
        """True when the pentagon is the only failing axiom."""
        f = self.failures
        return len(f) == 1 and f[0].name == "pentagon"

    def __getitem__(self, name) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"algebra": self.algebra, "ok": self.ok, "pentagon_only_failure": self.pentagon_only,
                "checks": [{"name": c.name, "formula": c.formula, "passed": c.passed,
                            "witness": c.witness} for c in self.checks]}

    def __str__(self):
        lines = [f"validation of {self.algebra}"]
        width = max(len(c.name) for c in self.checks)
        for c in self.checks:
            mark = "pass" if c.passed else "FAIL"
            wit = "" if c.passed or c.witness is None else f"  witness={c.witness}"
            lines.append(f"  {c.name:<{width}}  {mark}  {c.formula}{wit}")
        if self.pentagon_only:
            lines.append("  note: only the pentagon fails")
        lines.append("all axioms pass" if self.ok else f"{len(self.failures)} axiom(s) fail")
        return "\n".join(lines)


def _first_failure(items, pred):
    for it in items:
        if not pred(it):
            return it
    return None


def validate(H: QuasiHopfAlgebra) -> ValidationReport:
    rep = ValidationReport(H.name)
    d = H.dim
    B = [H.basis_element(i) for i in range(d)]
    one = H.one()
    add = lambda *a: rep.checks.append(AxiomCheck(*a))  # noqa: E731

    def ok(bad, name, formula):
        add(name, formula, bad is None, bad)

    # algebra
    def assoc(ijk):
        i, j, k = ijk
        return H.mul(H.mul(B[i], B[j]), B[k]) == H.mul(B[i], H.mul(B[j], B[k]))

    triples = [(i, j, k) for i in range(d) for j in range(d) for k in range(d)]
    ok(_first_failure(triples, assoc), "associativity", "(ab)c = a(bc)")
    ok(_first_failure(range(d), lambda i: H.mul(one, B[i]) == B[i] and H.mul(B[i], one) == B[i]),
       "unit", "1a = a = a1")

    # coalgebra / bialgebra
    eps_one = H.counit_value(one)
    pairs = [(i, j) for i in range(d) for j in range(d)]
    ok(None if eps_one == 1 else "unit", "counit-unit", "eps(1) = 1")
    ok(_first_failure(pairs, lambda p: H.counit_value(H.mul(B[p[0]], B[p[1]]))
                      == H.counit[p[0]] * H.counit[p[1]]),
       "counit-multiplicative", "eps(ab) = eps(a)eps(b)")
    D = [H.delta(b) for b in B]
    ok(None if H.delta(one) == H.one(2) else "unit", "coproduct-unit", "Delta(1) = 1(x)1")
    from .engine import product

    def delta_mult(p):
        i, j = p
        return H.delta(H.mul(B[i], B[j])) == product(H, D[i], D[j])

    ok(_first_failure(pairs, delta_mult), "coproduct-multiplicative", "Delta(ab) = Delta(a)Delta(b)")
    ok(_first_failure(range(d), lambda i: H.eps(D[i], 0) == B[i] and H.eps(D[i], 1) == B[i]),
       "counit-axiom", "(eps(x)id)Delta = id = (id(x)eps)Delta")

    # associator
    phi = H.associator
    try:
        phinv = H.associator_inverse
        inv_ok = product(H, phi, phinv) == H.one(3) and product(H, phinv, phi) == H.one(3)
    except (ZeroDivisionError, ValidationFailure, ArithmeticError):
        phinv, inv_ok = None, False
    ok(None if inv_ok else "phi", "associator-invertible", "phi phi^-1 = 1 = phi^-1 phi")

    def quasi_coassoc(i):
        left = product(H, phi, H.delta(D[i], 0))
        right = product(H, H.delta(D[i], 1), phi)
        return left == right

    ok(_first_failure(range(d), quasi_coassoc), "quasi-coassociativity",
       "phi (Delta(x)id)Delta(h) = (id(x)Delta)Delta(h) phi")

    lhs = product(H, product(H, H.embed(phi, 4, 1), H.delta(phi, 1)), H.embed(phi, 4, 0))
    rhs = product(H, H.delta(phi, 2), H.delta(phi, 0))
    ok(None if lhs == rhs else "phi", "pentagon",
       "(1(x)phi)(id(x)Delta(x)id)(phi)(phi(x)1) = (id(x)id(x)Delta)(phi)(Delta(x)id(x)id)(phi)")
    ok(None if H.eps(phi, 1) == H.one(2) else "phi", "associator-counit", "(id(x)eps(x)id)(phi) = 1(x)1")

    # antipode with alpha and beta
    alpha, beta = H.alpha, H.beta

    def s_alpha(i):
        t = H.S(D[i], 0)
        t = product(H, t, H.embed(alpha, 2, 0))
        return H.merge(t, 0, 1) == alpha.scale(H.counit[i])

    def s_beta(i):
        t = product(H, D[i], H.embed(beta, 2, 0))
        t = H.S(t, 1)
        return H.merge(t, 0, 1) == beta.scale(H.counit[i])

    ok(_first_failure(range(d), s_alpha), "antipode-alpha", "S(h1) alpha h2 = eps(h) alpha")
    ok(_first_failure(range(d), s_beta), "antipode-beta", "h1 beta S(h2) = eps(h) beta")
    ok(None if _phi_beta_alpha(H, phi) == one else "phi", "antipode-associator",
       "phi1 beta S(phi2) alpha phi3 = 1")
    good = phinv is not None and _phiinv_alpha_beta(H, phinv) == one
    ok(None if good else "phi^-1", "antipode-associator-inverse",
       "S(phi^-1) alpha phi^-2 beta S(phi^-3) = 1")
    return rep


def _phi_beta_alpha(H, phi):
    """phi1 beta S(phi2) alpha phi3."""
    t = H.S(phi, 1)
    t = H.mul(t, H.embed(H.beta, 3, 0))          # phi1 beta
    t = H.mul(t, H.embed(H.alpha, 3, 1))         # S(phi2) alpha
    t = H.merge(t, 0, 1)
    return H.merge(t, 0, 1)


def _phiinv_alpha_beta(H, phinv):
    """S(phi^-1) alpha phi^-2 beta S(phi^-3)."""
    t = H.S(phinv, 0)
    t = H.S(t, 2)
    t = H.mul(t, H.embed(H.alpha, 3, 0))
    t = H.mul(t, H.embed(H.beta, 3, 1))
    t = H.merge(t, 0, 1)
    return H.merge(t, 0, 1)


def require_valid(H: QuasiHopfAlgebra) -> QuasiHopfAlgebra:
    rep = validate(H)
    if not rep.ok:
        raise ValidationFailure(str(rep))
    return H


# ---------------------------------------------------------------------------
# Hausser-Nill elements


@dataclass
class HausserNill:
    q_R: SparseTensor
    p_R: SparseTensor
    q_L: SparseTensor
    p_L: SparseTensor

    def __iter__(self):
        return iter((self.q_R, self.p_R, self.q_L, self.p_L))


def _sum_terms(H, t: SparseTensor, fn, legs: int) -> SparseTensor:
    out = SparseTensor.zero(legs, H.dim)
    for k, c in t.items():
        out = out + fn(*k).scale(c)
    return out


def _b(H, i):
    return H.basis_element(i)


def hausser_nill_elements(H: QuasiHopfAlgebra, check: bool = True) -> HausserNill:
    if "hn" in H.__dict__:
        hn = H.__dict__["hn"]
        if check and not H.__dict__.get("hn_checked"):
            _check_hn(H, hn)
        return hn
    phi, phinv = H.associator, H.associator_inverse
    # q_R = phi1 (x) S^-1(alpha phi3) phi2
    t = H.mul(H.embed(H.alpha, 3, 2), phi)
    t = H.S(t, 2, inverse=True)
    q_R = H.merge(t, 2, 1)
    # p_R = phi^-1 (x) phi^-2 beta S(phi^-3)
    t = H.S(phinv, 2)
    t = H.mul(t, H.embed(H.beta, 3, 1))
    p_R = H.merge(t, 1, 2)
    # q_L = S(phi^-1) alpha phi^-2 (x) phi^-3
    t = H.S(phinv, 0)
    t = H.mul(t, H.embed(H.alpha, 3, 0))
    q_L = H.merge(t, 0, 1)
    # p_L = phi2 S^-1(phi1 beta) (x) phi3
    t = H.mul(phi, H.embed(H.beta, 3, 0))
    t = H.S(t, 0, inverse=True)
    p_L = H.merge(t, 1, 0)
    hn = HausserNill(q_R, p_R, q_L, p_L)
    H.__dict__["hn"] = hn
    if check:
        _check_hn(H, hn)
    return hn


def _check_hn(H, hn: HausserNill) -> None:
    for name, value in hn_inverse_identities(H, hn).items():
        if value != H.one(2):
            raise IdentityViolation(name)
    H.__dict__["hn_checked"] = True


def hn_inverse_identities(H, hn: HausserNill) -> dict:
    """The four products that must all equal 1(x)1."""
    q_R, p_R, q_L, p_L = hn
    mul = H.mul
    # Delta(q_R1) p_R (1 (x) S(q_R2))
    a = _sum_terms(H, q_R, lambda i, j: mul(H.delta(_b(H, i)), p_R, H.embed(H.S(_b(H, j)), 2, 1)), 2)
    # (1 (x) S^-1(p_R2)) q_R Delta(p_R1)
    b = _sum_terms(H, p_R, lambda i, j: mul(H.embed(H.S(_b(H, j), inverse=True), 2, 1), q_R,
                                              H.delta(_b(H, i))), 2)
    # Delta(q_L2) p_L (S^-1(q_L1) (x) 1)
    c = _sum_terms(H, q_L, lambda i, j: mul(H.delta(_b(H, j)), p_L,
                                              H.embed(H.S(_b(H, i), inverse=True), 2, 0)), 2)
    # (S(p_L1) (x) 1) q_L Delta(p_L2)
    e = _sum_terms(H, p_L, lambda i, j: mul(H.embed(H.S(_b(H, i)), 2, 0), q_L, H.delta(_b(H, j))), 2)
    return {"Delta(q_R1) p_R (1(x)S(q_R2)) = 1(x)1": a,
            "(1(x)S^-1(p_R2)) q_R Delta(p_R1) = 1(x)1": b,
            "Delta(q_L2) p_L (S^-1(q_L1)(x)1) = 1(x)1": c,
            "(S(p_L1)(x)1) q_L Delta(p_L2) = 1(x)1": e}


def hn_commutation_failures(H: QuasiHopfAlgebra, hn: HausserNill | None = None) -> list:
    """Basis elements violating the four commutation rules of q_R, p_R, q_L, p_L."""
    hn = hn or hausser_nill_elements(H)
    q_R, p_R, q_L, p_L = hn
    mul, emb = H.mul, H.embed
    bad = []
    for a in range(H.dim):
        A = _b(H, a)
        Da = H.delta(A)
        # (a (x) 1) q_R = (1 (x) S^-1(a2)) q_R Delta(a1)
        lhs = mul(emb(A, 2, 0), q_R)
        rhs = _sum_terms(H, Da, lambda i, j: mul(emb(H.S(_b(H, j), inverse=True), 2, 1), q_R,
                                                 H.delta(_b(H, i))), 2)
        if lhs != rhs:
            bad.append(("q_R", a))
        # p_R (a (x) 1) = Delta(a1) p_R (1 (x) S(a2))
        lhs = mul(p_R, emb(A, 2, 0))
        rhs = _sum_terms(H, Da, lambda i, j: mul(H.delta(_b(H, i)), p_R, emb(H.S(_b(H, j)), 2, 1)), 2)
        if lhs != rhs:
            bad.append(("p_R", a))
        # (1 (x) a) q_L = (S(a1) (x) 1) q_L Delta(a2)
        lhs = mul(emb(A, 2, 1), q_L)
        rhs = _sum_terms(H, Da, lambda i, j: mul(emb(H.S(_b(H, i)), 2, 0), q_L, H.delta(_b(H, j))), 2)
        if lhs != rhs:
            bad.append(("q_L", a))
        # p_L (1 (x) a) = Delta(a2) p_L (S^-1(a1) (x) 1)
        lhs = mul(p_L, emb(A, 2, 1))
        rhs = _sum_terms(H, Da, lambda i, j: mul(H.delta(_b(H, j)), p_L,
                                                 emb(H.S(_b(H, i), inverse=True), 2, 0)), 2)
        if lhs != rhs:
            bad.append(("p_L", a))
    return bad


def verify_theta_isomorphism(H: QuasiHopfAlgebra) -> bool:
    """theta(h(x)v) = q_R1 h1 (x) S(q_R2 h2) v against theta-bar(h(x)v) = h1 p_R1 (x) h2 p_R2 v on H(x)H."""
    q_R, p_R = hausser_nill_elements(H).q_R, hausser_nill_elements(H).p_R
    d = H.dim
    theta = [[ZERO] * (d * d) for _ in range(d * d)]
    theta_bar = [[ZERO] * (d * d) for _ in range(d * d)]
    for i in range(d):
        Dh = H.delta(_b(H, i))
        left = H.S(H.mul(q_R, Dh), 1)
        right = H.mul(Dh, p_R)
        for j in range(d):
            v = H.embed(_b(H, j), 2, 1)
            col = i * d + j
            for (a, b), c in H.mul(left, v).items():
                theta[a * d + b][col] = c
            for (a, b), c in H.mul(right, v).items():
                theta_bar[a * d + b][col] = c
    T, Tb = CycArray.from_scalars(theta), CycArray.from_scalars(theta_bar)
    eye = CycArray.identity(d * d)
    return T @ Tb == eye and Tb @ T == eye


# ---------------------------------------------------------------------------
# gauge transformations


@dataclass
class GaugeTransform:
    F: SparseTensor
    F_inverse: SparseTensor

    def check(self, H: QuasiHopfAlgebra) -> bool:
        one2 = H.one(2)
        return (H.mul(self.F, self.F_inverse) == one2 and H.mul(self.F_inverse, self.F) == one2
                and H.eps(self.F, 0) == H.one() and H.eps(self.F, 1) == H.one())

    def inverse(self) -> GaugeTransform:
        return GaugeTransform(self.F_inverse, self.F)

    def to_json(self) -> dict:
        enc = lambda t: [list(k) + [v.to_json()] for k, v in sorted(t.items())]  # noqa: E731
        return {"F": enc(self.F), "F_inverse": enc(self.F_inverse)}


def trivial_gauge(H) -> GaugeTransform:
    return GaugeTransform(H.one(2), H.one(2))


def gauge_twist(H: QuasiHopfAlgebra, gauge: GaugeTransform, check: bool = True,
                name: str | None = None) -> QuasiHopfAlgebra:
    F, Fi = gauge.F, gauge.F_inverse
    mul = H.mul
    comult = []
    for i in range(H.dim):
        DF = mul(F, H.delta(_b(H, i)), Fi)
        comult.append({k: v for k, v in DF.items()})
    one = H.one()
    phi = mul(H.embed(F, 3, 1), H.delta(F, 1), H.associator, H.delta(Fi, 0), H.embed(Fi, 3, 0))
    phinv = mul(H.embed(F, 3, 0), H.delta(F, 0), H.associator_inverse, H.delta(Fi, 1),
                H.embed(Fi, 3, 1))
    # alpha^F = S(d_i) alpha e_i, beta^F = f_i beta S(g_i)
    t = mul(H.S(Fi, 0), H.embed(H.alpha, 2, 0))
    alpha = H.merge(t, 0, 1)
    t = H.S(mul(F, H.embed(H.beta, 2, 0)), 1)
    beta = H.merge(t, 0, 1)
    del one
    tag = dict(H.tag)
    tag["gauge"] = tag.get("gauge", 0) + 1
    out = QuasiHopfAlgebra(
        H.dim, H.mult_table, H.unit, comult, H.counit, phi, alpha, beta, H.antipode,
        basis_labels=H.basis_labels, antipode_inverse=H.antipode_inverse,
        associator_inverse=phinv, name=name or f"{H.name}^F", tag=tag, _shared=H._shared,
    )
    if check:
        rep = validate(out)
        if not rep.ok:
            raise ValidationFailure(str(rep))
    return out


def _counit_project(H, G: SparseTensor) -> SparseTensor:
    """G - 1(x)(eps(x)id)G - (id(x)eps)G(x)1 + (eps(x)eps)(G) 1(x)1."""
    left = H.eps(G, 0)     # (eps (x) id) G, lives on the second factor
    right = H.eps(G, 1)    # (id (x) eps) G, lives on the first factor
    both = H.eps(left, 0).scalar()
    return G - H.embed(left, 2, 1) - H.embed(right, 2, 0) + H.one(2).scale(both)


def random_gauge_transform(H: QuasiHopfAlgebra, seed: int, terms: int = 3,
                           retries: int = 32) -> GaugeTransform:
    from .engine import invert
    rng = random.Random(seed)
    d = H.dim
    for _ in range(retries):
        ent = {}
        for _ in range(terms):
            key = (rng.randrange(d), rng.randrange(d))
            ent[key] = CycNumber.rational(mpq(rng.choice([-2, -1, 1, 2]), rng.choice([1, 2])))
        P = _counit_project(H, SparseTensor(2, d, ent))
        if P.is_zero():
            continue
        F = H.one(2) + P
        try:
            Fi = invert(H, F)
        except ZeroDivisionError:
            continue
        if Fi is None:
            continue
        g = GaugeTransform(F, Fi)
        if g.check(H):
            return g
    raise GenerationFailure(f"no invertible gauge after {retries} tries (seed {seed})")


# ---------------------------------------------------------------------------
# integrals, centre, group-likes


def normalized_integral(H: QuasiHopfAlgebra) -> SparseTensor:
    if "integral" in H._shared:
        return H._shared["integral"]
    d = H.dim
    rows = []
    for h in range(d):
        for k in range(d):
            # (b_h L)_k - eps(b_h) L_k  and  (L b_h)_k - eps(b_h) L_k
            rl = [ZERO] * d
            rr = [ZERO] * d
            for j in range(d):
                for kk, c in H.mult_table[h][j]:
                    if kk == k:
                        rl[j] = rl[j] + c
                for kk, c in H.mult_table[j][h]:
                    if kk == k:
                        rr[j] = rr[j] + c
            rl[k] = rl[k] - H.counit[h]
            rr[k] = rr[k] - H.counit[h]
            rows.append(rl)
            rows.append(rr)
    ns = linalg.nullspace(CycArray.from_scalars(rows))
    if ns.shape[1] != 1:
        raise NotUnimodularOrNotSemisimple(f"integral space has dimension {ns.shape[1]}")
    v = [ns.entry((i, 0)) for i in range(d)]
    e = sum((H.counit[i] * v[i] for i in range(d)), ZERO)
    if not e:
        raise CounitDegenerate("counit vanishes on the integral space")
    Lam = SparseTensor.from_vector([x / e for x in v])
    H._shared["integral"] = Lam
    return Lam


def is_central(H: QuasiHopfAlgebra, z: SparseTensor) -> bool:
    return all(H.mul(z, _b(H, i)) == H.mul(_b(H, i), z) for i in range(H.dim))


def center_basis(H: QuasiHopfAlgebra) -> list:
    """Basis of Z(H) as 1-leg tensors."""
    if "center" in H._shared:
        return H._shared["center"]
    d = H.dim
    rows = []
    for i in range(d):
        for k in range(d):
            r = [ZERO] * d
            for j in range(d):
                for kk, c in H.mult_table[j][i]:
                    if kk == k:
                        r[j] = r[j] + c
                for kk, c in H.mult_table[i][j]:
                    if kk == k:
                        r[j] = r[j] - c
            rows.append(r)
    ns = linalg.nullspace(CycArray.from_scalars(rows))
    basis = [SparseTensor.from_vector([ns.entry((i, c)) for i in range(d)]) for c in range(ns.shape[1])]
    H._shared["center"] = basis
    return basis


def _power(H, g: SparseTensor, k: int) -> SparseTensor:
    out = H.one()
    for _ in range(k):
        out = H.mul(out, g)
    return out


def find_central_grouplikes(H: QuasiHopfAlgebra, order: int) -> list:
    """
    Central g != 1 with Delta(g) = g(x)g, eps(g) = 1 and g^order = 1.

    A central group-like of finite order acts on each simple block by an
    ``order``-th root of unity, so it is sum_i c_i e_i over the central
    primitive idempotents with c_i in mu_order; the block of the trivial
    module is forced to 1 by eps(g) = 1.  All such candidates are scanned.
    """
    from itertools import product as iproduct

    from .reptheory import central_idempotents
    from .scalars import root_of_unity

    idem = central_idempotents(H)
    triv = [i for i, e in enumerate(idem) if H.counit_value(e) == 1]
    roots = [root_of_unity(order, k) for k in range(order)]
    out = []
    one = H.one()
    free = [i for i in range(len(idem)) if i not in triv]
    for choice in iproduct(roots, repeat=len(free)):
        g = SparseTensor.zero(1, H.dim)
        for i in triv:
            g = g + idem[i]
        for i, c in zip(free, choice):
            g = g + idem[i].scale(c)
        if g == one:
            continue
        if H.delta(g) != g.tensor(g):
            continue
        if _power(H, g, order) != one or H.counit_value(g) != 1:
            continue
        out.append(g)
    return out


def to_json_str(H: QuasiHopfAlgebra) -> str:
    return json.dumps(H.to_json(), sort_keys=True)
