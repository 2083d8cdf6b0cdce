"""
Builders: finite groups, 3-cocycles, C[G], H(G, w), central twists H_u,
twisted doubles D^w(G) and the 8-dimensional Kac algebra.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product as iproduct

from gmpy2 import mpq

from .algebra import GaugeTransform, QuasiHopfAlgebra, ValidationFailure, is_central, validate
from .scalars import ONE, CycNumber, cyc, is_root_of_unity, parse_scalar, root_of_unity
from .tensor import SparseTensor

HALF = CycNumber.rational(mpq(1, 2))


class NotCentral(ValueError):
    pass


class NotGrouplike(ValueError):
    pass


class BadCharacterTable(ValueError):
    pass


class InvalidCocycle(ValueError):
    pass


# ---------------------------------------------------------------------------
# groups


@dataclass
class FiniteGroup:
    order: int
    mult_table: list
    inverse: list
    identity: int
    labels: list
    name: str = "G"

    def mul(self, *xs) -> int:
        out = self.identity
        for x in xs:
            out = self.mult_table[out][x]
        return out

    def inv(self, x: int) -> int:
        return self.inverse[x]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inverse[x], -k
        out = self.identity
        for _ in range(k):
            out = self.mult_table[out][x]
        return out

    def conj(self, g: int, x: int) -> int:
        """g^x = x^-1 g x."""
        return self.mul(self.inverse[x], g, x)

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.mult_table[y][x]
            k += 1
        return k

    def center(self) -> list:
        return [g for g in range(self.order)
                if all(self.mult_table[g][h] == self.mult_table[h][g] for h in range(self.order))]

    def index(self, label) -> int:
        if isinstance(label, int):
            return label
        return self.labels.index(label)

    def elements(self):
        return range(self.order)

    def check(self) -> None:
        n, m, e = self.order, self.mult_table, self.identity
        for a in range(n):
            if m[a][e] != a or m[e][a] != a:
                raise ValueError("identity law fails")
            if m[a][self.inverse[a]] != e or m[self.inverse[a]][a] != e:
                raise ValueError("inverse law fails")
        for a, b, c in iproduct(range(n), repeat=3):
            if m[m[a][b]][c] != m[a][m[b][c]]:
                raise ValueError(f"associativity fails at {(a, b, c)}")

    def to_json(self) -> dict:
        return {"name": self.name, "labels": self.labels, "mult": self.mult_table}

    @classmethod
    def from_table(cls, table, labels=None, name="G") -> FiniteGroup:
        n = len(table)
        e = next(a for a in range(n) if all(table[a][b] == b for b in range(n)))
        inv = [next(b for b in range(n) if table[a][b] == e) for a in range(n)]
        G = cls(n, [list(r) for r in table], inv, e, list(labels or [f"g{i}" for i in range(n)]), name)
        G.check()
        return G

    @classmethod
    def from_json(cls, obj) -> FiniteGroup:
        return cls.from_table(obj["mult"], obj.get("labels"), obj.get("name", "G"))


def _cyclic(n: int) -> FiniteGroup:
    labels = ["1"] + ["g" if k == 1 else f"g^{k}" for k in range(1, n)]
    return FiniteGroup.from_table([[(a + b) % n for b in range(n)] for a in range(n)], labels, f"Z{n}")


def _dihedral(order: int) -> FiniteGroup:
    # r^a s^b with index a + m*b; s r s = r^-1
    m = order // 2

    def lab(a, b):
        r = "" if a == 0 else ("r" if a == 1 else f"r^{a}")
        s = "s" if b else ""
        return (r + s) or "1"

    def mul(i, j):
        a, b = i % m, i // m
        c, d = j % m, j // m
        return (a + (c if b == 0 else -c)) % m + m * ((b + d) % 2)

    table = [[mul(i, j) for j in range(order)] for i in range(order)]
    return FiniteGroup.from_table(table, [lab(i % m, i // m) for i in range(order)], f"D{order}")


def _quaternion8() -> FiniteGroup:
    # units 1, i, j, k with signs; index = unit + 4*(sign is negative)
    unit_mul = {  # (p, q) -> (sign, r)
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def mul(a, b):
        s, r = unit_mul[(a % 4, b % 4)]
        neg = (a >= 4) ^ (b >= 4) ^ (s < 0)
        return r + 4 * neg

    names = ["1", "i", "j", "k"]
    labels = names + ["-" + x for x in names]
    return FiniteGroup.from_table([[mul(a, b) for b in range(8)] for a in range(8)], labels, "Q8")


def _product(G: FiniteGroup, K: FiniteGroup) -> FiniteGroup:
    n, m = G.order, K.order
    table = [[G.mult_table[a // m][b // m] * m + K.mult_table[a % m][b % m] for b in range(n * m)]
             for a in range(n * m)]
    labels = [f"({G.labels[a // m]},{K.labels[a % m]})" for a in range(n * m)]
    return FiniteGroup.from_table(table, labels, f"{G.name}x{K.name}")


def build_group(kind: str, *params) -> FiniteGroup:
    """
    ``build_group("cyclic", n)``, ``("dihedral", 2n)``, ``("quaternion8",)``,
    ``("klein4",)`` or ``("product", G, K)``.  Short names such as "Z4", "D8",
    "Q8", "V4" are accepted as ``kind`` too.
    """
    k = kind.strip()
    if params == () and k[:1] in "ZD" and k[1:].isdigit():
        return build_group("cyclic" if k[0] == "Z" else "dihedral", int(k[1:]))
    if k in ("Q8", "quaternion8"):
        return _quaternion8()
    if k in ("V4", "klein4"):
        G = _product(_cyclic(2), _cyclic(2))
        G.labels = ["1", "a", "b", "ab"]
        G.name = "V4"
        return G
    if k == "cyclic":
        (n,) = params
        if n < 1:
            raise ValueError("cyclic group needs n >= 1")
        return _cyclic(int(n))
    if k == "dihedral":
        (order,) = params
        if order < 2 or order % 2:
            raise ValueError("dihedral group needs an even order >= 2")
        return _dihedral(int(order))
    if k == "product":
        G, K = params
        return _product(G, K)
    raise ValueError(f"unknown group kind {kind!r}")


# ---------------------------------------------------------------------------
# cochains


@dataclass
class Cocycle3:
    group: FiniteGroup
    values: list  # flat, index (a*n + b)*n + c

    def __call__(self, a: int, b: int, c: int) -> CycNumber:
        n = self.group.order
        return self.values[(a * n + b) * n + c]

    @classmethod
    def from_function(cls, G: FiniteGroup, f) -> Cocycle3:
        return cls(G, [cyc(f(a, b, c)) for a, b, c in iproduct(range(G.order), repeat=3)])

    @classmethod
    def trivial(cls, G: FiniteGroup) -> Cocycle3:
        return cls(G, [ONE] * G.order ** 3)

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values)

    def inverse(self) -> Cocycle3:
        return Cocycle3(self.group, [v.inverse() for v in self.values])

    def __mul__(self, other: Cocycle3) -> Cocycle3:
        return Cocycle3(self.group, [a * b for a, b in zip(self.values, other.values)])

    def __eq__(self, other):
        return isinstance(other, Cocycle3) and self.values == other.values

    __hash__ = None

    def failures(self) -> list:
        """Names of violated invariants (empty when valid)."""
        G, e, bad = self.group, self.group.identity, []
        n = G.order
        for a, b, c in iproduct(range(n), repeat=3):
            if e in (a, b, c) and self(a, b, c) != 1:
                bad.append(("normalized", (a, b, c)))
                break
        if not all(is_root_of_unity(v) for v in self.values):
            bad.append(("roots-of-unity", None))
        m = G.mult_table
        for a, b, c, d in iproduct(range(n), repeat=4):
            lhs = self(b, c, d) * self(a, m[b][c], d) * self(a, b, c)
            if lhs != self(m[a][b], c, d) * self(a, b, m[c][d]):
                bad.append(("cocycle", (a, b, c, d)))
                break
        return bad

    def verify(self) -> Cocycle3:
        bad = self.failures()
        if bad:
            raise InvalidCocycle(f"cocycle check fails: {bad[0]}")
        return self

    def to_json(self) -> dict:
        n = self.group.order
        vals = [[a, b, c, self(a, b, c).to_json()] for a, b, c in iproduct(range(n), repeat=3)
                if self(a, b, c) != 1]
        return {"group": self.group.to_json(), "values": vals}

    @classmethod
    def from_json(cls, obj) -> Cocycle3:
        G = FiniteGroup.from_json(obj["group"])
        vals = [ONE] * G.order ** 3
        n = G.order
        for a, b, c, s in obj["values"]:
            vals[(a * n + b) * n + c] = parse_scalar(s)
        return cls(G, vals)


@dataclass
class Cochain2:
    group: FiniteGroup
    values: list = field(default_factory=list)  # flat, index a*n + b

    def __call__(self, a: int, b: int) -> CycNumber:
        return self.values[a * self.group.order + b]

    def __post_init__(self):
        G = self.group
        e = G.identity
        for a in range(G.order):
            if self(e, a) != 1 or self(a, e) != 1:
                raise ValueError("2-cochain must be normalized")

    @classmethod
    def random(cls, G: FiniteGroup, seed: int, root_order: int | None = None) -> Cochain2:
        rng = random.Random(seed)
        N = root_order or 2 * G.order
        e = G.identity
        vals = [ONE if e in (a, b) else root_of_unity(N, rng.randrange(N))
                for a, b in iproduct(range(G.order), repeat=2)]
        return cls(G, vals)


def coboundary(b: Cochain2) -> Cocycle3:
    """db(x,y,z) = b(y,z) b(x,yz) / (b(xy,z) b(x,y))."""
    G = b.group
    m = G.mult_table
    return Cocycle3.from_function(
        G, lambda x, y, z: b(y, z) * b(x, m[y][z]) / (b(m[x][y], z) * b(x, y)))


def cyclic_cocycle(N: int, t: int = 1) -> Cocycle3:
    """w(x^l, x^m, x^n) = exp(2 pi i t l (m + n - (m+n mod N)) / N^2)."""
    G = build_group("cyclic", N)
    return Cocycle3.from_function(
        G, lambda l, m, n: root_of_unity(N * N, (t * l * (m + n - (m + n) % N)) % (N * N)))


def z2_sign_cocycle(G: FiniteGroup | None = None) -> Cocycle3:
    """The cocycle on Z2 that is -1 at (u,u,u) and 1 elsewhere."""
    G = G or build_group("cyclic", 2)
    e = G.identity
    return Cocycle3.from_function(
        G, lambda a, b, c: -ONE if e not in (a, b, c) else ONE)


# ---------------------------------------------------------------------------
# algebras


def _finish(H: QuasiHopfAlgebra) -> QuasiHopfAlgebra:
    rep = validate(H)
    if not rep.ok:
        raise ValidationFailure(f"{H.name}: {rep}")
    return H


def group_algebra(G: FiniteGroup, check: bool = True) -> QuasiHopfAlgebra:
    n = G.order
    m = G.mult_table
    e = G.identity
    mult = [[((m[a][b], ONE),) for b in range(n)] for a in range(n)]
    H = QuasiHopfAlgebra(
        n, mult, [(e, ONE)], {a: {(a, a): ONE} for a in range(n)}, [ONE] * n,
        SparseTensor(3, n, {(e, e, e): ONE}), SparseTensor(1, n, {(e,): ONE}),
        SparseTensor(1, n, {(e,): ONE}), {a: {G.inverse[a]: ONE} for a in range(n)},
        basis_labels=G.labels, antipode_inverse={a: {G.inverse[a]: ONE} for a in range(n)},
        associator_inverse=SparseTensor(3, n, {(e, e, e): ONE}),
        name=f"C[{G.name}]", tag={"kind": "hopf", "group": G.name},
    )
    H.provenance = {"kind": "group", "group": G}
    return _finish(H) if check else H


def dual_group_algebra(G: FiniteGroup, omega: Cocycle3 | None = None,
                       check: bool = True) -> QuasiHopfAlgebra:
    """H(G, w) on the basis e(g) with phi = sum w(a,b,c) e(a)(x)e(b)(x)e(c)."""
    omega = omega or Cocycle3.trivial(G)
    n = G.order
    m = G.mult_table
    e = G.identity
    mult = [[((a, ONE),) if a == b else () for b in range(n)] for a in range(n)]
    comult = {g: {} for g in range(n)}
    for h in range(n):
        for k in range(n):
            comult[m[h][k]][(h, k)] = ONE
    trip = list(iproduct(range(n), repeat=3))
    phi = SparseTensor(3, n, {t: omega(*t) for t in trip})
    phinv = SparseTensor(3, n, {t: omega(*t).inverse() for t in trip})
    beta = SparseTensor(1, n, {(a,): omega(a, G.inverse[a], a).inverse() for a in range(n)})
    alpha = SparseTensor(1, n, {(a,): ONE for a in range(n)})
    anti = {a: {G.inverse[a]: ONE} for a in range(n)}
    H = QuasiHopfAlgebra(
        n, mult, [(a, ONE) for a in range(n)], comult, [ONE if a == e else CycNumber.rational(0)
                                                        for a in range(n)],
        phi, alpha, beta, anti, basis_labels=[f"e({x})" for x in G.labels],
        antipode_inverse=anti, associator_inverse=phinv,
        name=f"H({G.name})" if omega.is_trivial() else f"H({G.name},w)",
        tag={"kind": "dual", "group": G.name},
    )
    H.provenance = {"kind": "dual", "group": G, "cocycle": omega}
    return _finish(H) if check else H


def central_twist(H: QuasiHopfAlgebra, G: FiniteGroup, elements, omega: Cocycle3, j,
                  check: bool = True, name: str | None = None) -> QuasiHopfAlgebra:
    """
    H_(G,w,j): ``elements[g]`` is the image of g in H (central group-likes),
    ``j[y][x]`` is the value of the character j(y) at x.

    The idempotents e_x = (1/|G|) sum_y j(y)(x)^-1 y carry the new data
    phi = sum w(x,y,z)^-1 e_x(x)e_y(x)e_z, alpha = 1, beta = sum w(x,x^-1,x) e_x.
    """
    if not H.is_hopf():
        raise ValueError("central_twist needs an ordinary Hopf algebra")
    n = G.order
    els = [H.element(x) for x in elements]
    if len(els) != n:
        raise ValueError("need one element per group element")
    one = H.one()
    for y, g in enumerate(els):
        if H.delta(g) != g.tensor(g) or H.counit_value(g) != 1:
            raise NotGrouplike(f"{G.labels[y]} is not group-like")
        if not is_central(H, g):
            raise NotCentral(f"{G.labels[y]} is not central")
    if els[G.identity] != one:
        raise NotGrouplike("identity must map to 1")
    for a, b in iproduct(range(n), repeat=2):
        if H.mul(els[a], els[b]) != els[G.mult_table[a][b]]:
            raise NotGrouplike("elements do not multiply like the group")
    for a in range(n):
        for b in range(a):
            if els[a] == els[b]:
                raise NotGrouplike("elements are not distinct")
    jt = [[cyc(v) for v in row] for row in j]
    m = G.mult_table
    for y in range(n):
        for a, b in iproduct(range(n), repeat=2):
            if jt[y][m[a][b]] != jt[y][a] * jt[y][b]:
                raise BadCharacterTable(f"j({G.labels[y]}) is not a character")
    for y1, y2 in iproduct(range(n), repeat=2):
        if any(jt[m[y1][y2]][x] != jt[y1][x] * jt[y2][x] for x in range(n)):
            raise BadCharacterTable("j is not a homomorphism")
    if len({tuple(r) for r in jt}) != n:
        raise BadCharacterTable("j is not injective")

    inv_n = CycNumber.rational(mpq(1, n))
    idem = []
    for x in range(n):
        t = SparseTensor.zero(1, H.dim)
        for y in range(n):
            t = t + els[y].scale(jt[y][x].inverse() * inv_n)
        idem.append(t)
    phi = SparseTensor.zero(3, H.dim)
    phinv = SparseTensor.zero(3, H.dim)
    for x, y, z in iproduct(range(n), repeat=3):
        w = omega(x, y, z)
        if not w:
            continue
        t = idem[x].tensor(idem[y]).tensor(idem[z])
        phi = phi + t.scale(w.inverse())
        phinv = phinv + t.scale(w)
    beta = SparseTensor.zero(1, H.dim)
    for x in range(n):
        beta = beta + idem[x].scale(omega(x, G.inverse[x], x))
    out = QuasiHopfAlgebra(
        H.dim, H.mult_table, H.unit, [dict(r) for r in H.comult], H.counit, phi, one, beta,
        [dict(r) for r in H.antipode], basis_labels=H.basis_labels,
        antipode_inverse=[dict(r) for r in H.antipode_inverse], associator_inverse=phinv,
        name=name or f"{H.name}_(G,w,j)",
        tag={"kind": "central_twist", "base": H.name, "group": G.name}, _shared=H._shared,
    )
    out.provenance = {"kind": "central_twist", "base": H, "group": G, "elements": els,
                      "cocycle": omega, "j": jt, "idempotents": idem}
    return _finish(out) if check else out


def h_u(H: QuasiHopfAlgebra, u, check: bool = True) -> QuasiHopfAlgebra:
    """H_u: twist along a central group-like u of order 2 with the sign cocycle of Z2."""
    G = build_group("cyclic", 2)
    u = H.element(u)
    m1 = -ONE
    out = central_twist(H, G, [H.one(), u], z2_sign_cocycle(G), [[ONE, ONE], [ONE, m1]],
                        check=check, name=f"{H.name}_u")
    out.tag = {"kind": "h_u", "base": H.name}
    out.provenance["kind"] = "h_u"
    out.provenance["u"] = u
    return out


def cochain_gauge(Ht: QuasiHopfAlgebra, b: Cochain2) -> GaugeTransform:
    """F_b = sum b(x,y)^-1 e_x (x) e_y for a central twist Ht."""
    idem = Ht.provenance["idempotents"]
    n = len(idem)
    F = SparseTensor.zero(2, Ht.dim)
    Fi = SparseTensor.zero(2, Ht.dim)
    for x, y in iproduct(range(n), repeat=2):
        t = idem[x].tensor(idem[y])
        F = F + t.scale(b(x, y).inverse())
        Fi = Fi + t.scale(b(x, y))
    return GaugeTransform(F, Fi)


def _theta(G: FiniteGroup, w: Cocycle3, g, x, y):
    m, inv = G.mult_table, G.inverse
    xy = m[x][y]
    return w(g, x, y) * w(x, y, G.conj(g, xy)) / w(x, G.conj(g, x), y)


def _gamma(G: FiniteGroup, w: Cocycle3, g, x, y):
    return w(x, y, g) * w(g, G.conj(x, g), G.conj(y, g)) / w(x, g, G.conj(y, g))


def twisted_double(G: FiniteGroup, omega: Cocycle3 | None = None,
                   check: bool = True) -> QuasiHopfAlgebra:
    """D^w(G) on the basis e(g)(x)x, index g*|G| + x."""
    omega = omega or Cocycle3.trivial(G)
    n = G.order
    m, inv, e = G.mult_table, G.inverse, G.identity
    idx = lambda g, x: g * n + x  # noqa: E731
    d = n * n
    theta = {(g, x, y): _theta(G, omega, g, x, y) for g, x, y in iproduct(range(n), repeat=3)}
    gamma = {(g, x, y): _gamma(G, omega, g, x, y) for g, x, y in iproduct(range(n), repeat=3)}
    mult = {}
    for g, x, h, y in iproduct(range(n), repeat=4):
        if G.conj(g, x) == h:
            mult[(idx(g, x), idx(h, y))] = {idx(g, m[x][y]): theta[(g, x, y)]}
    comult = {i: {} for i in range(d)}
    for g, x in iproduct(range(n), repeat=2):
        for h in range(n):
            k = m[inv[h]][g]
            comult[idx(g, x)][(idx(h, x), idx(k, x))] = gamma[(x, h, k)]
    counit = [ONE if i // n == e else CycNumber.rational(0) for i in range(d)]
    trip = list(iproduct(range(n), repeat=3))
    phi = SparseTensor(3, d, {(idx(a, e), idx(b, e), idx(c, e)): omega(a, b, c).inverse()
                              for a, b, c in trip})
    phinv = SparseTensor(3, d, {(idx(a, e), idx(b, e), idx(c, e)): omega(a, b, c)
                                for a, b, c in trip})
    alpha = SparseTensor(1, d, {(idx(g, e),): ONE for g in range(n)})
    beta = SparseTensor(1, d, {(idx(g, e),): omega(g, inv[g], g) for g in range(n)})
    anti = {}
    for g, x in iproduct(range(n), repeat=2):
        c = (theta[(inv[g], x, inv[x])] * gamma[(x, g, inv[g])]).inverse()
        anti[idx(g, x)] = {idx(G.conj(inv[g], x), inv[x]): c}
    H = QuasiHopfAlgebra(
        d, mult, [(idx(g, e), ONE) for g in range(n)], comult, counit, phi, alpha, beta, anti,
        basis_labels=[f"e({G.labels[g]}){G.labels[x]}" for g, x in iproduct(range(n), repeat=2)],
        associator_inverse=phinv,
        name=f"D({G.name})" if omega.is_trivial() else f"D^w({G.name})",
        tag={"kind": "double", "group": G.name},
    )
    H.provenance = {"kind": "double", "group": G, "cocycle": omega, "theta": theta, "gamma": gamma}
    return _finish(H) if check else H


def kac_algebra(check: bool = True) -> QuasiHopfAlgebra:
    return _kac(_KAC_J, check)


def _kac(J, check: bool = True) -> QuasiHopfAlgebra:
    """
    The 8-dimensional Kac algebra on {1, x, y, xy, z, xz, yz, xyz}.

    Group part g in {1, x, y, xy} is encoded as a bitmask (x = 1, y = 2), the
    element g z has index 4 + g.  Relations: z g = swap(g) z,
    z^2 = (1 + x + y - xy)/2, Delta(z) = (1(x)1 + x(x)1 + 1(x)y - x(x)y)(z(x)z)/2.
    """
    swap = [0, 2, 1, 3]
    z2 = {0: HALF, 1: HALF, 2: HALF, 3: -HALF}
    mult = {}
    for a in range(8):
        for b in range(8):
            ga, gb = a & 3, b & 3
            if a < 4 and b < 4:
                mult[(a, b)] = {ga ^ gb: ONE}
            elif a < 4:
                mult[(a, b)] = {4 + (ga ^ gb): ONE}
            elif b < 4:
                mult[(a, b)] = {4 + (ga ^ swap[gb]): ONE}
            else:
                base = ga ^ swap[gb]
                mult[(a, b)] = {base ^ h: c for h, c in z2.items()}
    # Delta(z) = J (z(x)z); J lists (g1, g2, c) for c g1(x)g2
    dz = {(4 + a, 4 + b): c for a, b, c in J}
    comult = {}
    for g in range(4):
        comult[g] = {(g, g): ONE}
        comult[4 + g] = {(4 + (g ^ (i & 3)), 4 + (g ^ (j & 3))): c for (i, j), c in dz.items()}
    anti = {g: {g: ONE} for g in range(4)}
    anti.update({4 + g: {4 + swap[g]: ONE} for g in range(4)})
    labels = ["1", "x", "y", "xy", "z", "xz", "yz", "xyz"]
    H = QuasiHopfAlgebra(
        8, mult, [(0, ONE)], comult, [ONE] * 8, SparseTensor(3, 8, {(0, 0, 0): ONE}),
        SparseTensor(1, 8, {(0,): ONE}), SparseTensor(1, 8, {(0,): ONE}), anti,
        basis_labels=labels, associator_inverse=SparseTensor(3, 8, {(0, 0, 0): ONE}),
        name="K", tag={"kind": "hopf", "group": None},
    )
    H.provenance = {"kind": "kac"}
    return _finish(H) if check else H


# J = (1(x)1 + x(x)1 + 1(x)y - x(x)y)/2; with -y(x)x as last term J is not counital
_KAC_J = ((0, 0, HALF), (1, 0, HALF), (0, 2, HALF), (1, 2, -HALF))
# the other counital reading, (1(x)1 + 1(x)x + y(x)1 - y(x)x)/2, also gives a Hopf algebra
KAC_J_ALTERNATIVE = ((0, 0, HALF), (0, 1, HALF), (2, 0, HALF), (2, 1, -HALF))

# ---------------------------------------------------------------------------
# named built-ins


def builtin(name: str) -> QuasiHopfAlgebra:
    """'K', 'K_u', 'C[D8]', 'C[Q8]_u', 'C[Z2]', 'H(Z2,w)', 'D^w(Z2)', ..."""
    from .algebra import find_central_grouplikes
    if name.endswith("_u"):
        base = builtin(name[:-2])
        us = find_central_grouplikes(base, 2)
        if len(us) != 1:
            raise ValueError(f"{base.name} has {len(us)} central group-likes of order 2")
        return h_u(base, us[0])
    if name == "K":
        return kac_algebra()
    if name.startswith("C[") and name.endswith("]"):
        return group_algebra(build_group(name[2:-1]))
    if name.startswith("H(") and name.endswith(")"):
        inner = name[2:-1]
        if inner.endswith(",w"):
            G = build_group(inner[:-2])
            return dual_group_algebra(G, cyclic_cocycle(G.order, 1))
        return dual_group_algebra(build_group(inner))
    if name.startswith("D^w(") or name.startswith("D("):
        G = build_group(name[name.index("(") + 1:-1])
        w = cyclic_cocycle(G.order, 1) if name.startswith("D^w") else None
        return twisted_double(G, w)
    raise ValueError(f"unknown built-in {name!r}")


BUILTIN_NAMES = ("C[Z2]", "C[Z3]", "C[D8]", "C[Q8]", "K",
                 "C[Z2]_u", "C[D8]_u", "C[Q8]_u", "K_u",
                 "H(Z2)", "H(Z2,w)", "H(Z3,w)", "D(Z2)", "D^w(Z2)")
