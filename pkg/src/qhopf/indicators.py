"""
Higher Frobenius-Schur indicators.

mu_n(H) = m((q_X1 (x) Delta^(n-1)(q_X2)) Delta^(n)(Lambda) phi_n (Delta^(n-1)(p_Y1) (x) p_Y2))
is central and gauge invariant, and nu_n(V) = chi(mu_n(H)).  Two engines
compute it:

* ``tensor``: the literal product in H^{(x)n}, then the n-fold multiplication.
* ``rep``: every factor is pushed through rho^{(x)n} for each simple module
  rho; the product is taken in End(V^{(x)n}) and the n-fold multiplication
  becomes a chain contraction of matrix indices.  The result must act by a
  scalar lambda_i on each simple, and mu_n = sum lambda_i e_i.

Closed forms for H(G, w), D^w(G) and H_u live at the end of the module.
"""

from __future__ import annotations

import json
import string
from dataclasses import dataclass, field

import numpy as np

from .algebra import hausser_nill_elements, is_central, normalized_integral
from .constructions import NotCentral
from .cycarray import CycArray, kron, tensordot
from .reptheory import (
    CharacterVector,
    Representation,
    central_idempotents,
    coproduct_power_stacks,
    simple_characters,
    simple_representations,
)
from .scalars import ONE, ZERO, CycNumber, galois_fixed_in_subfield
from .tensor import (
    BudgetExceeded,
    SparseTensor,
    apply_coproduct_leg,
    counit_leg,
    multiply_all_legs,
    unit_tensor,
)

VARIANTS = ("RL", "RR", "LL", "LR", "simplified")


class BetaAlphaSingular(ArithmeticError):
    pass


class NotScalarAction(ValueError):
    pass


# ---------------------------------------------------------------------------
# iterated coproducts and associators


def delta_n(H, a: SparseTensor, n: int) -> SparseTensor:
    """Delta^(n)(a), right nested; n = 0 gives the 0-leg tensor eps(a)."""
    if a.legs != 1:
        raise ValueError("delta_n takes a 1-leg element")
    return delta_n_leg(H, a, 0, n)


def delta_n_leg(H, t: SparseTensor, leg: int, n: int) -> SparseTensor:
    """Replace leg ``leg`` of t by Delta^(n) of it."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return counit_leg(H, t, leg)
    for k in range(n - 1):
        t = apply_coproduct_leg(H, t, leg + k)
    return t


def phi_n(H, n: int) -> SparseTensor:
    """phi_1 = 1, phi_2 = 1(x)1, phi_{k+1} = (1 (x) phi_k)(phi1 (x) Delta^(k-1)(phi2) (x) phi3)."""
    if n < 1:
        raise ValueError("n must be positive")
    cache = H.__dict__.setdefault("_phi_n", {})
    if n in cache:
        return cache[n]
    if n <= 2:
        out = unit_tensor(H, n)
    else:
        prev = phi_n(H, n - 1)
        left = unit_tensor(H, 1).tensor(prev)
        right = delta_n_leg(H, H.associator, 1, n - 2)
        out = H.mul(left, right)
    cache[n] = out
    return out


def _sweedler_images(H, n: int) -> list:
    """P_n(b_j) for every basis element, via P_n(b) = sum b1 P_{n-1}(b2)."""
    cache = H.__dict__.setdefault("_sweedler", {})
    if n in cache:
        return cache[n]
    if n == 1:
        out = [H.basis_element(j) for j in range(H.dim)]
    else:
        prev = _sweedler_images(H, n - 1)
        out = []
        for j in range(H.dim):
            acc = {}
            for (a, b), c in H.comult[j]:
                for (k,), v in prev[b].items():
                    for r, w in H.mult_table[a][k]:
                        acc[r] = acc.get(r, ZERO) + c * v * w
            out.append(SparseTensor(1, H.dim, {(r,): v for r, v in acc.items()}))
    cache[n] = out
    return out


def sweedler_power(H, a: SparseTensor, n: int) -> SparseTensor:
    """a^[n] = m(Delta^(n)(a))."""
    if n < 1:
        raise ValueError("n must be positive")
    imgs = _sweedler_images(H, n)
    out = SparseTensor.zero(1, H.dim)
    for (j,), c in a.items():
        out = out + imgs[j].scale(c)
    return out


# ---------------------------------------------------------------------------
# mu_n, literal tensor engine


def _qp(H, variant: str):
    hn = hausser_nill_elements(H, check=False)
    q = hn.q_R if variant[0] == "R" else hn.q_L
    p = hn.p_L if variant[1] == "L" else hn.p_R
    return q, p


def _beta_alpha_inverse(H) -> SparseTensor:
    ba = H.mul(H.beta, H.alpha)
    inv = H.inverse_element(ba)
    if inv is None:
        raise BetaAlphaSingular("beta alpha is not invertible")
    return inv


def _mu_tensor(H, n: int, variant: str) -> SparseTensor:
    Lam = normalized_integral(H)
    D = delta_n(H, Lam, n)
    P = phi_n(H, n)
    if variant == "simplified":
        m = multiply_all_legs(H, H.mul(D, P))
        return H.mul(m, _beta_alpha_inverse(H))
    q, p = _qp(H, variant)
    A = delta_n_leg(H, q, 1, n - 1)
    B = delta_n_leg(H, p, 0, n - 1)
    X = H.mul(H.mul(H.mul(A, D), P), B)
    return multiply_all_legs(H, X)


# ---------------------------------------------------------------------------
# mu_n, representation engine


def _chain(X: CycArray, m: int, n: int) -> CycArray:
    """sum c rho(k1)...rho(kn) from the m^n x m^n matrix of sum c rho(k1)(x)...(x)rho(kn)."""
    if n == 1:
        return X
    letters = string.ascii_letters
    a = letters[:n]
    b = letters[1:n] + letters[n]
    num = X.num.reshape((X.num.shape[0],) + (m,) * (2 * n))
    sub = "Z" + a + b + "->Z" + a[0] + b[-1]
    out = np.einsum(sub, num)
    return CycArray(out, X.den, X.N).normalize()


class _RepContext:
    """Stacked images rho^{(x)k}(Delta^(k)(b_j)) for one simple module."""

    def __init__(self, H, rho: Representation, n: int):
        self.H, self.rho, self.n = H, rho, n
        self.S = coproduct_power_stacks(H, rho, n)
        self.m = rho.dim_v
        self._eps = CycArray.from_scalars([[[c]] for c in H.counit])

    def stack(self, k: int) -> CycArray:
        """(dim H, m^k, m^k) images of Delta^(k); k = 0 gives eps as 1 x 1 blocks."""
        return self._eps if k == 0 else self.S[k - 1]

    def image(self, t: SparseTensor, splits) -> CycArray:
        """Image of a tensor whose leg i carries Delta^(splits[i])."""
        X = t.to_dense()
        sizes = []
        for k in splits:
            F = self.stack(k)
            X = tensordot(X, F, ([0], [0]))
            sizes.append(F.shape[1])
        legs = len(splits)
        perm = [2 * i for i in range(legs)] + [2 * i + 1 for i in range(legs)]
        size = 1
        for z in sizes:
            size *= z
        return X.transpose(*perm).reshape(size, size)

    def phi(self, n: int) -> CycArray:
        m = self.m
        if n <= 2:
            return CycArray.identity(m ** n)
        prev = self.phi(n - 1)
        right = self.image(self.H.associator, (1, n - 2, 1))
        return kron(CycArray.identity(m), prev) @ right


def _rep_contexts(H, n: int) -> list:
    return [_RepContext(H, rho, n) for rho in simple_representations(H)]


def _mu_rep(H, n: int, variant: str) -> SparseTensor:
    Lam = normalized_integral(H)
    idem = central_idempotents(H)
    ba_inv = None
    if variant == "simplified":
        ba_inv = _beta_alpha_inverse(H)
    out = SparseTensor.zero(1, H.dim)
    for ctx, e in zip(_rep_contexts(H, n), idem):
        m = ctx.m
        D = ctx.image(Lam, (n,))
        P = ctx.phi(n)
        if variant == "simplified":
            Y = _chain(D @ P, m, n) @ ctx.rho.of(ba_inv)
        else:
            q, p = _qp(H, variant)
            A = ctx.image(q, (1, n - 1))
            B = ctx.image(p, (n - 1, 1))
            Y = _chain(A @ D @ P @ B, m, n)
        lam = Y.entry((0, 0))
        if Y != CycArray.identity(m).scale(lam):
            raise NotCentral(f"mu_{n} does not act by a scalar on a simple module of {H.name}")
        out = out + e.scale(lam)
    return out


# ---------------------------------------------------------------------------
# public entry points


def mu_n(H, n: int, variant: str = "RL", engine: str = "auto") -> SparseTensor:
    """The central element mu_n(H); ``engine`` is "rep", "tensor" or "auto"."""
    if n < 1:
        raise ValueError("n must be positive")
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    key = (n, variant, engine)
    cache = H.__dict__.setdefault("_mu", {})
    if key in cache:
        return cache[key]
    if engine == "auto":
        engine = "rep" if H.dim > 4 or n > 4 else "tensor"
    if engine == "rep":
        out = _mu_rep(H, n, variant)
    elif engine == "tensor":
        out = _mu_tensor(H, n, variant)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    if not is_central(H, out):
        raise NotCentral(f"mu_{n}({H.name}) is not central")
    cache[key] = out
    return out


def nu_n(H, chi: CharacterVector, n: int, variant: str = "RL", engine: str = "auto") -> CycNumber:
    return chi(mu_n(H, n, variant, engine)).reduced()


def hopf_indicator(H, chi: CharacterVector, n: int) -> CycNumber:
    """chi(Lambda^[n]) for an ordinary Hopf algebra."""
    return chi(sweedler_power(H, normalized_integral(H), n)).reduced()


def nu_n_central_twist(H, u: SparseTensor, chi: CharacterVector, n: int) -> CycNumber:
    """nu_n of V as a module over H_u: chi(Lambda^[n]) chi(u^{(n-3)n/2}) / chi(1)."""
    dim = chi(H.one())
    cu = chi(u)
    if cu != dim and cu != -dim:
        raise NotScalarAction("u does not act by a scalar on this module")
    k = ((n - 3) * n // 2) % 2
    factor = ONE if k == 0 else cu / dim
    return (hopf_indicator(H, chi, n) * factor).reduced()


def nu_n_dual_group(G, omega, x: int, n: int) -> CycNumber:
    """nu_n(V_x) over H(G, w): [x^n = 1] prod_{r=1}^{n-1} w(x, x^r, x)."""
    if G.power(x, n) != G.identity:
        return CycNumber.rational(0)
    out = ONE
    for r in range(1, n):
        out = out * omega(x, G.power(x, r), x)
    return out.reduced()


def nu_n_twisted_double(G, omega, chi: CharacterVector, n: int, form: str = "primary") -> CycNumber:
    """
    Closed-form nu_n for a module of D^w(G) with character ``chi`` (basis
    index g*|G| + x for e(g)(x)x).  ``form`` selects between the formula
    obtained from Delta^(n)(Lambda) phi_n ("primary") and the one obtained
    from phi_n (Delta^(n-1)(x)id)Delta(Lambda) ("alternative").
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if form not in ("primary", "alternative"):
        raise ValueError("form must be 'primary' or 'alternative'")
    from .constructions import _gamma, _theta
    o = G.order
    inv = G.inverse
    w = omega
    th = lambda g, a, b: _theta(G, w, g, a, b)  # noqa: E731
    ga = lambda g, a, b: _gamma(G, w, g, a, b)  # noqa: E731
    total = ZERO
    for x in range(o):
        xn = G.power(x, n)
        lhs = G.power(x, -n)
        for a in range(o):
            if G.power(G.mul(a, inv[x]), n) != lhs:
                continue
            val = chi.values[a * o + xn]
            if not val:
                continue
            conj = [G.conj(a, G.power(x, i)) for i in range(n + 1)]  # a^{x^i}

            def tail(i, j):  # a^{x^i} a^{x^{i+1}} ... a^{x^j}
                return G.mul(*conj[i:j + 1])

            c = ONE
            for i in range(1, n - 1):
                xi = G.power(x, i)
                if form == "primary":
                    c = c * ga(x, conj[i], tail(i + 1, n - 1)) * th(a, xi, x) / w(
                        conj[i], tail(i + 1, n - 1), conj[n])
                else:
                    c = c * ga(x, conj[i - 1], tail(i, n - 2)) * th(a, xi, x) / w(
                        conj[i - 1], tail(i, n - 2), conj[n - 1])
            xn1 = G.power(x, n - 1)
            if form == "primary":
                c = c * ga(x, a, inv[a])
            else:
                c = c * ga(x, inv[conj[n - 1]], conj[n - 1])
            c = c * th(a, xn1, x) / w(a, inv[a], a)
            total = total + c * val
    return (total / CycNumber.rational(o)).reduced()


# ---------------------------------------------------------------------------
# indicator tables


@dataclass
class IndicatorTable:
    algebra_name: str
    dims: list
    characters: list
    n_min: int
    n_max: int
    values: list                      # values[row][n - n_min], None marks a hole
    provenance: list = field(default_factory=list)   # same shape: "generic", "closed-form", ...
    holes: list = field(default_factory=list)        # (row, n, reason)

    def column(self, n: int) -> list:
        return [r[n - self.n_min] for r in self.values]

    def row(self, i: int) -> list:
        return list(self.values[i])

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra_name,
            "n_min": self.n_min,
            "n_max": self.n_max,
            "rows": [
                {"dim": d, "character": ch.to_json(),
                 "values": [None if v is None else v.to_json() for v in vals],
                 "provenance": prov}
                for d, ch, vals, prov in zip(self.dims, self.characters, self.values, self.provenance)
            ],
            "holes": [{"row": r, "n": n, "reason": why} for r, n, why in self.holes],
        }

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def to_markdown(self, label=None) -> str:
        ns = list(range(self.n_min, self.n_max + 1))
        head = "| simple | dim | " + " | ".join(f"nu_{n}" for n in ns) + " |"
        sep = "|" + "---|" * (len(ns) + 2)
        lines = [head, sep]
        for i, (d, vals) in enumerate(zip(self.dims, self.values)):
            name = label(i) if label else f"V{i}"
            cells = ["?" if v is None else str(v) for v in vals]
            lines.append(f"| {name} | {d} | " + " | ".join(cells) + " |")
        return "\n".join(lines)


def _closed_form(H, chi, n):
    """Closed-form value when the construction allows one, else None."""
    prov = H.provenance if hasattr(H, "provenance") else {}
    kind = prov.get("kind")
    if H.tag.get("gauge"):
        return None
    if kind == "h_u":
        return nu_n_central_twist(prov["base"], prov["u"], chi, n)
    if kind in ("group", "kac"):
        return hopf_indicator(H, chi, n)
    if kind == "dual":
        G = prov["group"]
        # V_x is the character that picks out e(x)
        xs = [i for i, v in enumerate(chi.values) if v]
        if len(xs) == 1:
            return nu_n_dual_group(G, prov["cocycle"], xs[0], n)
        return None
    if kind == "double" and n >= 2:
        return nu_n_twisted_double(prov["group"], prov["cocycle"], chi, n, "primary")
    return None


def indicator_table(H, n_max: int, characters=None, n_min: int = 1, cross_check: bool = True,
                    engine: str = "auto") -> IndicatorTable:
    """
    nu_n for every simple (or every character in ``characters``), n_min..n_max.

    Closed forms are used when available; the generic engine runs whenever it
    fits the budget and must agree with the closed form.  A cell where
    neither route succeeds is a hole.
    """
    if characters is None:
        rows = simple_characters(H)
        chars = [c for c, _ in rows]
        dims = [d for _, d in rows]
    else:
        chars = list(characters)
        dims = [c.dim for c in chars]
    values, provs, holes = [], [], []
    for i, chi in enumerate(chars):
        vrow, prow = [], []
        for n in range(n_min, n_max + 1):
            closed = generic = None
            why = None
            try:
                closed = _closed_form(H, chi, n)
            except Exception as exc:  # closed form unavailable for this cell
                why = f"closed form: {exc}"
            if closed is None or cross_check:
                try:
                    generic = nu_n(H, chi, n, engine=engine)
                except BudgetExceeded as exc:
                    why = f"budget: {exc}"
            if closed is not None and generic is not None:
                if closed != generic:
                    raise ArithmeticError(
                        f"{H.name}: closed form {closed} != generic {generic} at row {i}, n={n}")
                vrow.append(generic)
                prow.append("closed-form+generic")
            elif generic is not None:
                vrow.append(generic)
                prow.append("generic")
            elif closed is not None:
                vrow.append(closed)
                prow.append("closed-form only")
            else:
                vrow.append(None)
                prow.append("hole")
                holes.append((i, n, why or "no route"))
        values.append(vrow)
        provs.append(prow)
    table = IndicatorTable(H.name, dims, chars, n_min, n_max, values, provs, holes)
    for vrow in values:
        for n, v in zip(range(n_min, n_max + 1), vrow):
            if v is not None and not galois_fixed_in_subfield(v, n):
                raise ArithmeticError(f"indicator {v} at n={n} is not in Q(zeta_{n})")
    return table


def is_indicator_cyclotomic(v: CycNumber, n: int) -> bool:
    return galois_fixed_in_subfield(v, n)


__all__ = [
    "BetaAlphaSingular", "NotScalarAction", "NotCentral", "VARIANTS", "IndicatorTable",
    "delta_n", "delta_n_leg", "phi_n", "sweedler_power", "mu_n", "nu_n", "hopf_indicator",
    "nu_n_central_twist", "nu_n_dual_group", "nu_n_twisted_double", "indicator_table",
]
