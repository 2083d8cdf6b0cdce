"""
Exact arithmetic in cyclotomic fields Q(zeta_N).

A :class:`CycNumber` stores its conductor ``N`` and the coefficients of the
residue of a polynomial in ``zeta_N`` modulo the N-th cyclotomic polynomial,
so equality at a fixed conductor is plain coefficient comparison.
Rational coefficients are ``gmpy2.mpq``.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq
from sympy import Poly, Symbol, cyclotomic_poly, totient

Rational = type(mpq(0))

CONDUCTOR_LIMIT = 10**6
RATIONALIZE_DENOMINATOR = 2**16


class ConductorOverflow(ArithmeticError):
    pass


def to_rational(x) -> Rational:
    if isinstance(x, Rational):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(x)
    if isinstance(x, float):
        raise TypeError("floats are not exact; use a Fraction or string")
    return mpq(x)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return int(totient(n))


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    x = Symbol("x")
    coeffs = Poly(cyclotomic_poly(n, x), x).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row e holds zeta_n**e reduced mod Phi_n, for 0 <= e < max(n, 2*phi(n))."""
    deg = euler_phi(n)
    phi_poly = _cyclotomic(n)
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(max(n, 2 * deg)):
        rows.append(tuple(cur))
        # multiply by zeta: shift, then eliminate the degree-deg term
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for k in range(deg):
                cur[k] -= top * phi_poly[k]
    return tuple(rows)


def _reduce(poly: list, n: int) -> tuple:
    """Reduce a coefficient list of any length (powers of zeta_n) to canonical form."""
    deg = euler_phi(n)
    out = list(poly[:deg]) + [mpq(0)] * max(0, deg - len(poly))
    if len(poly) > deg:
        table = _power_table(n)
        for e in range(deg, len(poly)):
            c = poly[e]
            if c:
                row = table[e % n] if e >= len(table) else table[e]
                for k, r in enumerate(row):
                    if r:
                        out[k] += c * r
    return tuple(out)


def _lift_coeffs(coeffs: tuple, n: int, m: int) -> tuple:
    if n == m:
        return coeffs
    step = m // n
    poly = [mpq(0)] * m
    for k, c in enumerate(coeffs):
        if c:
            poly[(k * step) % m] += c
    return _reduce(poly, m)


def _common(n: int, m: int) -> int:
    if n == m:
        return n
    l = n * m // math.gcd(n, m)
    if l > CONDUCTOR_LIMIT:
        raise ConductorOverflow(f"lcm({n}, {m}) = {l} exceeds {CONDUCTOR_LIMIT}")
    return l


class CycNumber:
    """An element of Q(zeta_N)."""

    __slots__ = ("N", "c", "_red")

    def __init__(self, coeffs, N: int = 1):
        N = int(N)
        if N < 1:
            raise ValueError("conductor must be positive")
        coeffs = [to_rational(x) for x in coeffs]
        self.N = N
        self.c = _reduce(coeffs, N) if len(coeffs) != euler_phi(N) else tuple(coeffs)
        self._red = None

    @classmethod
    def _raw(cls, coeffs: tuple, N: int) -> CycNumber:
        obj = cls.__new__(cls)
        obj.N = N
        obj.c = coeffs
        obj._red = None
        return obj

    @classmethod
    def rational(cls, x) -> CycNumber:
        return cls._raw((to_rational(x),), 1)

    @classmethod
    def coerce(cls, x) -> CycNumber:
        if isinstance(x, CycNumber):
            return x
        return cls._raw((to_rational(x),), 1)

    # -- structure ---------------------------------------------------------

    def lift(self, M: int) -> CycNumber:
        if M == self.N:
            return self
        if M % self.N:
            raise ValueError(f"cannot lift conductor {self.N} to {M}")
        return CycNumber._raw(_lift_coeffs(self.c, self.N, M), M)

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_rational(self) -> bool:
        return self.reduced().N == 1

    def rational_value(self) -> Rational:
        r = self.reduced()
        if r.N != 1:
            raise ValueError(f"{self} is not rational")
        return r.c[0]

    def reduced(self) -> CycNumber:
        """Same number at the smallest conductor that contains it."""
        if self._red is not None:
            return self._red
        N = self.N
        if N == 1 or (N <= 2 and not any(self.c[1:])):
            red = self if N == 1 else CycNumber._raw((self.c[0],), 1)
        elif not any(self.c[1:]):
            red = CycNumber._raw((self.c[0],), 1)
        else:
            red = self
            for M in sorted(d for d in range(1, N) if N % d == 0):
                if euler_phi(M) >= euler_phi(N):
                    continue
                if galois_fixed_in_subfield(self, M):
                    red = _descend(self, M)
                    break
        self._red = red
        return red

    # -- arithmetic --------------------------------------------------------

    def _pair(self, other):
        if not isinstance(other, CycNumber):
            other = CycNumber.coerce(other)
        if self.N == other.N:
            return self.c, other.c, self.N
        N = _common(self.N, other.N)
        return _lift_coeffs(self.c, self.N, N), _lift_coeffs(other.c, other.N, N), N

    def __add__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return CycNumber._raw((self.c[0] + other,) + self.c[1:], self.N)
        try:
            a, b, N = self._pair(other)
        except TypeError:
            return NotImplemented
        return CycNumber._raw(tuple(x + y for x, y in zip(a, b)), N)

    __radd__ = __add__

    def __neg__(self):
        return CycNumber._raw(tuple(-x for x in self.c), self.N)

    def __sub__(self, other):
        try:
            a, b, N = self._pair(other)
        except TypeError:
            return NotImplemented
        return CycNumber._raw(tuple(x - y for x, y in zip(a, b)), N)

    def __rsub__(self, other):
        return CycNumber.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return CycNumber._raw(tuple(x * other for x in self.c), self.N)
        try:
            a, b, N = self._pair(other)
        except TypeError:
            return NotImplemented
        if N == 1:
            return CycNumber._raw((a[0] * b[0],), 1)
        deg = len(a)
        poly = [mpq(0)] * (2 * deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        poly[i + j] += x * y
        return CycNumber._raw(_reduce(poly, N), N)

    __rmul__ = __mul__

    def inverse(self) -> CycNumber:
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(zeta_%d)" % self.N)
        if self.N <= 2:
            return CycNumber._raw((1 / self.c[0],) + self.c[1:], self.N)
        # invert via the norm: x * prod_{sigma != id} sigma(x) is rational
        N = self.N
        prod = CycNumber._raw(_reduce([mpq(1)], N), N)
        for j in range(2, N):
            if math.gcd(j, N) == 1:
                prod = prod * self.galois(j)
        norm = (self * prod).c[0]
        return prod * (1 / norm)

    def __truediv__(self, other):
        if not isinstance(other, CycNumber):
            other = to_rational(other)
            if not other:
                raise ZeroDivisionError("division by zero")
            return CycNumber._raw(tuple(x / other for x in self.c), self.N)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CycNumber.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNumber._raw(_reduce([mpq(1)], self.N), self.N)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def galois(self, j: int) -> CycNumber:
        """Image under zeta_N -> zeta_N**j (gcd(j, N) = 1)."""
        N = self.N
        poly = [mpq(0)] * N
        for k, x in enumerate(self.c):
            if x:
                poly[(k * j) % N] += x
        return CycNumber._raw(_reduce(poly, N), N)

    def conjugate(self) -> CycNumber:
        return self.galois(-1 % self.N) if self.N > 2 else self

    # -- comparison & display ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, CycNumber):
            if self.N == other.N:
                return self.c == other.c
        elif isinstance(other, (int, Rational, Fraction)) and not isinstance(other, bool):
            return self.c[0] == other and not any(self.c[1:])
        else:
            return NotImplemented
        a, b, _ = self._pair(other)
        return a == b

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        r = self.reduced()
        return hash((r.N, r.c))

    def __bool__(self):
        return not self.is_zero()

    def sort_key(self):
        r = self.reduced()
        return (r.N, tuple(r.c))

    def __repr__(self):
        return f"CycNumber({self})"

    def __str__(self):
        r = self.reduced()
        if r.N == 1:
            return str(r.c[0])
        terms = []
        for k, x in enumerate(r.c):
            if not x:
                continue
            mono = "" if k == 0 else (f"z{r.N}" if k == 1 else f"z{r.N}^{k}")
            if not mono:
                terms.append(str(x))
            elif x == 1:
                terms.append(mono)
            elif x == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{x}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {"conductor": self.N,
                "coeffs": [f"{x.numerator}/{x.denominator}" for x in self.c]}

    @classmethod
    def from_json(cls, obj) -> CycNumber:
        if isinstance(obj, (int, str)):
            return cls.rational(obj)
        N = int(obj["conductor"])
        coeffs = tuple(mpq(s) for s in obj["coeffs"])
        if len(coeffs) != euler_phi(N):
            raise ValueError(f"conductor {N} needs {euler_phi(N)} coefficients")
        return cls._raw(coeffs, N)


ZERO = CycNumber._raw((mpq(0),), 1)
ONE = CycNumber._raw((mpq(1),), 1)


def cyc(x) -> CycNumber:
    return CycNumber.coerce(x)


def cyc_arith(a, b, op: str) -> CycNumber:
    a, b = cyc(a), cyc(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def root_of_unity(N: int, k: int = 1) -> CycNumber:
    """zeta_N**k."""
    if N < 1:
        raise ValueError("N must be positive")
    k %= N
    if N <= 2:
        return CycNumber._raw((mpq(-1 if (N == 2 and k) else 1),), 1)
    return CycNumber._raw(tuple(mpq(x) for x in _power_table(N)[k]), N)


def galois_fixed_in_subfield(x: CycNumber, n: int) -> bool:
    """True iff ``x`` lies in Q(zeta_n)."""
    x = cyc(x)
    L = x.N
    g = math.gcd(n, L)
    for j in range(1, L):
        if math.gcd(j, L) == 1 and (j - 1) % g == 0 and j != 1:
            if x.galois(j).c != x.c:
                return False
    return True


@lru_cache(maxsize=None)
def _descent_matrix(N: int, M: int):
    """Rows: zeta_M**k (k < phi(M)) written in the power basis of Q(zeta_N)."""
    step = N // M
    rows = []
    for k in range(euler_phi(M)):
        poly = [mpq(0)] * N
        poly[(k * step) % N] = mpq(1)
        rows.append(_reduce(poly, N))
    return rows


def _descend(x: CycNumber, M: int) -> CycNumber:
    rows = _descent_matrix(x.N, M)
    # solve sum_k y_k rows[k] = x.c  (overdetermined, consistent)
    dm, dn = len(rows), len(x.c)
    aug = [[rows[k][i] for k in range(dm)] + [x.c[i]] for i in range(dn)]
    piv_cols = []
    r = 0
    for col in range(dm):
        p = next((i for i in range(r, dn) if aug[i][col]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(dn):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        piv_cols.append(col)
        r += 1
    y = [mpq(0)] * dm
    for i, col in enumerate(piv_cols):
        y[col] = aug[i][-1]
    return CycNumber._raw(tuple(y), M)


def to_complex(x) -> complex:
    x = cyc(x)
    if x.N == 1:
        return complex(float(x.c[0]))
    z = cmath.exp(2j * math.pi / x.N)
    return complex(sum(float(c) * z**k for k, c in enumerate(x.c) if c))


def rationalize(z: complex, N: int, tol: float = 1e-7) -> CycNumber | None:
    """
    Recover an element of Q(zeta_N) from its complex value.

    Only fields of degree <= 2 over Q are recoverable from a single embedding;
    returns None when the value cannot be matched within ``tol``.
    """
    deg = euler_phi(N)
    if deg == 1:
        if abs(z.imag) > tol:
            return None
        coeffs = [z.real]
    elif deg == 2:
        w = cmath.exp(2j * math.pi / N)
        b = z.imag / w.imag
        coeffs = [z.real - b * w.real, b]
    else:
        raise ValueError(f"cannot rationalize into Q(zeta_{N}) of degree {deg}")
    out = []
    for c in coeffs:
        f = Fraction(c).limit_denominator(RATIONALIZE_DENOMINATOR)
        if abs(float(f) - c) > tol:
            return None
        out.append(mpq(f.numerator, f.denominator))
    val = CycNumber._raw(tuple(out), N if deg == 2 else 1)
    if abs(to_complex(val) - z) > tol * max(1.0, abs(z)):
        return None
    return val


def parse_scalar(s) -> CycNumber:
    """Parse ints, 'p/q' strings, or JSON CycNumber dicts."""
    if isinstance(s, CycNumber):
        return s
    if isinstance(s, dict):
        return CycNumber.from_json(s)
    return CycNumber.rational(s)


def is_root_of_unity(x: CycNumber) -> bool:
    x = cyc(x).reduced()
    if x.is_zero():
        return False
    # roots of unity in Q(zeta_N) have order dividing lcm(2, N)
    order = x.N * (2 if x.N % 2 else 1)
    return x ** order == ONE


__all__ = [
    "CONDUCTOR_LIMIT",
    "ConductorOverflow",
    "CycNumber",
    "ONE",
    "Rational",
    "ZERO",
    "cyc",
    "cyc_arith",
    "euler_phi",
    "galois_fixed_in_subfield",
    "is_root_of_unity",
    "parse_scalar",
    "rationalize",
    "root_of_unity",
    "to_complex",
    "to_rational",
]

