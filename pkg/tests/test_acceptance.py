"""
Acceptance criteria, each at its stated tolerance (all exact).

Every criterion records one PASS/FAIL line; the lines are printed at the end
of the pytest run by conftest.py, or directly when this file is run as a
script.
"""

from __future__ import annotations

import contextlib
import io
import time

from qhopf import cli
from qhopf.algebra import (
    find_central_grouplikes,
    gauge_twist,
    hausser_nill_elements,
    hn_commutation_failures,
    hn_inverse_identities,
    random_gauge_transform,
    verify_theta_isomorphism,
)
from qhopf.constructions import (
    BUILTIN_NAMES,
    builtin,
    build_group,
    cyclic_cocycle,
    dual_group_algebra,
    h_u,
    twisted_double,
    z2_sign_cocycle,
)
from qhopf.indicators import (
    VARIANTS,
    hopf_indicator,
    mu_n,
    nu_n,
    nu_n_central_twist,
    nu_n_dual_group,
    nu_n_twisted_double,
)
from qhopf.reptheory import (
    character,
    invariant_subspace,
    rotation_indicator,
    simple_characters,
    simple_representations,
    tensor_power_action,
)
from qhopf.scalars import CycNumber, galois_fixed_in_subfield, root_of_unity

RESULTS: list[str] = []
SEEN: list[tuple[CycNumber, int, str]] = []   # every indicator value met, for criterion 8


def record(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    RESULTS.append(line)
    print(line)
    return ok


def seen(v, n, where):
    SEEN.append((v, n, where))
    return v


# nu_2 .. nu_8 of the two-dimensional simple, typed in independently of the package
TABLE = {
    "K": (1, 0, 0, 0, 1, 0, 2),
    "K_u": (-1, 0, 0, 0, -1, 0, 2),
    "C[D8]": (1, 0, 2, 0, 1, 0, 2),
    "C[D8]_u": (-1, 0, 2, 0, -1, 0, 2),
    "C[Q8]": (-1, 0, 2, 0, -1, 0, 2),
    "C[Q8]_u": (1, 0, 2, 0, 1, 0, 2),
}
TABLE_MARKDOWN = "\n".join(
    ["| algebra | nu_2 | nu_3 | nu_4 | nu_5 | nu_6 | nu_7 | nu_8 |", "|---|---|---|---|---|---|---|---|"]
    + [f"| {k} | " + " | ".join(str(x) for x in v) + " |" for k, v in TABLE.items()]
)


def _two_dim(H):
    (chi,) = [c for c, d in simple_characters(H) if d == 2]
    return chi


def _run_cli(*argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main(list(argv))
    return code, buf.getvalue()


def test_criterion_1_table():
    t0 = time.perf_counter()
    code, out = _run_cli("table6")
    fast = time.perf_counter() - t0
    rows = cli.table6_rows()
    for name, vals in rows.items():
        for n, v in zip(range(2, 9), vals):
            seen(v, n, f"table {name}")
    table_ok = code == 0 and out.strip() == TABLE_MARKDOWN and all(
        [int(v.rational_value()) for v in rows[k]] == list(TABLE[k]) for k in TABLE)

    # the generic engine confirms the K_u row independently
    t0 = time.perf_counter()
    Ku = builtin("K_u")
    chi = _two_dim(Ku)
    generic = [seen(nu_n(Ku, chi, n), n, "generic K_u") for n in range(2, 7)]
    slow = time.perf_counter() - t0
    generic_ok = generic == [CycNumber.rational(x) for x in TABLE["K_u"][:5]]

    # four distinct fingerprints, with the _u rows of D8 and Q8 swapping places
    prints = {k: tuple(v) for k, v in TABLE.items()}
    distinct = len({prints[k] for k in ("K", "K_u", "C[D8]", "C[Q8]")}) == 4
    swapped = prints["C[D8]_u"] == prints["C[Q8]"] and prints["C[Q8]_u"] == prints["C[D8]"]
    got = {k: tuple(int(v.rational_value()) for v in vals) for k, vals in rows.items()}
    fingerprint_ok = distinct and swapped and got == prints

    ok = table_ok and generic_ok and fast < 120 and slow < 600
    record(1, "42 table entries exact, generic K_u row for n<=6 agrees", ok,
           f"table {fast:.1f}s, generic {slow:.1f}s")
    record("1b", "fingerprints of K, K_u, C[D8], C[Q8] pairwise distinct; C[D8]_u ~ C[Q8], C[Q8]_u ~ C[D8]",
           fingerprint_ok)
    assert ok and fingerprint_ok


def test_criterion_2_cos_formula():
    base = builtin("C[Z2]")
    (u,) = find_central_grouplikes(base, 2)
    Hu = h_u(base, u)
    chi_base = [c for c, _ in simple_characters(base) if c.values[1] == CycNumber.rational(-1)][0]
    chi_u = [c for c, _ in simple_characters(Hu) if c == chi_base][0]
    cos = [1, 0, -1, 0]   # cos(n pi/2) indexed by n mod 4
    ok = True
    for n in range(1, 13):
        want = CycNumber.rational(cos[n % 4])
        closed = seen(nu_n_central_twist(base, u, chi_base, n), n, "cos closed")
        generic = seen(nu_n(Hu, chi_u, n), n, "cos generic")
        ok &= closed == want and generic == want
    record(2, "C[Z2]_u nontrivial simple, n=1..12, closed form and generic equal cos(n pi/2)", ok)
    assert ok


def test_criterion_3_cyclic_dual_group():
    ok = True
    bad = []
    for N in (2, 3, 4, 6):
        G = build_group("cyclic", N)
        g = 1
        assert G.element_order(g) == N
        for t in range(N):
            w = cyclic_cocycle(N, t)
            H = dual_group_algebra(G, w)
            chars = simple_characters(H)
            for s in (1, 2):
                v = seen(nu_n_dual_group(G, w, g, N * s), N * s, "dual closed")
                if v != root_of_unity(N, t * s):
                    bad.append((N, t, "s", s))
            for n in range(1, 13):
                if n % N and nu_n_dual_group(G, w, g, n) != 0:
                    bad.append((N, t, "n", n))
            for chi, _ in chars:
                (x,) = [i for i, c in enumerate(chi.values) if c]
                for n in range(1, 9):
                    closed = seen(nu_n_dual_group(G, w, x, n), n, "dual closed")
                    if nu_n(H, chi, n) != closed:
                        bad.append((N, t, x, n))
    ok = not bad
    record(3, "H(Z_N, w^t), N in {2,3,4,6}: nu_{Ns}=zeta_N^{ts}, 0 off multiples, closed = generic for n<=8",
           ok, f"{len(bad)} mismatches")
    assert ok, bad[:5]


def test_criterion_4_variant_agreement():
    bad = []
    for name in BUILTIN_NAMES:
        H = builtin(name)
        for n in range(1, 7):
            ref = mu_n(H, n, "RL")
            for v in VARIANTS[1:]:
                if mu_n(H, n, v) != ref:
                    bad.append((name, n, v))
    ok = not bad
    record(4, f"RL = RR = LL = LR = simplified on {len(BUILTIN_NAMES)} built-ins, n<=6", ok,
           f"{len(bad)} mismatches")
    assert ok, bad[:5]


def test_criterion_5_gauge_invariance():
    t0 = time.perf_counter()
    bad = []
    changed = 0
    for name in BUILTIN_NAMES:
        H = builtin(name)
        ref = [mu_n(H, n) for n in range(1, 6)]
        for seed in range(10):
            HF = gauge_twist(H, random_gauge_transform(H, seed))
            changed += not HF.structurally_equal(H)
            for n in range(1, 6):
                if mu_n(HF, n) != ref[n - 1]:
                    bad.append((name, seed, n))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 900 and changed > 0
    record(5, "10 seeded gauges per built-in leave mu_n unchanged for n<=5", ok,
           f"{elapsed:.0f}s, {changed} of {10 * len(BUILTIN_NAMES)} twists changed the structure")
    assert ok, bad[:5]


def test_criterion_6_twisted_double():
    G = build_group("cyclic", 2)
    bad = []
    for w in (None, z2_sign_cocycle(G)):
        D = twisted_double(G, w)
        omega = D.provenance["cocycle"]
        for chi, _ in simple_characters(D):
            for n in range(2, 7):
                primary = seen(nu_n_twisted_double(G, omega, chi, n, "primary"), n, "double primary")
                alt = nu_n_twisted_double(G, omega, chi, n, "alternative")
                generic = seen(nu_n(D, chi, n), n, "double generic")
                if not primary == alt == generic:
                    bad.append((w is not None, str(chi), n, str(primary), str(alt), str(generic)))
            if nu_n(D, chi, 2) not in (CycNumber.rational(0), CycNumber.rational(1), CycNumber.rational(-1)):
                bad.append((w is not None, str(chi), "nu_2 outside {0, 1, -1}"))
    ok = not bad
    record(6, "D^w(Z2), w trivial and not: primary = alternative = generic for n=2..6, nu_2 in {0, +-1}", ok)
    assert ok, bad[:5]


def test_criterion_7_hausser_nill():
    bad = []
    for name in BUILTIN_NAMES:
        H = builtin(name)
        hn = hausser_nill_elements(H, check=False)
        for label, value in hn_inverse_identities(H, hn).items():
            if value != H.one(2):
                bad.append((name, label))
        bad += [(name, f) for f in hn_commutation_failures(H, hn)]
        if not verify_theta_isomorphism(H):
            bad.append((name, "theta"))
    ok = not bad
    record(7, "Hausser-Nill identities on all basis elements and theta theta-bar = id, every built-in", ok)
    assert ok, bad[:5]


def test_criterion_8_cyclotomy():
    # values gathered by the other criteria plus a fresh sweep over every built-in
    pool = list(SEEN)
    for name in BUILTIN_NAMES:
        H = builtin(name)
        for chi, _ in simple_characters(H):
            for n in range(1, 9):
                pool.append((nu_n(H, chi, n), n, name))
    bad = [(str(v), n, where) for v, n, where in pool if not galois_fixed_in_subfield(v, n)]
    ok = not bad
    record(8, "every indicator lies in Q(zeta_n)", ok, f"{len(pool)} values")
    assert ok, bad[:5]


def test_criterion_9_hopf_rotation():
    bad = []
    for name in ("C[Z2]", "C[Z3]", "C[D8]", "C[Q8]", "K"):
        H = builtin(name)
        for rho in simple_representations(H):
            chi = character(rho)
            for n in range(1, 7):
                rot = rotation_indicator(H, rho, n, 1)
                sweedler = seen(hopf_indicator(H, chi, n), n, "hopf")
                generic = nu_n(H, chi, n)
                if not rot == sweedler == generic:
                    bad.append((name, rho.dim_v, n))
                inv = invariant_subspace(H, tensor_power_action(H, rho, n)).shape[1]
                if rotation_indicator(H, rho, n, n) != CycNumber.rational(inv):
                    bad.append((name, rho.dim_v, n, "full turn"))
    ok = not bad
    record(9, "rotation trace = chi(Lambda^[n]) = generic nu_n on five Hopf built-ins, n<=6; full turn = invariants",
           ok)
    assert ok, bad[:5]


if __name__ == "__main__":
    for fn in [v for k, v in sorted(globals().items()) if k.startswith("test_criterion")]:
        try:
            fn()
        except AssertionError:
            pass
    print("\n".join(RESULTS))
    raise SystemExit(0 if all(r.startswith("[PASS]") for r in RESULTS) else 1)
