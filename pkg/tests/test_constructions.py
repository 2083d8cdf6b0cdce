from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qhopf.algebra import ValidationFailure, gauge_twist, validate
from qhopf.constructions import (
    KAC_J_ALTERNATIVE,
    BadCharacterTable,
    Cochain2,
    Cocycle3,
    FiniteGroup,
    InvalidCocycle,
    NotCentral,
    NotGrouplike,
    _kac,
    build_group,
    builtin,
    central_twist,
    cochain_gauge,
    coboundary,
    cyclic_cocycle,
    dual_group_algebra,
    group_algebra,
    h_u,
    kac_algebra,
    twisted_double,
    z2_sign_cocycle,
)
from qhopf.indicators import mu_n, nu_n
from qhopf.reptheory import simple_characters
from qhopf.scalars import ONE, root_of_unity


@pytest.mark.parametrize("kind, order, abelian", [
    ("Z4", 4, True), ("Z6", 6, True), ("D8", 8, False), ("Q8", 8, False), ("V4", 4, True), ("D6", 6, False),
])
def test_groups(kind, order, abelian):
    G = build_group(kind)
    G.check()
    assert G.order == order
    comm = all(G.mul(a, b) == G.mul(b, a) for a, b in product(G.elements(), repeat=2))
    assert comm is abelian
    assert FiniteGroup.from_json(G.to_json()).mult_table == G.mult_table


def test_group_element_details():
    Q8 = build_group("Q8")
    involutions = [x for x in Q8.elements() if Q8.element_order(x) == 2]
    assert [Q8.labels[x] for x in involutions] == ["-1"]
    i, j, k = (Q8.index(s) for s in "ijk")
    assert Q8.mul(i, j) == k and Q8.mul(j, i) == Q8.index("-k")
    D8 = build_group("D8")
    assert sorted(D8.labels[x] for x in D8.center()) == ["1", "r^2"]
    r, s = D8.index("r"), D8.index("s")
    assert D8.conj(r, s) == D8.index("r^3")          # s^-1 r s = r^-1
    assert D8.power(r, -1) == D8.index("r^3")


def test_bad_group_kind():
    with pytest.raises(ValueError):
        build_group("Z0")
    with pytest.raises(ValueError):
        build_group("dihedral", 5)
    with pytest.raises(ValueError):
        build_group("A5")


@pytest.mark.parametrize("N", [2, 3, 4, 6])
@pytest.mark.parametrize("t", [0, 1, 2])
def test_cyclic_cocycles_are_cocycles(N, t):
    w = cyclic_cocycle(N, t).verify()
    assert all(v ** N == 1 for v in w.values)
    assert w.is_trivial() is (t % N == 0)


@pytest.mark.parametrize("N", [2, 3, 4])
def test_cyclic_cocycle_product_law(N):
    for s, t in product(range(N), repeat=2):
        assert cyclic_cocycle(N, s) * cyclic_cocycle(N, t) == cyclic_cocycle(N, (s + t) % N)


def test_sign_cocycle_is_the_cyclic_one_for_z2():
    assert z2_sign_cocycle() == cyclic_cocycle(2, 1)


@given(st.integers(0, 10_000), st.sampled_from(["Z4", "V4", "D6"]))
@settings(max_examples=10, deadline=None)
def test_coboundaries_are_cocycles(seed, kind):
    G = build_group(kind)
    db = coboundary(Cochain2.random(G, seed))
    assert db.failures() == []


def test_invalid_cocycles_are_caught():
    G = build_group("Z3")
    vals = list(cyclic_cocycle(3, 1).values)
    vals[(1 * 3 + 2) * 3 + 1] = vals[(1 * 3 + 2) * 3 + 1] * root_of_unity(3)
    kinds = [k for k, _ in Cocycle3(G, vals).failures()]
    assert "cocycle" in kinds
    not_normal = Cocycle3.from_function(G, lambda a, b, c: root_of_unity(3) if a == 0 else ONE)
    assert "normalized" in [k for k, _ in not_normal.failures()]
    with pytest.raises(InvalidCocycle):
        not_normal.verify()
    with pytest.raises(ValueError):
        Cochain2(G, [root_of_unity(3)] * 9)


def test_cocycle_json_round_trip():
    w = cyclic_cocycle(4, 3)
    assert Cocycle3.from_json(w.to_json()) == w


def test_dual_group_with_a_broken_cocycle_is_rejected():
    G = build_group("Z2")
    w = Cocycle3.from_function(G, lambda a, b, c: root_of_unity(4) if (a, b, c) == (1, 1, 1) else ONE)
    with pytest.raises(ValidationFailure):
        dual_group_algebra(G, w)


def _z4_twist(w):
    G = build_group("Z4")
    H = group_algebra(G)
    j = [[root_of_unity(4, y * x) for x in range(4)] for y in range(4)]
    return H, G, central_twist(H, G, [H.basis_element(g) for g in range(4)], w, j)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_cochain_gauge_changes_the_cocycle_by_a_coboundary(seed):
    w = cyclic_cocycle(4, 1)
    H, G, Ht = _z4_twist(w)
    b = Cochain2.random(G, seed, 8)
    HF = gauge_twist(Ht, cochain_gauge(Ht, b))
    _, _, H2 = _z4_twist(w * coboundary(b))
    assert HF.associator == H2.associator
    assert HF.comult == H2.comult
    assert HF.mul(HF.alpha, HF.beta) == H2.beta           # alpha = 1 on the right
    assert all(mu_n(HF, n) == mu_n(H2, n) for n in range(1, 5))


def test_central_twist_input_checks():
    D8 = builtin("C[D8]")
    G = build_group("Z2")
    sign = [[ONE, ONE], [ONE, -ONE]]
    w = z2_sign_cocycle(G)
    r = D8.basis_element(D8.basis_labels.index("r"))
    with pytest.raises(NotCentral):
        central_twist(D8, G, [D8.one(), D8.basis_element(D8.basis_labels.index("s"))], w, sign)
    with pytest.raises(NotGrouplike):
        central_twist(D8, G, [D8.one(), D8.one() + r], w, sign)
    r2 = D8.basis_element(D8.basis_labels.index("r^2"))
    with pytest.raises(BadCharacterTable):
        central_twist(D8, G, [D8.one(), r2], w, [[ONE, ONE], [ONE, ONE]])
    assert validate(central_twist(D8, G, [D8.one(), r2], w, sign)).ok


def test_h_u_of_q8_is_q8_with_new_data():
    Q8 = builtin("C[Q8]")
    Hu = h_u(Q8, Q8.basis_element(Q8.basis_labels.index("-1")))
    assert Hu.mult_table == Q8.mult_table
    assert Hu.associator != Q8.associator
    assert not Hu.is_hopf()


@pytest.mark.parametrize("kind", ["Z2", "Z3", "V4"])
def test_untwisted_double_is_a_hopf_algebra(kind):
    D = twisted_double(build_group(kind))
    assert D.is_hopf()
    assert D.dim == build_group(kind).order ** 2


def test_twisted_double_dimensions():
    D = twisted_double(build_group("Z2"), z2_sign_cocycle())
    assert not D.is_hopf()
    assert sorted(d for _, d in simple_characters(D)) == [1, 1, 1, 1]
    D3 = twisted_double(build_group("D6"))
    assert sorted(d for _, d in simple_characters(D3)) == [1, 1, 2, 2, 2, 2, 3, 3]


def test_kac_algebra_shape():
    K = kac_algebra()
    assert K.dim == 8 and K.is_hopf()
    assert sorted(d for _, d in simple_characters(K)) == [1, 1, 1, 1, 2]
    # neither commutative nor cocommutative
    x, z = (K.basis_element(K.basis_labels.index(s)) for s in ("x", "z"))
    assert K.mul(x, z) != K.mul(z, x)
    Dz = K.delta(z)
    assert Dz != Dz.permute((1, 0))


def test_both_counital_readings_of_the_kac_coproduct_agree_on_indicators():
    K, K2 = kac_algebra(), _kac(KAC_J_ALTERNATIVE)
    assert validate(K2).ok
    for A, B in ((K, K2), (h_u(K, _u(K)), h_u(K2, _u(K2)))):
        rows_a = sorted(tuple(str(nu_n(A, c, n)) for n in range(1, 9)) for c, _ in simple_characters(A))
        rows_b = sorted(tuple(str(nu_n(B, c, n)) for n in range(1, 9)) for c, _ in simple_characters(B))
        assert rows_a == rows_b


def _u(K):
    return K.basis_element(K.basis_labels.index("xy"))
