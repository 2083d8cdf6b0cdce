import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qhopf.algebra import gauge_twist, normalized_integral, random_gauge_transform
from qhopf.constructions import build_group, builtin, cyclic_cocycle, twisted_double, z2_sign_cocycle
from qhopf.indicators import (
    VARIANTS,
    NotScalarAction,
    delta_n,
    hopf_indicator,
    indicator_table,
    is_indicator_cyclotomic,
    mu_n,
    nu_n,
    nu_n_central_twist,
    nu_n_dual_group,
    nu_n_twisted_double,
    phi_n,
    sweedler_power,
)
from qhopf.reptheory import character, simple_characters, trivial_representation
from qhopf.scalars import CycNumber, root_of_unity
from qhopf.tensor import multiply_all_legs, set_budget


def two_dim(H):
    (chi,) = [c for c, d in simple_characters(H) if d == 2]
    return chi


def ints(values):
    return [int(v.rational_value()) for v in values]


@pytest.mark.parametrize("name", ["C[Z2]_u", "H(Z3,w)", "D^w(Z2)", "H(Z2,w)"])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_tensor_and_rep_engines_agree(name, n):
    H = builtin(name)
    for v in VARIANTS:
        assert mu_n(H, n, v, engine="tensor") == mu_n(H, n, v, engine="rep")


@pytest.mark.parametrize("n", [2, 3])
def test_engines_agree_on_the_kac_twist(n):
    H = builtin("K_u")
    assert mu_n(H, n, "RL", engine="tensor") == mu_n(H, n, "RL", engine="rep")


@pytest.mark.parametrize("name", ["C[Z3]", "K", "C[D8]"])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_hopf_mu_is_the_sweedler_power_of_the_integral(name, n):
    H = builtin(name)
    lam = normalized_integral(H)
    assert mu_n(H, n, engine="tensor") == sweedler_power(H, lam, n)
    assert sweedler_power(H, lam, n) == multiply_all_legs(H, delta_n(H, lam, n))


def test_mu_1_is_the_integral():
    for name in ("K_u", "H(Z3,w)", "D^w(Z2)"):
        H = builtin(name)
        assert mu_n(H, 1) == normalized_integral(H)


@pytest.mark.parametrize("name", ["K_u", "C[Q8]_u", "H(Z2,w)"])
@pytest.mark.parametrize("n", [1, 3, 6])
def test_trivial_module_has_indicator_one(name, n):
    H = builtin(name)
    assert nu_n(H, character(trivial_representation(H)), n) == 1


def test_phi_n_small_cases():
    H = builtin("C[Z2]_u")
    assert phi_n(H, 3) == H.associator
    assert phi_n(H, 4).legs == 4
    assert phi_n(builtin("C[D8]"), 5) == builtin("C[D8]").one(5)


def test_group_rows():
    assert ints(nu_n(builtin("C[D8]"), two_dim(builtin("C[D8]")), n) for n in range(2, 9)) == [1, 0, 2, 0, 1, 0, 2]
    K = builtin("K")
    assert ints(nu_n(K, two_dim(K), n) for n in range(2, 9)) == [1, 0, 0, 0, 1, 0, 2]


def test_z3_pattern():
    H = builtin("C[Z3]")
    for chi, _ in simple_characters(H):
        trivial = all(v == 1 for v in chi.values)
        for n in range(1, 10):
            expect = 1 if trivial or n % 3 == 0 else 0
            assert nu_n(H, chi, n) == expect == hopf_indicator(H, chi, n)


@pytest.mark.parametrize("name", ["C[D8]", "C[Q8]", "K"])
def test_central_twist_closed_form_against_generic(name):
    base = builtin(name)
    Hu = builtin(name + "_u")
    u = Hu.provenance["u"]
    for chi, _ in simple_characters(base):
        for n in range(1, 7):
            assert nu_n_central_twist(base, u, chi, n) == nu_n(Hu, chi, n)


def test_central_twist_needs_a_scalar_action():
    base = builtin("C[D8]")
    r = base.basis_element(base.basis_labels.index("r"))
    with pytest.raises(NotScalarAction):
        nu_n_central_twist(base, r, two_dim(base), 2)


def test_dual_group_examples():
    G = build_group("Z2")
    w = z2_sign_cocycle(G)
    assert [nu_n_dual_group(G, w, 0, n) for n in range(1, 6)] == [1] * 5
    assert nu_n_dual_group(G, w, 1, 2) == -1
    G4 = build_group("Z4")
    for t in range(4):
        assert nu_n_dual_group(G4, cyclic_cocycle(4, t), 1, 8) == root_of_unity(4, 2 * t)


def test_dual_group_z2_rows():
    H = builtin("H(Z2,w)")
    table = indicator_table(H, 4)
    rows = {tuple(str(v) for v in r) for r in table.values}
    assert rows == {("1", "1", "1", "1"), ("0", "-1", "0", "1")}


@pytest.mark.parametrize("w", [None, "sign"])
def test_twisted_double_forms(w):
    G = build_group("Z2")
    D = twisted_double(G, z2_sign_cocycle(G) if w else None)
    omega = D.provenance["cocycle"]
    for chi, _ in simple_characters(D):
        for n in range(2, 7):
            p = nu_n_twisted_double(G, omega, chi, n, "primary")
            assert p == nu_n_twisted_double(G, omega, chi, n, "alternative") == nu_n(D, chi, n)
    reg = character_of_regular(D)
    assert nu_n_twisted_double(G, omega, reg, 2) == nu_n(D, reg, 2)
    with pytest.raises(ValueError):
        nu_n_twisted_double(G, omega, reg, 1)


def character_of_regular(H):
    from qhopf.reptheory import regular_representation
    return character(regular_representation(H))


def test_indicator_table_provenance_and_serialization():
    H = builtin("K_u")
    t = indicator_table(H, 5)
    assert all(p == "closed-form+generic" for row in t.provenance for p in row)
    data = json.loads(t.to_json_str())
    assert data["n_min"] == 1 and len(data["rows"]) == 5 and data["holes"] == []
    md = t.to_markdown()
    assert md.splitlines()[0].startswith("| simple | dim | nu_1")
    assert t.row(4) == t.values[4] and len(t.column(2)) == 5
    assert indicator_table(H, 5).to_json_str() == t.to_json_str()


def test_budget_exhaustion_uses_closed_forms_or_leaves_holes():
    H = builtin("K_u")
    HF = gauge_twist(H, random_gauge_transform(H, 1))
    set_budget(20)
    try:
        closed = indicator_table(H, 3)
        holes = indicator_table(HF, 3)
    finally:
        set_budget(None)
    assert all(p == "closed-form only" for row in closed.provenance for p in row)
    assert ints(closed.row(4)) == [0, -1, 0]
    assert holes.holes and all(p == "hole" for p in holes.provenance[-1])
    assert "?" in holes.to_markdown()


def test_gauge_twisted_tables_fall_back_to_the_generic_engine():
    H = builtin("C[Q8]_u")
    HF = gauge_twist(H, random_gauge_transform(H, 5))
    t = indicator_table(HF, 4)
    assert all(p == "generic" for row in t.provenance for p in row)
    assert ints(t.row(4)[1:]) == [1, 0, 2]


@given(st.sampled_from(["K", "K_u", "C[Q8]_u", "H(Z3,w)", "D^w(Z2)"]), st.integers(1, 8))
@settings(max_examples=25, deadline=None)
def test_indicators_are_cyclotomic_in_q_n(name, n):
    H = builtin(name)
    for chi, _ in simple_characters(H):
        assert is_indicator_cyclotomic(nu_n(H, chi, n), n)


def test_bad_arguments():
    H = builtin("C[Z2]")
    with pytest.raises(ValueError):
        mu_n(H, 0)
    with pytest.raises(ValueError):
        mu_n(H, 2, "XY")
    with pytest.raises(ValueError):
        mu_n(H, 2, engine="fast")
