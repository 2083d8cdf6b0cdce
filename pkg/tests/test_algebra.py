import json

import pytest

from qhopf.algebra import (
    GaugeTransform,
    QuasiHopfAlgebra,
    ValidationFailure,
    center_basis,
    find_central_grouplikes,
    gauge_twist,
    hausser_nill_elements,
    hn_commutation_failures,
    is_central,
    normalized_integral,
    random_gauge_transform,
    require_valid,
    to_json_str,
    trivial_gauge,
    validate,
    verify_theta_isomorphism,
)
from qhopf.constructions import BUILTIN_NAMES, builtin
from qhopf.scalars import CycNumber
from qhopf.tensor import SparseTensor

# number of simple modules = dim Z(H)
SIMPLES = {"C[Z2]": 2, "C[Z3]": 3, "C[D8]": 5, "C[Q8]": 5, "K": 5, "C[Z2]_u": 2, "C[D8]_u": 5,
           "C[Q8]_u": 5, "K_u": 5, "H(Z2)": 2, "H(Z2,w)": 2, "H(Z3,w)": 3, "D(Z2)": 4, "D^w(Z2)": 4}


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_builtins_validate(name):
    H = builtin(name)
    report = validate(H)
    assert report.ok, str(report)
    assert len(center_basis(H)) == SIMPLES[name]


@pytest.mark.parametrize("name", ["C[D8]", "K_u", "D^w(Z2)"])
def test_json_round_trip(name):
    H = builtin(name)
    text = to_json_str(H)
    back = QuasiHopfAlgebra.from_json(json.loads(text))
    assert back.structurally_equal(H)
    assert to_json_str(back) == text
    assert validate(back).ok


def test_corrupted_beta_fails_the_antipode_checks():
    obj = builtin("C[Z2]_u").to_json()
    obj["beta"] = [[0, {"conductor": 1, "coeffs": ["2/1"]}]]
    H = QuasiHopfAlgebra.from_json(obj)
    report = validate(H)
    assert not report.ok
    assert not report["antipode-associator"].passed
    assert "antipode-associator" in str(report)
    with pytest.raises(ValidationFailure):
        require_valid(H)


def test_broken_multiplication_is_reported():
    obj = builtin("C[Z2]").to_json()
    # x*x = 2 instead of 1
    obj["mult"] = [r for r in obj["mult"] if (r[0], r[1]) != (1, 1)] + [[1, 1, 0, 2]]
    report = validate(QuasiHopfAlgebra.from_json(obj))
    assert report["associativity"].passed
    assert not report["counit-multiplicative"].passed
    assert not report["coproduct-multiplicative"].passed


@pytest.mark.parametrize("name", ["C[Z2]", "C[Q8]", "K_u", "H(Z3,w)", "D^w(Z2)"])
def test_normalized_integral(name):
    H = builtin(name)
    lam = normalized_integral(H)
    assert H.counit_value(lam) == 1
    for i in range(H.dim):
        b = H.basis_element(i)
        assert H.mul(b, lam) == lam.scale(H.counit[i]) == H.mul(lam, b)
    assert H.mul(lam, lam) == lam


def test_integral_of_a_group_algebra_is_the_average():
    H = builtin("C[D8]")
    assert normalized_integral(H) == SparseTensor.from_vector([CycNumber.rational(1) / 8] * 8)


@pytest.mark.parametrize("name, expected", [("C[D8]", "r^2"), ("C[Q8]", "-1"), ("K", "xy")])
def test_unique_central_involution(name, expected):
    H = builtin(name)
    (u,) = find_central_grouplikes(H, 2)
    assert u == H.basis_element(H.basis_labels.index(expected))
    assert is_central(H, u)


def test_no_central_involution_in_z3():
    assert find_central_grouplikes(builtin("C[Z3]"), 2) == []


def test_trivial_gauge_changes_nothing():
    H = builtin("K_u")
    assert gauge_twist(H, trivial_gauge(H)).structurally_equal(H)


@pytest.mark.parametrize("name", ["C[Z3]", "K", "C[Q8]_u"])
def test_random_gauge_twist_is_valid_and_reversible(name):
    H = builtin(name)
    g = random_gauge_transform(H, seed=4)
    assert g.check(H)
    HF = gauge_twist(H, g)                  # validates internally
    assert not HF.structurally_equal(H)
    assert HF.tag["gauge"] == 1
    # twisting back by F^-1 recovers the original structure
    back = gauge_twist(HF, g.inverse())
    assert back.structurally_equal(H)


def test_random_gauge_is_deterministic():
    H = builtin("K")
    a, b = random_gauge_transform(H, 9), random_gauge_transform(H, 9)
    assert a.F == b.F and a.F_inverse == b.F_inverse
    assert random_gauge_transform(H, 10).F != a.F


def test_non_normalized_gauge_is_rejected():
    H = builtin("C[Z2]")
    F = H.one(2).scale(2)
    g = GaugeTransform(F, H.one(2).scale(CycNumber.rational(1) / 2))
    assert not g.check(H)


@pytest.mark.parametrize("name", ["C[Z2]_u", "H(Z3,w)", "K_u"])
def test_hausser_nill_data_survives_a_gauge(name):
    HF = gauge_twist(builtin(name), random_gauge_transform(builtin(name), 2))
    hausser_nill_elements(HF)               # raises if an inverse identity fails
    assert hn_commutation_failures(HF) == []
    assert verify_theta_isomorphism(HF)


def test_hausser_nill_elements_are_trivial_for_hopf_algebras():
    H = builtin("C[D8]")
    for t in hausser_nill_elements(H):
        assert t == H.one(2)
