import random

import pytest

from conftest import FIXTURES, curve_fixture
from tamesymbol import campaigns
from tamesymbol.curves import ProjectiveLine
from tamesymbol.fields import make_field
from tamesymbol.functions import RationalFunction, divisor_of
from tamesymbol.ideles import Idele, global_tame_symbol, load_idele
from tamesymbol.theorem import (build_f_group, pairing_matrix_three_ways, self_duality_check,
                                separating_witness, verify_theorem_finite, window_alpha_check)

Q_FIXTURES = ["p1_f5", "e_x3_minus_x_f5", "e_x3_x_1_f5", "e_ss_f4", "e_x3_minus_x_f3"]


@pytest.mark.parametrize("name,order", [("p1_f5", 4), ("e_x3_minus_x_f5", 32), ("e_x3_x_1_f5", 4)])
def test_f_group_orders(name, order):
    G = build_f_group(curve_fixture(name))
    assert G.checks["order"] == order and G.checks["exact"]
    assert G.checks["divisors"] and G.checks["classes"] and G.checks["relations"]


def test_f_group_functions_have_divisible_divisors():
    G = build_f_group(curve_fixture("e_x3_minus_x_f5"))
    for phi in G.phis:
        assert all(k % 4 == 0 for k in divisor_of(phi).coeffs.values())


def test_pairing_matrix_p1():
    r = pairing_matrix_three_ways(curve_fixture("p1_f5"))
    assert r["verdict"] == "PASS"
    # (c, t_x0) = c^(-1): c = 2 has log 1, so the entry is -1 mod 4
    assert r["W1"] == r["W2"] == r["W3"] == [[3]]


def test_pairing_matrix_trivial_torsion():
    r = pairing_matrix_three_ways(curve_fixture("e_x3_x_1_f5"))
    assert r["verdict"] == "PASS" and len(r["W1"]) == 1 and len(r["W1"][0]) == 1


def test_pairing_matrix_full_block():
    r = pairing_matrix_three_ways(curve_fixture("e_x3_minus_x_f5"))
    assert r["verdict"] == "PASS" and r["agree"] and r["unimodular"]
    assert r["W1"] == r["W2"] == r["W3"]
    assert sorted(r["row_orders"][1:]) == [2, 4] and sorted(r["col_orders"][1:]) == [2, 4]


@pytest.mark.parametrize("name", Q_FIXTURES)
def test_three_routes_agree_on_fixtures(name):
    r = pairing_matrix_three_ways(curve_fixture(name))
    assert r["verdict"] == "PASS", r["mismatches"]


def test_pairing_matrix_vacuous_over_f2():
    assert pairing_matrix_three_ways(curve_fixture("e_ss_f2"))["verdict"] == "VACUOUS"


@pytest.mark.parametrize("name", Q_FIXTURES)
def test_verify_theorem_finite(name):
    r = verify_theorem_finite(curve_fixture(name), link_models=5)
    assert r["verdict"] == "PASS" and r["d"] == 1
    assert r["condition_i_window"]["iso"]
    assert r["cor_key_link"]["FAIL"] == 0


def test_verify_theorem_finite_vacuous():
    r = verify_theorem_finite(curve_fixture("e_ss_f2"))
    assert r["verdict"] == "VACUOUS" and r["d"] == 1


def test_window_alpha_degree_two():
    assert window_alpha_check(curve_fixture("e_x3_minus_x_f3"), 2)["iso"]


# --- witnesses --------------------------------------------------------------------------------


def test_stage_one_witness_deg1_fixture():
    f = load_idele(FIXTURES / "deg1.idele")
    w = separating_witness(f)
    assert w["stage"] == 1 and w["value"] == 2
    assert w["psi"].is_constant() and w["psi"].A == (2,)


def test_stage_two_witness_pic_fixture():
    f = load_idele(FIXTURES / "pic_order2.idele")
    w = separating_witness(f)
    assert w["stage"] == 2
    assert global_tame_symbol(f, Idele.principal(w["psi"])).value != 1


def test_stage_three_witness_residue_fixture():
    f = load_idele(FIXTURES / "residue.idele")
    w = separating_witness(f)
    assert w["stage"] == 3
    assert global_tame_symbol(f, Idele.principal(w["psi"])).value != 1


def test_member_has_no_witness():
    assert separating_witness(load_idele(FIXTURES / "member.idele")) is None
    P1 = curve_fixture("p1_f5")
    rng = random.Random(0)
    from tamesymbol.ideles import random_member
    places = P1.places_up_to_degree(2)
    for _ in range(20):
        assert separating_witness(random_member(P1, rng, places, with_shift=False)) is None


def test_witness_rejects_principal_shift():
    P1 = curve_fixture("p1_f5")
    with pytest.raises(ValueError):
        separating_witness(Idele.principal(RationalFunction.x(P1)))


@pytest.mark.parametrize("name", Q_FIXTURES + ["e_ss_f2"])
def test_witness_campaign_small(name):
    r = campaigns.witnesses(curve_fixture(name), count=15, seed=2, members=15)
    if name == "e_ss_f2":
        assert r["verdict"] == "VACUOUS"
    else:
        assert r["verdict"] == "PASS", r["counterexamples"]
        assert r["members_without_witness"] == 15


def test_separate_report():
    r = campaigns.separate(load_idele(FIXTURES / "deg1.idele"))
    assert r["verdict"] == "PASS" and r["stage"] == 1 and r["value"] == 2


# --- self duality -------------------------------------------------------------------------------


def test_self_duality_examples():
    P1 = ProjectiveLine(make_field(5))
    r = self_duality_check(P1, [P1.place_of_poly((0, 1))])
    assert r["verdict"] == "PASS" and r["size"] == 2
    # (t, t) = -1 = 2^2 and (u, u) = 1
    assert r["gram"][0][0] == 2 and r["gram"][1][1] == 0 and r["gram"][0][1] % 4 != 0
    assert (r["gram"][0][1] + r["gram"][1][0]) % 4 == 0
    assert self_duality_check(P1, [])["verdict"] == "PASS"
    P14 = ProjectiveLine(make_field(2, 2))
    places = [P for d in (1, 2, 3) for P in P14.places_of_degree(d)[:1]]
    assert sorted(P.degree for P in places) == [1, 2, 3]
    assert self_duality_check(P14, places)["verdict"] == "PASS"
    assert self_duality_check(curve_fixture("e_ss_f2"), [])["verdict"] == "VACUOUS"
