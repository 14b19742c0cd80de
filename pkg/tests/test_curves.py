import itertools
import random

import pytest

from conftest import curve_fixture
from tamesymbol.curves import ProjectiveLine, WeierstrassCurve, parse_curve
from tamesymbol.errors import CapExceeded, DegreeNonzero, FixtureError, ZeroFunction
from tamesymbol.fields import embedding, make_field
from tamesymbol.functions import (Divisor, RationalFunction, divisor_of, is_principal,
                                  local_expansion, random_function)
from tamesymbol.local import tame_symbol_value
from tamesymbol.picard import (PicardData, frobenius_lemma_check, frobenius_pushforward,
                               gcd_of_place_degrees, kappa, kappa_table, kappa_unimodular,
                               miller_function, picard_group, principal_divisor_check,
                               torsion_and_cotorsion, weil_pairing)

F2, F4, F5 = make_field(2), make_field(2, 2), make_field(5)
FIXTURE_NAMES = ["p1_f5", "e_x3_minus_x_f5", "e_x3_x_1_f5", "e_ss_f4", "e_x3_minus_x_f3", "e_ss_f2"]


def brute_points(E, L):
    return [(x, y) for x in L.elements() for y in L.elements() if E.on_curve(L, (x, y))]


# --- models and places ----------------------------------------------------------


def test_p1_over_f2_places_up_to_degree_2():
    places = ProjectiveLine(F2).places_up_to_degree(2)
    assert sorted(P.degree for P in places) == [1, 1, 1, 2]
    assert any(P.kind == "inf" for P in places)
    assert [P.data for P in places if P.degree == 2] == [(1, 1, 1)]


def test_supersingular_f2_rational_points():
    E = curve_fixture("e_ss_f2")
    assert list(E.points(F2)) == [None, (0, 0), (0, 1)]
    assert len(E.places_of_degree(1)) == 3


@pytest.mark.parametrize("name,count", [("e_x3_minus_x_f5", 8), ("e_x3_x_1_f5", 9), ("e_ss_f4", 9)])
def test_point_counts_against_brute_force(name, count):
    E = curve_fixture(name)
    L = E.base
    pts = E.points(L)
    assert len(pts) == count
    assert sorted(p for p in pts if p) == sorted(brute_points(E, L))


@pytest.mark.parametrize("name", ["e_x3_minus_x_f5", "e_ss_f4", "e_x3_minus_x_f3"])
def test_place_counts_are_orbit_counts(name):
    E = curve_fixture(name)
    for d in (1, 2, 3):
        L = E.field_of_degree(d)
        total = len(E.points(L))
        # |E(F_{q^d})| = sum over e | d of e * #places of degree e
        assert total == sum(e * len(E.places_of_degree(e)) for e in range(1, d + 1) if d % e == 0)


def test_place_representative_is_lexicographically_minimal():
    E = curve_fixture("e_x3_minus_x_f5")
    for P in E.places_of_degree(2):
        L = P.residue_field
        orbit = E.frobenius_orbit(L, P.data)
        assert len(orbit) == 2 and P.data == min(orbit)


def test_gcd_of_place_degrees():
    for name in FIXTURE_NAMES:
        assert gcd_of_place_degrees(curve_fixture(name), 1) == 1
    assert gcd_of_place_degrees(ProjectiveLine(F2), 2, degrees={2}) == 2


def test_singular_curve_rejected():
    with pytest.raises(FixtureError):
        WeierstrassCurve(F5, 0, 0, 0, 0, 0)


def test_curve_parse_errors():
    with pytest.raises(FixtureError):
        parse_curve("kind = conic\np = 5\n")
    with pytest.raises(FixtureError):
        parse_curve("p = 5\n")
    with pytest.raises(FixtureError):
        parse_curve("kind = p1\np = 6\n")


def test_field_cap():
    with pytest.raises(CapExceeded):
        ProjectiveLine(F5).field_of_degree(12)


# --- expansions and divisors ---------------------------------------------------------------


def test_expansion_examples_p1():
    P1 = ProjectiveLine(F5)
    tt = RationalFunction.x(P1)
    e = local_expansion(tt, P1.place_of_poly((0, 1)))
    assert e.valuation == 1 and e.coeffs[0] == 1
    assert local_expansion(tt, P1.infinity).valuation == -1
    f = RationalFunction(P1, (1, 0, 1), (), (3, 1))  # (t^2+1)/(t-2)
    e = local_expansion(f, P1.place_of_poly((3, 1)))
    assert e.valuation == 0 and e.coeffs[0] == 4


def test_divisor_examples():
    P1 = ProjectiveLine(F2)
    tt = RationalFunction.x(P1)
    assert divisor_of(tt) == Divisor({P1.place_of_poly((0, 1)): 1, P1.infinity: -1})
    D = divisor_of(RationalFunction(P1, (1, 1, 1)))
    assert D == Divisor({P1.place_of_poly((1, 1, 1)): 1, P1.infinity: -2}) and D.degree() == 0
    E = curve_fixture("e_ss_f2")
    x = RationalFunction.x(E)
    p00, p01 = E.place_of_point(F2, (0, 0)), E.place_of_point(F2, (0, 1))
    assert divisor_of(x) == Divisor({p00: 1, p01: 1, E.O: -2})


def test_zero_function_rejected():
    with pytest.raises(ZeroFunction):
        RationalFunction(ProjectiveLine(F5), ())


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_random_functions_have_degree_zero_principal_divisors(name):
    C = curve_fixture(name)
    pic = PicardData(C)
    rng = random.Random(3)
    zero = tuple(0 for _ in pic.invariants)
    for _ in range(40):
        f = random_function(C, rng)
        D = divisor_of(f)
        assert D.degree() == 0
        assert pic.class_of(D) == zero
        g = is_principal(C, D)
        assert g is not None and (f / g).is_constant()


@pytest.mark.parametrize("name", ["e_x3_minus_x_f5", "e_ss_f4", "e_x3_x_1_f5", "p1_f5"])
def test_is_principal_iff_class_zero(name):
    C = curve_fixture(name)
    pic = PicardData(C)
    places = C.places_up_to_degree(2)
    rng = random.Random(0)
    principal = 0
    for _ in range(1000):
        D = {}
        for _ in range(rng.randint(1, 3)):
            P = rng.choice(places)
            D[P] = D.get(P, 0) + rng.choice([-2, -1, 1, 2])
        deg = sum(P.degree * k for P, k in D.items())
        D[pic.base_place] = D.get(pic.base_place, 0) - deg
        D = Divisor(D)
        zero, f = principal_divisor_check(C, D)
        assert zero == (f is not None)
        if f is not None:
            principal += 1
            assert divisor_of(f) == D
    assert principal > 0


def test_is_principal_examples():
    P1 = ProjectiveLine(F5)
    f = is_principal(P1, Divisor({P1.place_of_poly((0, 1)): 1, P1.infinity: -1}))
    assert (f / RationalFunction.x(P1)).is_constant()
    E = curve_fixture("e_x3_minus_x_f5")
    P = E.place_of_point(F5, (0, 0))
    assert is_principal(E, Divisor({P: 1, E.O: -1})) is None
    with pytest.raises(DegreeNonzero):
        is_principal(E, Divisor({P: 1}))
    # n (P) - n (O) for P of order 2 is the divisor of a Miller function
    g = miller_function(E, (0, 0), 2)
    assert divisor_of(g) == Divisor({P: 2, E.O: -2})
    assert is_principal(E, Divisor({P: 2, E.O: -2})) is not None


@pytest.mark.parametrize("name", ["p1_f5", "e_x3_minus_x_f5", "e_ss_f4"])
def test_normed_symbols_independent_of_geometric_point(name):
    C = curve_fixture(name)
    F = C.base
    rng = random.Random(9)
    places = [P for P in C.places_up_to_degree(3) if P.degree > 1][:12]
    for _ in range(10):
        f, g = random_function(C, rng), random_function(C, rng)
        for P in places:
            emb = embedding(F, P.residue_field)
            vals = {emb.norm(tame_symbol_value(local_expansion(f, P, 4, c), local_expansion(g, P, 4, c)))
                    for c in range(P.degree)}
            assert len(vals) == 1


# --- Picard groups ------------------------------------------------------------------------


def test_picard_examples():
    assert picard_group(ProjectiveLine(F5)).invariants == ()
    assert picard_group(curve_fixture("e_x3_minus_x_f5")).invariants == (2, 4)
    assert picard_group(curve_fixture("e_x3_x_1_f5")).invariants == (9,)


def test_class_of_is_a_homomorphism():
    E = curve_fixture("e_x3_minus_x_f5")
    pic = PicardData(E)
    places = E.places_up_to_degree(2)
    rng = random.Random(1)
    for _ in range(50):
        D1 = Divisor({rng.choice(places): rng.randint(-2, 2) for _ in range(2)})
        D2 = Divisor({rng.choice(places): rng.randint(-2, 2) for _ in range(2)})
        a, b, s = pic.class_of(D1), pic.class_of(D2), pic.class_of(D1 + D2)
        assert s == tuple((x + y) % d for x, y, d in zip(a, b, pic.invariants))


def test_frobenius_pushforward_examples():
    E = curve_fixture("e_x3_minus_x_f5")
    L = E.field_of_degree(2)
    emb = embedding(F5, L)
    for P in E.points(F5):
        lifted = None if P is None else (emb(P[0]), emb(P[1]))
        assert frobenius_pushforward(E, L, lifted) == lifted
    moved = [P for P in E.points(L) if P and frobenius_pushforward(E, L, P) != P]
    assert moved
    for P in moved:
        assert frobenius_pushforward(E, L, frobenius_pushforward(E, L, P)) == P
    rng = random.Random(0)
    pts = E.points(L)
    for _ in range(100):
        P, Q = rng.choice(pts), rng.choice(pts)
        lhs = frobenius_pushforward(E, L, E.add(L, P, Q))
        rhs = E.add(L, frobenius_pushforward(E, L, P), frobenius_pushforward(E, L, Q))
        assert lhs == rhs


def test_group_law_axioms_exhaustive():
    E = curve_fixture("e_x3_minus_x_f5")
    L = E.field_of_degree(2)
    pts = E.points(L)
    rng = random.Random(2)
    for _ in range(300):
        P, Q, R = rng.choice(pts), rng.choice(pts), rng.choice(pts)
        assert E.add(L, P, Q) == E.add(L, Q, P)
        assert E.add(L, E.add(L, P, Q), R) == E.add(L, P, E.add(L, Q, R))
        assert E.add(L, P, E.neg(L, P)) is None
        assert E.on_curve(L, E.add(L, P, Q))


# --- torsion, Weil pairing, kappa -------------------------------------------------------------


def test_torsion_examples():
    T = torsion_and_cotorsion(curve_fixture("e_x3_x_1_f5"))
    assert T.kernel_orders == () and T.cot_orders == ()
    T = torsion_and_cotorsion(curve_fixture("e_x3_minus_x_f5"))
    assert sorted(T.kernel_orders) == [2, 4] and sorted(T.cot_orders) == [2, 4]
    assert len(T.torsion_points) == 16
    for m, _ in T.cot_elements():
        if m is not None:
            mt = T.division_point(m)
            assert T.curve.mul(T.field, 4, mt) == T.lift(m)
    assert torsion_and_cotorsion(ProjectiveLine(F5)).trivial


@pytest.mark.parametrize("route", ["miller", "rr"])
def test_weil_pairing_on_two_torsion(route):
    E = curve_fixture("e_x3_minus_x_f5")
    T = torsion_and_cotorsion(E)
    L = T.field
    two = [P for P in E.points(F5) if P and E.mul(F5, 2, P) is None]
    A, B = T.lift(two[0]), T.lift(two[1])
    assert weil_pairing(E, L, A, B, 2, route=route) == L.neg(1)
    assert weil_pairing(E, L, A, A, 2, route=route) == 1


@pytest.mark.parametrize("name", ["e_x3_minus_x_f5", "e_ss_f4", "e_x3_minus_x_f3"])
def test_weil_pairing_bilinear_alternating_nondegenerate(name):
    E = curve_fixture(name)
    T = torsion_and_cotorsion(E)
    L, n = T.field, T.n
    tors = T.torsion_points
    rng = random.Random(4)
    for _ in range(15):
        P, Q, R = rng.choice(tors), rng.choice(tors), rng.choice(tors)
        e = lambda a, b: weil_pairing(E, L, a, b, n)
        assert L.mul(e(P, Q), e(Q, P)) == 1
        assert e(E.add(L, P, Q), R) == L.mul(e(P, R), e(Q, R))
        assert weil_pairing(E, L, P, Q, n, route="rr") == e(P, Q)
    for P in tors:
        if P is not None:
            assert any(weil_pairing(E, L, P, Q, n) != 1 for Q in tors)


@pytest.mark.parametrize("name", ["e_x3_minus_x_f5", "e_ss_f4", "e_x3_minus_x_f3"])
def test_kappa_well_defined_and_unimodular(name):
    T = torsion_and_cotorsion(curve_fixture(name))
    for ell, _ in T.kernel_elements():
        for m, _ in T.cot_elements():
            if m is None:
                continue
            assert kappa(T, ell, m) == kappa(T, ell, m, other=True)
    assert kappa_unimodular(T) and kappa_unimodular(T, "rr")
    assert kappa_table(T) == kappa_table(T, "rr")


def test_kappa_zero_row():
    T = torsion_and_cotorsion(curve_fixture("e_x3_minus_x_f5"))
    assert all(kappa(T, None, m) == 1 for m in T.cot_gens)


def test_frobenius_lemma_examples():
    assert frobenius_lemma_check(ProjectiveLine(F5))["verdict"] == "VACUOUS"
    r = frobenius_lemma_check(curve_fixture("e_x3_minus_x_f5"))
    assert r["verdict"] == "PASS" and r["kernel_order"] == 8
    assert sorted(r["cokernel_invariants"]) == [2, 4]
    assert frobenius_lemma_check(curve_fixture("e_ss_f2"))["verdict"] == "VACUOUS"
