import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from tamesymbol import polynomials as poly
from tamesymbol.fields import make_field


def rand_poly(rng, F, deg):
    return poly.trim([rng.randrange(F.q) for _ in range(deg)] + [rng.randrange(1, F.q)])


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_factorization_against_sympy(p):
    F = make_field(p)
    rng = random.Random(p)
    x = sympy.symbols("x")
    for _ in range(30):
        f = rand_poly(rng, F, rng.randint(1, 9))
        lc, facs = poly.factor(F, f)
        ours = sorted((tuple(g), e) for g, e in facs)
        expr = sum(c * x ** i for i, c in enumerate(f))
        _, theirs = sympy.factor_list(sympy.Poly(expr, x, modulus=p))
        ref = []
        for g, e in theirs:
            coeffs = [int(c) % p for c in reversed(g.all_coeffs())]
            ref.append((tuple(poly.monic(F, coeffs)), e))
        assert ours == sorted(ref)


@pytest.mark.parametrize("pn", [(2, 2), (3, 2), (2, 3)])
def test_factorization_recomposes(pn):
    F = make_field(*pn)
    rng = random.Random(1)
    for _ in range(30):
        f = rand_poly(rng, F, rng.randint(1, 7))
        lc, facs = poly.factor(F, f)
        g = [lc]
        for h, e in facs:
            assert poly.is_irreducible(F, h)
            g = poly.mul(F, g, poly.power(F, h, e))
        assert g == f


def test_irreducible_counts_match_necklace_formula():
    # number of monic irreducibles of degree n over F_q is (1/n) sum_{d|n} mu(d) q^(n/d)
    import itertools
    for q_pn, n in [((2, 1), 4), ((3, 1), 3), ((2, 2), 2)]:
        F = make_field(*q_pn)
        count = sum(poly.is_irreducible(F, tuple(t) + (1,))
                    for t in itertools.product(range(F.q), repeat=n))
        expected = sum(sympy.mobius(d) * F.q ** (n // d) for d in sympy.divisors(n)) // n
        assert count == expected


def test_roots_in_extension():
    F2 = make_field(2)
    roots, big, emb = poly.roots_in_extension(F2, (1, 1, 1), 2)
    assert len(roots) == 2
    for r in roots:
        assert poly.evaluate(big, poly.map_coeffs(emb, (1, 1, 1)), r) == 0


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=6),
       st.lists(st.integers(0, 4), min_size=1, max_size=6))
def test_division_identity(a, b):
    F = make_field(5)
    a, b = poly.trim(a), poly.trim(b)
    if not b:
        return
    q, r = poly.divmod_(F, a, b)
    assert poly.add(F, poly.mul(F, q, b), r) == a
    assert len(r) < len(b)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=1, max_size=6),
       st.lists(st.integers(0, 6), min_size=1, max_size=6))
def test_xgcd_bezout(a, b):
    F = make_field(7)
    a, b = poly.trim(a), poly.trim(b)
    if not a and not b:
        return
    g, s, t = poly.xgcd(F, a, b)
    assert poly.add(F, poly.mul(F, s, a), poly.mul(F, t, b)) == g
    assert g == poly.gcd(F, a, b)
