import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from tamesymbol import polynomials as poly
from tamesymbol.errors import CapExceeded, NotAGenerator, NotASubfield, NotPrime, ZeroInput
from tamesymbol.fields import (FieldElement, discrete_log, embedding, extension, field_of_order,
                               format_element, frobenius, make_field, norm, parse_element)


def brute_irreducible(p, n, f):
    """No roots and no factor of degree <= n/2, by trial division over all monic polys."""
    F = make_field(p)
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = tuple(tail) + (1,)
            if not poly.mod(F, f, g):
                return False
    return True


def test_prime_field_f2():
    F = make_field(2, 1)
    assert F.q == 2 and list(F.elements()) == [0, 1]


def test_f4_modulus_is_x2_x_1():
    assert make_field(2, 2).modulus == (1, 1, 1)


def test_f9_modulus_is_lexicographically_smallest_irreducible():
    F = make_field(3, 2)
    candidates = [(a, b, 1) for b in range(3) for a in range(3)]
    # lexicographic order on the coefficient list read from the top
    irreducible = sorted((c for c in candidates if brute_irreducible(3, 2, c)),
                         key=lambda c: tuple(reversed(c)))
    assert F.modulus == irreducible[0]


def test_make_field_is_cached_and_normalizes_arguments():
    assert make_field(5) is make_field(5, 1) is field_of_order(5)


def test_errors():
    with pytest.raises(NotPrime):
        make_field(4, 1)
    with pytest.raises(CapExceeded):
        make_field(2, 21)
    with pytest.raises(NotPrime):
        field_of_order(6)


def test_norm_examples():
    F2, F4 = make_field(2), make_field(2, 2)
    alpha = F4.element((0, 1))
    assert norm(alpha, F2) == 1
    F3, F9 = make_field(3), make_field(3, 2)
    assert norm(F9.gen(), F3) == 2
    assert norm(F9.element(1), F3) == 1
    assert embedding(F3, F9).norm(0) == 0


def test_norm_rejects_non_subfield():
    with pytest.raises(NotASubfield):
        norm(make_field(2, 3).gen(), make_field(2, 2))


def test_frobenius_examples():
    F2, F4 = make_field(2), make_field(2, 2)
    alpha = F4.element((0, 1))
    assert frobenius(alpha, F2) == alpha + 1
    emb = embedding(make_field(5), make_field(5, 3))
    for c in range(5):
        assert emb.frobenius(emb(c)) == emb(c)


def test_discrete_log_examples():
    F5 = make_field(5)
    g = F5.element(2)
    assert discrete_log(F5.element(1), g) == 0
    assert discrete_log(F5.element(4), g) == 2
    assert discrete_log(F5.element(3), g) == 3
    with pytest.raises(NotAGenerator):
        discrete_log(F5.element(3), F5.element(4))
    with pytest.raises(ZeroInput):
        discrete_log(F5.element(0), g)


SMALL_TOWERS = [(2, 1, 2), (2, 1, 3), (2, 2, 2), (3, 1, 2), (5, 1, 2), (3, 2, 2), (2, 1, 5)]


@pytest.mark.parametrize("p,n,d", SMALL_TOWERS)
def test_norm_multiplicative_exhaustive(p, n, d):
    k = make_field(p, n)
    L, emb = extension(k, d)
    for a in L.elements():
        for b in L.elements():
            assert emb.norm(L.mul(a, b)) == k.mul(emb.norm(a), emb.norm(b))


@pytest.mark.parametrize("p,n,d", SMALL_TOWERS)
def test_norm_one_iff_q_minus_1_power(p, n, d):
    k = make_field(p, n)
    L, emb = extension(k, d)
    powers = {L.pow(a, k.q - 1) for a in L.units()}
    for a in L.units():
        assert (emb.norm(a) == 1) == (a in powers)


@pytest.mark.parametrize("p,n,d", SMALL_TOWERS)
def test_norm_is_product_of_conjugates(p, n, d):
    k = make_field(p, n)
    L, emb = extension(k, d)
    for a in L.units():
        prod = 1
        for c in emb.conjugates(a):
            prod = L.mul(prod, c)
        assert prod == emb(emb.norm(a))


@pytest.mark.parametrize("p,n,d", SMALL_TOWERS)
def test_frobenius_automorphism_fixing_base(p, n, d):
    k = make_field(p, n)
    L, emb = extension(k, d)
    image = {emb(c) for c in k.elements()}
    fixed = set()
    seen = set()
    for a in L.elements():
        fa = emb.frobenius(a)
        seen.add(fa)
        if fa == a:
            fixed.add(a)
        for b in (1, L.generator):
            assert emb.frobenius(L.mul(a, b)) == L.mul(fa, emb.frobenius(b))
            assert emb.frobenius(L.add(a, b)) == L.add(fa, emb.frobenius(b))
        assert emb.frobenius(a, d) == a
    assert len(seen) == L.q
    assert fixed == image


def test_embedding_is_a_ring_map():
    k = make_field(3, 2)
    L, emb = extension(k, 2)
    for a in k.elements():
        for b in k.elements():
            assert emb(k.mul(a, b)) == L.mul(emb(a), emb(b))
            assert emb(k.add(a, b)) == L.add(emb(a), emb(b))
            assert emb.pullback(emb(a)) == a


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([(2, 4), (3, 3), (5, 2), (7, 1), (2, 10)]), st.integers(0, 10 ** 6))
def test_discrete_log_inverts_power(pn, k):
    F = make_field(*pn)
    g = F.gen()
    assert discrete_log(g ** k, g) == k % (F.q - 1)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([(2, 3), (3, 2), (5, 1), (7, 2)]), st.data())
def test_field_axioms(pn, data):
    F = make_field(*pn)
    a, b, c = (FieldElement(F, data.draw(st.integers(0, F.q - 1))) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert a - a == 0
    if a:
        assert a * a.inverse() == 1
        assert a ** (F.q - 1) == 1


def test_literals_round_trip():
    F = make_field(5, 2)
    for a in F.elements():
        assert parse_element(format_element(F, a)).value == a
    assert parse_element("3", make_field(5)).value == 3


def test_literal_errors():
    from tamesymbol.errors import FixtureError
    with pytest.raises(FixtureError):
        parse_element("5^1:1,2")
    with pytest.raises(FixtureError):
        parse_element("5^2:1", make_field(5))
    with pytest.raises(FixtureError):
        parse_element("x")
