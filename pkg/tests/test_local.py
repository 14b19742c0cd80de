import random

import pytest
from hypothesis import assume, given, settings, strategies as st

from tamesymbol.errors import InsufficientPrecision, NotASubfield, ZeroInput
from tamesymbol.fields import embedding, extension, make_field
from tamesymbol.local import (EXACT, LocalElement, exhaustive_local_kernel_check, in_local_kernel,
                              local_kernel_oracle, normed_symbol, tame_symbol, tame_symbol_value,
                              valuation)

F5 = make_field(5)


def t(F):
    return LocalElement.uniformizer(F)


def const(F, c):
    return LocalElement.constant(F, c)


def test_valuation_examples():
    a = t(F5)
    b = LocalElement.exact(F5, -2, (3, 3))  # 3 t^-2 (1 + t)
    assert valuation(a) == 1 and valuation(b) == -2 and valuation(a * b) == -1


def test_zero_is_not_a_local_element():
    with pytest.raises(ZeroInput):
        LocalElement(F5, 0, (0, 1))


def test_tame_symbol_examples_f5():
    assert tame_symbol(t(F5), t(F5)) == 4
    assert tame_symbol(t(F5), const(F5, 2)) == 2
    assert tame_symbol(const(F5, 2), t(F5)) == 3


@pytest.mark.parametrize("pn", [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2), (2, 3)])
def test_steinberg_t_one_minus_t(pn):
    F = make_field(*pn)
    assert tame_symbol(t(F), t(F).one_minus()) == 1


def test_normed_symbol_examples():
    F2, F4 = make_field(2), make_field(2, 2)
    alpha = const(F4, F4.from_coeffs([0, 1]))
    assert normed_symbol(t(F4), alpha, F2) == 1
    F3, F9 = make_field(3), make_field(3, 2)
    assert normed_symbol(t(F9), const(F9, F9.generator), F3) == 2
    # d_x = 1: the norm is the identity
    assert normed_symbol(t(F5), const(F5, 3), F5).value == tame_symbol_value(t(F5), const(F5, 3))


def test_mixed_residue_fields_rejected():
    with pytest.raises(NotASubfield):
        tame_symbol(t(F5), t(make_field(5, 2)))


def test_in_local_kernel_examples():
    assert in_local_kernel(LocalElement.exact(F5, 4, (1, 1)), F5)
    assert not in_local_kernel(LocalElement.exact(F5, 4, (2,)), F5)
    F2 = make_field(2)
    assert in_local_kernel(LocalElement.exact(F2, 1, (1,)), F2)


def test_one_units_are_q_minus_1_powers():
    # (1 + t)^(1/4) exists: series root recomputed and raised back
    f = LocalElement(F5, 0, (1, 1), 12)
    # binomial series (1+t)^(1/4) mod 5 agrees with the brute-force root found by Hensel lifting
    root = [1]
    for k in range(1, 12):
        for c in range(5):
            cand = LocalElement(F5, 0, root + [c], k + 1)
            if (cand ** 4).agrees_with(f.truncate(k + 1)):
                root.append(c)
                break
    assert len(root) == 12
    assert (LocalElement(F5, 0, root, 12) ** 4).agrees_with(f)


def test_precision_bookkeeping():
    a = LocalElement(F5, 0, (1, 2, 3), 3)
    b = LocalElement(F5, 0, (1, 2, 4), 3)
    d = a - b
    assert d.valuation == 2 and d.precision == 1
    with pytest.raises(InsufficientPrecision):
        a - a
    assert (LocalElement.exact(F5, 0, (1, 1)) - LocalElement.exact(F5, 0, (1,))).valuation == 1


def test_inverse():
    a = LocalElement(F5, 3, (2, 1, 4, 3), 8)
    one = a * a.inverse()
    assert one.valuation == 0 and one.agrees_with(LocalElement(F5, 0, (1,), 8))


FIELDS = [(3, 1), (2, 2), (5, 1), (7, 1), (3, 2), (2, 3)]


def local_strategy(F, precision=5, vmax=5):
    return st.builds(
        lambda v, c0, rest: LocalElement(F, v, (c0,) + tuple(rest), precision),
        st.integers(-vmax, vmax), st.integers(1, F.q - 1),
        st.lists(st.integers(0, F.q - 1), min_size=precision - 1, max_size=precision - 1))


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_bilinear_antisymmetric(pn, data):
    F = make_field(*pn)
    f, g, h = (data.draw(local_strategy(F)) for _ in range(3))
    s = tame_symbol_value
    assert s(f * g, h) == F.mul(s(f, h), s(g, h))
    assert s(f, g * h) == F.mul(s(f, g), s(f, h))
    assert F.mul(s(f, g), s(g, f)) == 1


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_steinberg_on_exact_polynomials(pn, data):
    F = make_field(*pn)
    v = data.draw(st.integers(-4, 4))
    coeffs = data.draw(st.lists(st.integers(0, F.q - 1), min_size=1, max_size=4))
    c0 = data.draw(st.integers(1, F.q - 1))
    f = LocalElement.exact(F, v, [c0] + coeffs)
    assume(not (v == 0 and [c0] + coeffs == [1] + [0] * len(coeffs)))
    assert tame_symbol_value(f, f.one_minus()) == 1


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_unit_unit_trivial(pn, data):
    F = make_field(*pn)
    f = data.draw(local_strategy(F, vmax=0))
    g = data.draw(local_strategy(F, vmax=0))
    assert tame_symbol_value(f, g) == 1


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([(3, 1, 2), (2, 1, 2), (5, 1, 2), (2, 2, 2), (3, 1, 3)]), st.data())
def test_kernel_criterion_equals_pairing_with_probes(pnd, data):
    p, n, d = pnd
    k = make_field(p, n)
    L, emb = extension(k, d)
    f = data.draw(local_strategy(L))
    probes = [t(L)] + [const(L, u) for u in L.units()]
    paired = all(emb.norm(tame_symbol_value(f, g)) == 1 for g in probes)
    assert in_local_kernel(f, k) == paired


@pytest.mark.parametrize("q,d", [(3, 1), (5, 2)])
def test_local_kernel_oracle_examples(q, d):
    r = local_kernel_oracle(q, d, precision=16, samples=500, seed=0)
    assert r["disagreements"] == [] and r["verdict"] == "PASS"
    assert 0 < r["members"] < 500


def test_local_kernel_oracle_q2_vacuous():
    assert local_kernel_oracle(2, 2, samples=10)["verdict"] == "VACUOUS"


@pytest.mark.parametrize("q", [3, 4, 5])
def test_exhaustive_kernel_check(q):
    r = exhaustive_local_kernel_check(q, 3)
    assert r["disagreements"] == [] and r["checked"] > 0
