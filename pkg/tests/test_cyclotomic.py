import random
from math import gcd
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Poly, cyclotomic_poly, resultant, symbols

from catalan._poly import cofactor_coeffs, cyclotomic_coeffs, poly_mul, reduce_mod_phi
from catalan.cyclotomic import (
    CycRat,
    InvalidAutomorphismError,
    NotInSubfieldError,
    OrderMismatchError,
    cyc_invert,
    cyclotomic_polynomial,
    cyclotomic_unit_xi,
    embed,
    galois_apply,
    kummer_sum_identity,
    norm,
    trace,
)

X = symbols("x")


@pytest.mark.parametrize("n", list(range(1, 121)) + [210, 231, 256, 1155])
def test_phi_matches_sympy(n):
    expected = [int(c) for c in Poly(cyclotomic_poly(n, X), X).all_coeffs()[::-1]]
    assert cyclotomic_coeffs(n) == expected


@pytest.mark.parametrize("n", [1, 2, 12, 30, 105, 16002])
def test_phi_times_cofactor(n):
    assert poly_mul(cyclotomic_coeffs(n), cofactor_coeffs(n)) == [-1] + [0] * (n - 1) + [1]


def test_phi_12_example():
    assert cyclotomic_polynomial(12).coeffs == (1, 0, -1, 0, 1)


def test_reduce_against_sympy_rem():
    from sympy import rem

    rng = random.Random(7)
    for n in (3, 5, 12, 30, 105):
        for _ in range(10):
            a = [rng.randint(-50, 50) for _ in range(rng.randint(1, 3 * n))]
            got = reduce_mod_phi(a, n)
            r = rem(Poly(a[::-1], X), Poly(cyclotomic_poly(n, X), X))
            want = [int(c) for c in Poly(r, X).all_coeffs()[::-1]] if not r.is_zero else []
            want += [0] * (len(got) - len(want))
            assert got == want


def test_small_examples():
    z3 = CycRat.zeta(3)
    assert z3 * z3 == CycRat(3, [-1, -1])
    assert cyc_invert(1 - z3) == CycRat(3, [Fraction(2, 3), Fraction(1, 3)])
    prod = CycRat.one(5)
    for i in range(1, 5):
        prod = prod * (1 - CycRat.zeta(5, i))
    assert prod == 5


def test_order_mismatch():
    with pytest.raises(OrderMismatchError):
        CycRat.zeta(3) + CycRat.zeta(5)


def test_galois_rejects_non_unit():
    with pytest.raises(InvalidAutomorphismError):
        galois_apply(2, CycRat.zeta(4))


def _rand_elt(draw, n):
    k = len(cyclotomic_coeffs(n)) - 1
    nums = draw(st.lists(st.integers(-20, 20), min_size=k, max_size=k))
    den = draw(st.integers(1, 6))
    return CycRat(n, [Fraction(c, den) for c in nums])


orders = st.sampled_from([3, 4, 5, 7, 8, 9, 12, 15, 20])


@st.composite
def triple(draw):
    n = draw(orders)
    return _rand_elt(draw, n), _rand_elt(draw, n), _rand_elt(draw, n)


@settings(max_examples=60, deadline=None)
@given(triple())
def test_ring_axioms(t):
    a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == CycRat.zero(a.order)


@settings(max_examples=60, deadline=None)
@given(triple())
def test_inverse_and_norm_multiplicative(t):
    a, b, _ = t
    if a.is_zero() or b.is_zero():
        return
    assert a * cyc_invert(a) == 1
    assert norm(a * b) == norm(a) * norm(b)


@settings(max_examples=40, deadline=None)
@given(triple())
def test_norm_matches_resultant(t):
    a, _, _ = t
    n = a.order
    num = Poly(list(a.numerators)[::-1] or [0], X)
    res = resultant(Poly(cyclotomic_poly(n, X), X), num)
    assert norm(a) == Fraction(int(res), a.denominator ** (len(cyclotomic_coeffs(n)) - 1))


@settings(max_examples=40, deadline=None)
@given(triple())
def test_galois_is_field_automorphism(t):
    a, b, _ = t
    n = a.order
    for s in (u for u in range(1, n) if gcd(u, n) == 1):
        assert galois_apply(s, a * b) == galois_apply(s, a) * galois_apply(s, b)
        assert galois_apply(s, a + b) == galois_apply(s, a) + galois_apply(s, b)


def test_trace_of_zeta_is_mobius():
    assert trace(CycRat.zeta(5)) == -1
    assert trace(CycRat.zeta(4)) == 0
    assert trace(CycRat.zeta(6)) == 1


def test_embed_round_trip_and_subfield():
    z3 = CycRat.zeta(3)
    up = embed(z3, 12)
    assert up == CycRat.zeta(12, 4)
    assert embed(up, 3) == z3
    with pytest.raises(NotInSubfieldError):
        embed(CycRat.zeta(12), 6)


def test_json_round_trip():
    a = CycRat(7, [Fraction(1, 3), -2, 5])
    assert CycRat.from_json(a.to_json()) == a


def test_representation_is_canonical():
    a = CycRat(6, [2, 4, 6, 8])
    b = CycRat(6, [Fraction(4, 2), 4, 6, 8])
    assert a == b and hash(a) == hash(b)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_cyclotomic_units(p):
    for a in range(2, p):
        xi = cyclotomic_unit_xi(p, a)
        assert abs(norm(xi)) == 1
        assert galois_apply(-1, xi) == xi


@pytest.mark.parametrize("p,value", [(3, Fraction(-2, 3)), (5, -2), (7, -4), (11, -10), (101, -850)])
def test_kummer_sum(p, value):
    assert kummer_sum_identity(p) == value
    assert kummer_sum_identity(p) == Fraction(1 - p * p, 12)


def test_complex_value_diagnostic():
    import cmath

    z = CycRat.zeta(8)
    assert abs(z.complex_value() - cmath.exp(2j * cmath.pi / 8)) < 1e-12
