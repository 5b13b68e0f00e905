from itertools import product

import pytest

from catalan.finitefield import (
    FqField,
    InvalidPrimeError,
    LogOfZeroError,
    MultCharacter,
    build_field,
    char_eval,
    discrete_log,
    trace,
)
from catalan.cyclotomic import CycRat

SMALL = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (7, 2), (11, 1), (13, 1)]


def _has_root(coeffs, p):
    return any(sum(c * pow(x, i, p) for i, c in enumerate(coeffs)) % p == 0 for x in range(p))


def test_examples():
    assert build_field(7).generator.coeffs == (3,)
    F9 = build_field(3, 2)
    assert F9.modulus.coeffs == (1, 0, 1)
    assert F9.generator.coeffs == (1, 1)
    assert build_field(3).generator.coeffs == (2,)
    assert build_field(2, 2).modulus.coeffs == (1, 1, 1)


@pytest.mark.parametrize("p,f", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (7, 2), (5, 3)])
def test_modulus_is_first_irreducible(p, f):
    # for degree <= 3, irreducible <=> no root; scan in the documented order
    field = build_field(p, f)
    for low in product(range(p), repeat=f):
        cand = tuple(reversed(low)) + (1,)
        if not _has_root(cand, p):
            assert field.modulus.coeffs == cand
            return
    pytest.fail("no irreducible found")


def test_invalid_prime():
    with pytest.raises(InvalidPrimeError):
        FqField(9, 1)


@pytest.mark.parametrize("p,f", SMALL)
def test_field_axioms_brute(p, f):
    F = build_field(p, f)
    elts = F.elements()
    one, zero = F.one(), F.zero()
    for x in elts:
        assert x + zero == x and x * one == x
        if not x.is_zero():
            assert any(x * y == one for y in elts)
    # distributivity on a sample
    for x in elts[:6]:
        for y in elts[:6]:
            for z in elts[:6]:
                assert x * (y + z) == x * y + x * z


@pytest.mark.parametrize("p,f", SMALL)
def test_generator_and_logs(p, f):
    F = build_field(p, f)
    q = F.q
    seen = {F.exp(k).coeffs for k in range(q - 1)}
    assert len(seen) == q - 1
    for x in F.elements()[1:]:
        assert F.exp(discrete_log(x)) == x
    with pytest.raises(LogOfZeroError):
        F.log(F.zero())


@pytest.mark.parametrize("p,f", SMALL)
def test_trace_is_additive_and_frobenius_sum(p, f):
    F = build_field(p, f)
    elts = F.elements()
    for x in elts[:10]:
        for y in elts[:10]:
            assert trace(x + y) == (trace(x) + trace(y)) % p
        acc, cur = F.zero(), x
        for _ in range(f):
            acc = acc + cur
            cur = F.frobenius(cur)
        assert acc.coeffs == (trace(x),) + (0,) * (f - 1)
        assert F.frobenius(x) == x**p if not x.is_zero() else True


def test_characters():
    F = build_field(7)
    chi = MultCharacter(F, 2)
    assert chi.order == 3
    assert chi.sign_at_minus_one() == 1
    assert MultCharacter(F, 3).sign_at_minus_one() == -1
    assert chi * chi.inverse() == MultCharacter(F, 0)
    assert char_eval(chi, F.zero()) == CycRat.zero(6)
    assert char_eval(MultCharacter(F, 0), F.zero()) == CycRat.one(6)
    g = F.generator
    assert char_eval(chi, g) == CycRat.zeta(6, 2)
    # multiplicativity
    for x in F.elements()[1:]:
        for y in F.elements()[1:]:
            assert char_eval(chi, x * y) == char_eval(chi, x) * char_eval(chi, y)
