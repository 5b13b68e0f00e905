import random

import pytest

from catalan.arith import divisors, units, vp_int
from catalan.cyclotomic import CycRat, norm
from catalan.finitefield import MultCharacter, build_field
from catalan.gauss import gauss_sum
from catalan.padic import (
    INF,
    DerivativeVanishesError,
    RamifiedPrimeError,
    digit_profile,
    hensel_lift,
    pi_expand,
    pi_reassemble,
    prime_above,
    ramified_context,
    ramified_valuation,
    stickelberger_congruence_check,
    stickelberger_relation_check,
    unramified_valuation,
)

FIELDS = [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (7, 2), (11, 1), (13, 1)]


def test_hensel_examples():
    assert hensel_lift([-2, 0, 1], 3, 2, 7) == 10
    assert hensel_lift([-5, 1], 5, 6, 7) == 5
    r = hensel_lift([-2, 0, 1], 3, 20, 7)
    assert (r * r - 2) % 7**20 == 0
    with pytest.raises(DerivativeVanishesError):
        hensel_lift([0, 0, 1], 0, 4, 7)


def test_prime_above_examples():
    P = prime_above(7, 3)
    assert P.residue_root() == (2,)
    assert prime_above(2, 7).f == 3
    with pytest.raises(RamifiedPrimeError):
        prime_above(3, 6)


def test_root_is_primitive_mth_root():
    P = prime_above(11, 5, K=12)
    ring = P.ring()
    assert ring.pow(P.root, 5) == ring.elt(1)
    assert ring.pow(P.root, 1) != ring.elt(1)


def _all_primes(l, m):
    seen, out = set(), []
    for t in units(m):
        P = prime_above(l, m, t)
        key = frozenset(t * pow(l, j, m) % m for j in range(P.f))
        if key not in seen:
            seen.add(key)
            out.append(P)
    return out


@pytest.mark.parametrize("l,m", [(7, 3), (2, 7), (3, 8), (11, 5), (13, 12), (5, 7)])
def test_valuations_sum_to_norm(l, m):
    rng = random.Random(l * 100 + m)
    primes = _all_primes(l, m)
    assert sum(P.f for P in primes) == len(units(m))
    for _ in range(15):
        a = CycRat(m, [rng.randint(-30, 30) for _ in range(m)]) * l ** rng.randint(0, 2)
        if a.is_zero():
            continue
        total = sum(P.f * unramified_valuation(a, P) for P in primes)
        n = norm(a)
        assert total == vp_int(n.numerator, l) - vp_int(n.denominator, l)


def test_unramified_basics():
    P = prime_above(7, 3)
    assert unramified_valuation(CycRat.from_rational(3, 49), P) == 2
    assert unramified_valuation(CycRat.zeta(3), P) == 0
    assert unramified_valuation(CycRat.zero(3), P) == INF


def test_pi_expansion_round_trip():
    ctx = ramified_context(5, 4)
    rng = random.Random(3)
    for _ in range(10):
        a = CycRat(ctx.order, [rng.randint(-9, 9) for _ in range(ctx.order)])
        assert pi_reassemble(pi_expand(a, ctx), ctx) == a
    assert ramified_valuation(ctx.pi(), ctx) == 1
    assert ramified_valuation(CycRat.from_rational(ctx.order, 5), ctx) == 4


def test_ramified_valuations_sum_to_norm():
    p, m = 7, 6
    ctxs = [ramified_context(p, m, t, 1) for t in (1, 5)]
    rng = random.Random(0)
    for _ in range(15):
        a = CycRat(p * m, [rng.randint(-20, 20) for _ in range(12)])
        if a.is_zero():
            continue
        n = norm(a)
        assert sum(ramified_valuation(a, c) for c in ctxs) == vp_int(n.numerator, p) - vp_int(n.denominator, p)


def test_digit_profile():
    prof = digit_profile(5, 3, 2)
    assert prof.digits == (2, 1) and prof.s == 3 and prof.gamma == 2
    assert prof.fractional_identity


@pytest.mark.parametrize("p,f", FIELDS[:6])
def test_congruence(p, f):
    for a in range(p**f - 1):
        assert stickelberger_congruence_check(p, f, a)


def test_wrong_character_breaks_congruence():
    # omega must be the inverse Teichmuller character; chi_1 gives other valuations
    p = 7
    F = build_field(p)
    ctx = ramified_context(p, 6, 1, 1)
    vals = [ramified_valuation(gauss_sum(F, MultCharacter(F, a)), ctx) for a in range(6)]
    assert vals != [digit_profile(a, p, 1).s for a in range(6)]


@pytest.mark.parametrize("p,f", FIELDS)
def test_relation(p, f):
    for m in divisors(p**f - 1):
        if m > 1:
            assert stickelberger_relation_check(p, f, m)
