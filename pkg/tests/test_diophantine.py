import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import factorint
from sympy.solvers.diophantine.diophantine import diop_DN

from catalan.diophantine import (
    INF,
    VERDICTS,
    InvalidDError,
    PellSolution,
    binom_valuation_bound,
    brute_catalan,
    cassels_decomposition_check,
    combinatorial_count_check,
    eliminate_all,
    eliminate_pair,
    lift_congruence_mod_q2,
    pell_fundamental,
    pell_power,
    petit_lemme_check,
    power_gap_identity,
    pythagorean_generate,
    stoermer_scan,
    vp,
    vp_factorial,
    wieferich_pair_check,
)
from catalan.diophantine import _mod_q2_cases

EULER = [(-3, 2, 2, 3), (3, 2, 2, 3)]


def _naive_catalan(x_max, e_max, prime_only):
    """Hash-join over full signed power tables."""
    exps = [e for e in range(2, e_max + 1) if not prime_only or all(e % d for d in range(2, e))]
    powers = {}
    for base in range(2, x_max + 1):
        for s in (base, -base):
            for e in exps:
                powers.setdefault(s**e, []).append((s, e))
    out = set()
    for val, reps in powers.items():
        for y, n in powers.get(val - 1, ()):
            for x, m in reps:
                out.add((x, y, m, n))
    return sorted(out)


def test_vp():
    assert vp(0, 5) == INF
    assert vp(12, 2) == 2
    assert vp(3**7 * 10, 3) == 7
    assert vp(Fraction(9, 4), 2) == -2


@pytest.mark.parametrize("p,n,v", [(2, 0, 0), (2, 10, 8), (3, 9, 4), (5, 1000, 249)])
def test_vp_factorial(p, n, v):
    assert vp_factorial(p, n) == v
    assert v == vp(math.factorial(n), p)


def test_binom_valuation_bound():
    assert binom_valuation_bound(3, 5, 2, 4)
    assert binom_valuation_bound(5, 2, 1, 4).rhs == INF  # m/n = 2 is in [0, r-1]
    assert binom_valuation_bound(7, 3, 4, 1).lhs == 0
    rng = random.Random(2)
    for _ in range(300):
        p = rng.choice([2, 3, 5, 7])
        n = rng.choice([k for k in range(1, 30) if k % p])
        assert binom_valuation_bound(p, rng.randint(-200, 200), n, rng.randint(1, 12))


def test_pell_examples():
    assert (pell_fundamental(2).x, pell_fundamental(2).y) == (3, 2)
    assert (pell_fundamental(3).x, pell_fundamental(3).y) == (2, 1)
    assert (pell_fundamental(61).x, pell_fundamental(61).y) == (1766319049, 226153980)
    assert pell_power(pell_fundamental(2), 2) == PellSolution(2, 17, 12, 2)
    with pytest.raises(InvalidDError):
        pell_fundamental(49)


@pytest.mark.parametrize("D", [d for d in range(2, 101) if math.isqrt(d) ** 2 != d])
def test_pell_against_sympy(D):
    sol = pell_fundamental(D)
    assert sol.x**2 - D * sol.y**2 == 1
    expected = min((int(x), int(y)) for x, y in diop_DN(D, 1))
    assert (sol.x, sol.y) == expected
    if sol.y <= 2000:  # direct minimality scan where it is cheap
        for y in range(1, sol.y):
            x = math.isqrt(1 + D * y * y)
            assert x * x != 1 + D * y * y
    base = sol
    for k in range(2, 6):
        assert pell_power(base, k).y % base.y == 0


@pytest.mark.parametrize("D", [d for d in range(2, 51) if math.isqrt(d) ** 2 != d])
def test_stoermer(D):
    ks = stoermer_scan(D, 8)
    assert set(ks) <= {1}
    # cross-check index 1 with an explicit factorization
    y1 = pell_fundamental(D).y
    assert (1 in ks) == all(D % r == 0 for r in factorint(y1))


def test_petit_lemme_examples():
    rep = petit_lemme_check(5, 2, 3, -1)
    assert rep and rep.lhs == 3
    with pytest.raises(ValueError):
        petit_lemme_check(4, 2, 3, -1)
    with pytest.raises(ValueError):
        petit_lemme_check(3, 2, 4, 1)


@settings(max_examples=300, deadline=None)
@given(st.integers(-10**4, 10**4), st.integers(-10**4, 10**4), st.integers(1, 25), st.sampled_from([1, -1]))
def test_petit_lemme_property(x, y, n, sign):
    if math.gcd(x, y) != 1 or x + sign * y == 0 or (sign == 1 and n % 2 == 0):
        return
    assert petit_lemme_check(x, y, n, sign)


def test_cassels_examples():
    rep = cassels_decomposition_check(7, 3, 2)
    assert rep and rep.witness == {"k": 1, "u": 0}
    rep = cassels_decomposition_check(4, 1, 3)
    assert rep and rep.lhs == 21
    rep = cassels_decomposition_check(5, 2, 3)
    assert rep and rep.lhs == 39 and rep.witness["q_exactly_divides"]


@settings(max_examples=300, deadline=None)
@given(st.integers(-10**4, 10**4), st.integers(-10**4, 10**4), st.sampled_from([2, 3, 5, 7, 11, 13]))
def test_cassels_property(a, b, q):
    if a == b or a == 0 or b == 0 or math.gcd(a, b) != 1:
        return
    assert cassels_decomposition_check(a, b, q)


def test_pythagorean():
    assert pythagorean_generate(2, 1) == (3, 4, 5)
    assert pythagorean_generate(3, 2) == (5, 12, 13)
    with pytest.raises(ValueError):
        pythagorean_generate(3, 1)


def test_power_gap():
    reps = power_gap_identity(5)
    assert (257, 255) in reps and (32, 0) in reps
    assert power_gap_identity(1) == [(2, 0)]


@pytest.mark.parametrize("s,k", [(0, 3), (2, 2), (6, 4), (7, 3), (9, 2), (10, 5), (8, 3)])
def test_combinatorial_count(s, k):
    rep = combinatorial_count_check(s, k)
    assert rep
    if s >= 6 and k >= 2 and s + 2 * k >= 13:
        assert rep.witness["inequality"]


def test_brute_catalan_small_against_naive():
    for prime_only in (True, False):
        assert brute_catalan(60, 8, prime_exponents=prime_only) == _naive_catalan(60, 8, prime_only)
    assert brute_catalan(100, 10) == EULER
    assert brute_catalan(100, 2) == []


def test_brute_catalan_desk_scale():
    assert brute_catalan(10**6, 40) == EULER


def test_wieferich():
    assert wieferich_pair_check(47, 139).lhs == 7507
    assert wieferich_pair_check(139, 47).lhs == 1035
    assert not wieferich_pair_check(3, 5)
    assert wieferich_pair_check(83, 4871)  # a genuine double pair


@pytest.mark.parametrize("q", [3, 5, 7, 11, 13])
def test_mod_q2_lift_synthetic(q):
    hits = 0
    for r in range(1, q * q):
        if r % q == 0:
            continue
        rep = lift_congruence_mod_q2(r, q)
        assert rep
        hits += rep.witness["hypotheses"]
    assert hits == 1  # only r = 1 satisfies both hypotheses


def test_mod_q2_case_split():
    # synthetic pairs reaching the last step; p = 1 + 2 q^2 with q = 3 is 19
    case = _mod_q2_cases(19, 3)
    assert case["reason"].startswith("q = 3")
    assert _mod_q2_cases(1 + 2 * 25, 5)["reason"] == "p = 0 mod 3"
    assert _mod_q2_cases(1 + 49, 7)["reason"] == "parity"


def test_eliminate_examples():
    assert eliminate_pair(3, 5).verdict == "small-prime"
    v = eliminate_pair(47, 139)
    assert v.verdict == "wieferich-fail"
    assert v.witness["p^(q-1) mod q^2"] == 7507 and v.witness["q^(p-1) mod p^2"] == 1035
    assert eliminate_pair(83, 4871).verdict == "congruence-fail"


def test_eliminate_total_small():
    verdicts = eliminate_all(500)
    assert len(verdicts) == 94 * 93
    assert {v.verdict for v in verdicts} <= set(VERDICTS)
