import mpmath
import pytest

from catalan.arith import primes_up_to
from catalan.classnum import KNOWN_H_MINUS, fp_polynomial, fp_value, h_minus, minus_product, primitive_root
from catalan.cyclotomic import CycRat


def _bernoulli_h_minus(p):
    """h_p^- = 2p prod_{chi odd} (-B_{1,chi} / 2), in high-precision floats."""
    g = primitive_root(p)
    logs = {}
    cur = 1
    for k in range(p - 1):
        logs[cur] = k
        cur = cur * g % p
    n = p - 1
    with mpmath.workdps(80):
        total = mpmath.mpc(2 * p)
        for j in range(1, n, 2):  # odd characters: chi(g) = zeta^j with j odd
            b1 = mpmath.fsum(a * mpmath.expjpi(2 * mpmath.mpf(j * logs[a]) / n) for a in range(1, p)) / p
            total *= -b1 / 2
        return int(mpmath.nint(total.real)), abs(total.imag)


@pytest.mark.parametrize("p,g", [(3, 2), (5, 2), (7, 3), (23, 5), (41, 6)])
def test_primitive_root(p, g):
    assert primitive_root(p) == g


def test_fp_polynomials():
    assert fp_polynomial(3).coeffs == (0, 2, 1)
    assert fp_polynomial(5).coeffs == (0, 2, 4, 3, 1)
    assert fp_polynomial(7).coeffs == (0, 3, 2, 6, 4, 5, 1)


def test_intermediate_values():
    assert fp_value(5, 1) == CycRat(4, [-3, -1])
    assert minus_product(3) == -1


@pytest.mark.parametrize("p", [p for p in primes_up_to(47) if p > 2])
def test_table(p):
    assert h_minus(p) == KNOWN_H_MINUS[p]


@pytest.mark.parametrize("p", [p for p in primes_up_to(101) if p > 2])
def test_against_bernoulli_oracle(p):
    value, imag = _bernoulli_h_minus(p)
    assert imag < 1e-30
    assert h_minus(p) == value


def test_large_cases():
    assert h_minus(139) == 3**2 * 47**2 * 277**2 * 967 * 1188961909
    assert h_minus(211) == (3**2 * 7**2 * 41 * 71 * 181 * 281**2 * 421 * 1051 * 12251
                            * 113981701 * 4343510221)


def test_rejects_non_odd_prime():
    for bad in (2, 9, 1):
        with pytest.raises(ValueError):
            h_minus(bad)
