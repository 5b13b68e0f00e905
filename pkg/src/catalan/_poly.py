"""Dense integer polynomial kernel.

Polynomials are plain lists of ints, lowest degree first.  Products go
through Kronecker substitution: both operands are packed into a single big
integer, multiplied once by GMP, and unpacked.  Reduction modulo the n-th
cyclotomic polynomial uses the reversed power series of 1/Phi_n, which is
available in closed form because Phi_n is palindromic for n >= 2.
"""

from __future__ import annotations

from functools import lru_cache

import gmpy2
import numpy as np

from .arith import divisors, factor, totient

__all__ = [
    "strip",
    "poly_add",
    "poly_sub",
    "poly_mul",
    "poly_mul_low",
    "poly_divmod_exact",
    "cyclotomic_coeffs",
    "cofactor_coeffs",
    "reduce_cyclic",
    "reduce_mod_phi",
]


def strip(a: list[int]) -> list[int]:
    """Drop leading (high-degree) zeros in place and return the list."""
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return strip(out)


def poly_sub(a: list[int], b: list[int]) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return strip(out)


def _maxabs(a: list[int]) -> int:
    return max(max(a), -min(a))


_SMALL = 1 << 62


def _pack(a: list[int], nbytes: int) -> int:
    """Pack a signed coefficient list as sum a_i 2^(8 nbytes i)."""
    if nbytes <= 7 and -_SMALL < min(a) and max(a) < _SMALL:
        arr = np.array(a, dtype=np.int64)
        pos = np.where(arr > 0, arr, 0).astype("<u8").view(np.uint8).reshape(-1, 8)[:, :nbytes]
        neg = np.where(arr < 0, -arr, 0).astype("<u8").view(np.uint8).reshape(-1, 8)[:, :nbytes]
        return int.from_bytes(pos.tobytes(), "little") - int.from_bytes(neg.tobytes(), "little")
    pos = b"".join((c if c > 0 else 0).to_bytes(nbytes, "little") for c in a)
    neg = b"".join((-c if c < 0 else 0).to_bytes(nbytes, "little") for c in a)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


@lru_cache(maxsize=256)
def _offset(nbytes: int, count: int) -> int:
    half = (1 << (8 * nbytes - 1)).to_bytes(nbytes, "little")
    return int.from_bytes(half * count, "little")


def _unpack(value: int, nbytes: int, count: int) -> list[int]:
    shifted = value + _offset(nbytes, count)
    raw = shifted.to_bytes(nbytes * count, "little")
    half = 1 << (8 * nbytes - 1)
    if nbytes <= 7:
        buf = np.zeros((count, 8), dtype=np.uint8)
        buf[:, :nbytes] = np.frombuffer(raw, dtype=np.uint8).reshape(count, nbytes)
        vals = buf.view("<u8").reshape(count).astype(np.int64) - half
        return vals.tolist()
    fb = int.from_bytes
    return [fb(raw[i:i + nbytes], "little") - half for i in range(0, nbytes * count, nbytes)]


def poly_mul(a: list[int], b: list[int]) -> list[int]:
    """Exact product of integer polynomials."""
    if not a or not b:
        return []
    if len(a) == 1:
        c = a[0]
        return strip([c * x for x in b])
    if len(b) == 1:
        c = b[0]
        return strip([c * x for x in a])
    bound = _maxabs(a) * _maxabs(b) * min(len(a), len(b))
    if bound == 0:
        return []
    nbytes = (bound.bit_length() + 2 + 7) // 8
    count = len(a) + len(b) - 1
    prod = gmpy2.mpz(_pack(a, nbytes)) * gmpy2.mpz(_pack(b, nbytes))
    return strip(_unpack(int(prod), nbytes, count))


def poly_mul_low(a: list[int], b: list[int], k: int) -> list[int]:
    """Product truncated modulo x^k."""
    return strip(poly_mul(a[:k], b[:k])[:k])


def _mul_xd_minus_1(a: list[int], d: int) -> list[int]:
    out = [0] * (len(a) + d)
    for i, c in enumerate(a):
        out[i + d] += c
        out[i] -= c
    return out


def _div_xd_minus_1(a: list[int], d: int) -> list[int]:
    """Exact division by x^d - 1; raises if the remainder is nonzero."""
    n = len(a)
    if n <= d:
        if any(a):
            raise ArithmeticError("inexact division by x^d - 1")
        return []
    q = [0] * (n - d)
    for i in range(n - d):
        q[i] = (q[i - d] if i >= d else 0) - a[i]
    # a_i = q_{i-d} - q_i must also hold for the top d coefficients
    for i in range(n - d, n):
        if a[i] != (q[i - d] if i >= d else 0):
            raise ArithmeticError("inexact division by x^d - 1")
    return q


def _mobius(n: int) -> int:
    f = factor(n) if n > 1 else {}
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def _binomial_quotient(n: int, exclude_top: bool) -> list[int]:
    """prod_{d|n} (x^d - 1)^{e_d} via sparse exact divisions.

    With exclude_top False this is Phi_n (e_d = mu(n/d)); with it True the
    factor for d = n cancels against x^n - 1, giving Psi_n = (x^n - 1) / Phi_n.
    """
    ups, downs = [], []
    for d in divisors(n):
        mu = _mobius(n // d)
        if exclude_top:
            mu = -mu
            if d == n:
                mu = 0
        if mu == 1:
            ups.append(d)
        elif mu == -1:
            downs.append(d)
    poly = [1]
    for d in ups:
        poly = _mul_xd_minus_1(poly, d)
    for d in downs:
        poly = _div_xd_minus_1(poly, d)
    return strip(poly)


@lru_cache(maxsize=512)
def _phi(n: int) -> tuple[int, ...]:
    if n == 1:
        return (-1, 1)
    return tuple(_binomial_quotient(n, exclude_top=False))


@lru_cache(maxsize=512)
def _psi(n: int) -> tuple[int, ...]:
    if n == 1:
        return (1,)
    return tuple(_binomial_quotient(n, exclude_top=True))


def cyclotomic_coeffs(n: int) -> list[int]:
    return list(_phi(n))


def cofactor_coeffs(n: int) -> list[int]:
    """Coefficients of (x^n - 1) / Phi_n, the product of Phi_d over proper divisors."""
    return list(_psi(n))


def poly_divmod_exact(a: list[int], b: list[int]) -> list[int]:
    """Quotient a / b for monic b, asserting zero remainder (schoolbook)."""
    if not b or b[-1] != 1:
        raise ValueError("divisor must be monic")
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        if any(a):
            raise ArithmeticError("inexact polynomial division")
        return []
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            q[i - db] = c
            for j, bj in enumerate(b):
                a[i - db + j] -= c * bj
    if any(a[:db]):
        raise ArithmeticError("inexact polynomial division")
    return strip(q)


def reduce_cyclic(a: list[int], n: int) -> list[int]:
    """Fold a polynomial modulo x^n - 1 into a list of length n."""
    if len(a) <= n:
        return list(a) + [0] * (n - len(a))
    out = list(a[:n])
    for start in range(n, len(a), n):
        for i, c in enumerate(a[start:start + n]):
            out[i] += c
    return out


def reduce_mod_phi(a: list[int], n: int) -> list[int]:
    """Remainder of a modulo Phi_n, as a list of exactly phi(n) ints."""
    deg_phi = totient(n)
    if n == 1:
        return [sum(a)]
    if len(a) > n:
        a = reduce_cyclic(a, n)
    a = strip(list(a))
    if len(a) <= deg_phi:
        return a + [0] * (deg_phi - len(a))
    dq = len(a) - 1 - deg_phi
    k = dq + 1
    # reversed quotient = rev(a) * (1 / Phi_n) mod x^k, and 1/Phi_n = -Psi_n mod x^n
    rev_a = a[::-1][:k]
    inv = [-c for c in _psi(n)[:k]]
    rq = poly_mul_low(rev_a, inv, k)
    rq += [0] * (k - len(rq))
    quot = rq[::-1]
    low = poly_mul_low(quot, list(_phi(n)), deg_phi)
    out = [a[i] - (low[i] if i < len(low) else 0) for i in range(deg_phi)]
    return out
