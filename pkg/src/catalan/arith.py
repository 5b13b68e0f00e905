"""Small integer helpers shared by the algebraic modules."""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from sympy import factorint, isprime, primerange

__all__ = [
    "is_prime",
    "primes_up_to",
    "factor",
    "totient",
    "divisors",
    "units",
    "mult_order",
    "smallest_primitive_root",
    "vp_int",
]


def is_prime(n: int) -> bool:
    return n >= 2 and bool(isprime(n))


def primes_up_to(n: int) -> list[int]:
    return list(primerange(2, n + 1)) if n >= 2 else []


@lru_cache(maxsize=4096)
def _factor_cached(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(factorint(n).items()))


def factor(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer."""
    if n < 1:
        raise ValueError("factor expects a positive integer")
    return dict(_factor_cached(n))


@lru_cache(maxsize=4096)
def totient(n: int) -> int:
    r = n
    for pr in factor(n):
        r = r // pr * (pr - 1)
    return r


@lru_cache(maxsize=4096)
def divisors(n: int) -> tuple[int, ...]:
    ds = [1]
    for pr, e in factor(n).items():
        ds = [d * pr**k for d in ds for k in range(e + 1)]
    return tuple(sorted(ds))


@lru_cache(maxsize=4096)
def units(m: int) -> tuple[int, ...]:
    """Sorted residues in [0, m) coprime to m (for m = 1 this is (0,))."""
    if m == 1:
        return (0,)
    return tuple(t for t in range(1, m) if gcd(t, m) == 1)


def mult_order(a: int, m: int) -> int:
    """Multiplicative order of a modulo m, using the factorization of phi(m)."""
    if m == 1:
        return 1
    if gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit modulo {m}")
    order = totient(m)
    for pr, e in factor(order).items() if order > 1 else ():
        for _ in range(e):
            if pow(a, order // pr, m) == 1:
                order //= pr
            else:
                break
    return order


def smallest_primitive_root(p: int) -> int:
    """Smallest generator of (Z/pZ)^* for a prime p."""
    if p == 2:
        return 1
    primes = list(factor(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in primes):
            return g
    raise ArithmeticError(f"no primitive root found modulo {p}")


def vp_int(n: int, p: int) -> float | int:
    """p-adic valuation of an integer; infinity for zero."""
    if n == 0:
        return float("inf")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k
