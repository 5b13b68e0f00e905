"""Exact arithmetic in the cyclotomic fields Q(zeta_n).

Elements are stored as an integer numerator vector over the power basis
1, zeta, ..., zeta^(phi(n)-1) together with one positive common denominator.
The pair is kept gcd-normalized, so every field element has exactly one
representation and equality is plain tuple comparison.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from . import _poly
from .arith import is_prime, totient, units

__all__ = [
    "CycRat",
    "IntPoly",
    "OrderMismatchError",
    "NotInSubfieldError",
    "InvalidAutomorphismError",
    "cyclotomic_polynomial",
    "cyc_add",
    "cyc_sub",
    "cyc_neg",
    "cyc_mul",
    "cyc_invert",
    "galois_apply",
    "norm",
    "trace",
    "embed",
    "cyclotomic_unit_xi",
    "kummer_sum_identity",
]

RationalLike = int | Fraction


class OrderMismatchError(ValueError):
    """Operands live in different cyclotomic fields."""


class NotInSubfieldError(ValueError):
    """Down-embedding requested for an element outside the subfield."""


class InvalidAutomorphismError(ValueError):
    """Galois index not coprime to the field order."""


class IntPoly:
    """Integer polynomial with high-degree zeros stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        self.coeffs: tuple[int, ...] = tuple(_poly.strip([int(c) for c in coeffs]))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(_poly.poly_mul(list(self.coeffs), list(other.coeffs)))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c == 0:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if i and abs(c) == 1:
                terms.append(("-" if c < 0 else "+") + mono)
            else:
                terms.append(f"{c:+d}" + ("" if i == 0 else "*" + mono))
        body = " ".join(terms).lstrip("+") if terms else "0"
        return f"IntPoly({body})"


class CycRat:
    """Element of Q(zeta_n) reduced modulo Phi_n.

    ``CycRat(n, coeffs)`` accepts any sequence of ints or Fractions in the
    power basis of arbitrary length; it is reduced and normalized.
    """

    __slots__ = ("_n", "_num", "_den", "_hash")

    def __init__(self, order: int, coeffs: Sequence[RationalLike] = ()):
        if order < 1:
            raise ValueError("cyclotomic order must be positive")
        den = 1
        for c in coeffs:
            if isinstance(c, Fraction):
                den = den * c.denominator // gcd(den, c.denominator)
        num = [int(c * den) if isinstance(c, Fraction) else int(c) * den for c in coeffs]
        self._set(order, _poly.reduce_mod_phi(num, order), den)

    def _set(self, order: int, num: list[int], den: int) -> None:
        g = gcd(den, *num) if num else den
        if g != 1:
            num = [c // g for c in num]
            den //= g
        self._n = order
        self._num = tuple(num)
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, order: int, num: list[int], den: int = 1, reduced: bool = False) -> "CycRat":
        obj = cls.__new__(cls)
        if not reduced:
            num = _poly.reduce_mod_phi(num, order)
        obj._set(order, num, den)
        return obj

    @classmethod
    def from_cyclic(cls, order: int, num: Sequence[int], den: int = 1) -> "CycRat":
        """Element given by integer coefficients on zeta^0..zeta^(k-1), any k."""
        return cls._raw(order, list(num), den)

    @classmethod
    def zero(cls, order: int) -> "CycRat":
        return cls._raw(order, [0] * totient(order), 1, reduced=True)

    @classmethod
    def one(cls, order: int) -> "CycRat":
        return cls.from_rational(order, 1)

    @classmethod
    def from_rational(cls, order: int, r: RationalLike) -> "CycRat":
        r = Fraction(r)
        num = [0] * totient(order)
        num[0] = r.numerator
        return cls._raw(order, num, r.denominator, reduced=True)

    @classmethod
    def zeta(cls, order: int, k: int = 1) -> "CycRat":
        """zeta_order ** k."""
        k %= order
        num = [0] * (k + 1)
        num[k] = 1
        return cls._raw(order, num)

    # -- accessors ---------------------------------------------------------

    @property
    def order(self) -> int:
        return self._n

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_integral(self) -> bool:
        """True when all power-basis coefficients are integers."""
        return self._den == 1

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self._num[0], self._den)

    def to_json(self) -> dict:
        return {"order": self._n, "coeffs": [[c.numerator, c.denominator] for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "CycRat":
        return cls(int(data["order"]), [Fraction(int(a), int(b)) for a, b in data["coeffs"]])

    def complex_value(self, k: int = 1) -> complex:
        """Diagnostic only: image under zeta -> exp(2 pi i k / n)."""
        z = cmath.exp(2j * cmath.pi * k / self._n)
        acc = 0j
        for c in reversed(self._num):
            acc = acc * z + c
        return acc / self._den

    # -- ring operations ---------------------------------------------------

    def _check(self, other: "CycRat") -> None:
        if self._n != other._n:
            raise OrderMismatchError(f"orders {self._n} and {other._n} differ; embed first")

    def _coerce(self, other) -> "CycRat":
        if isinstance(other, CycRat):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return CycRat.from_rational(self._n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self._den, other._den
        num = [a * d2 + b * d1 for a, b in zip(self._num, other._num)]
        return CycRat._raw(self._n, num, d1 * d2, reduced=True)

    __radd__ = __add__

    def __neg__(self) -> "CycRat":
        return CycRat._raw(self._n, [-c for c in self._num], self._den, reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            r = Fraction(other)
            return CycRat._raw(self._n, [c * r.numerator for c in self._num], self._den * r.denominator, reduced=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prod = _poly.poly_mul(list(self._num), list(other._num))
        return CycRat._raw(self._n, prod, self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * cyc_invert(other)

    def __rtruediv__(self, other):
        return cyc_invert(self) * other

    def __pow__(self, k: int) -> "CycRat":
        if k < 0:
            return cyc_invert(self) ** (-k)
        result = CycRat.one(self._n)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, CycRat):
            return self._n == other._n and self._den == other._den and self._num == other._num
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, self._num, self._den))
        return self._hash

    def __repr__(self) -> str:
        terms = [f"{c}*z^{i}" for i, c in enumerate(self.coeffs) if c]
        return f"CycRat({self._n}: {' + '.join(terms) if terms else '0'})"


# ---------------------------------------------------------------------------


def cyclotomic_polynomial(n: int) -> IntPoly:
    """Phi_n, by exact division of x^n - 1 by the lower cyclotomic factors."""
    if n < 1:
        raise ValueError("n must be positive")
    return IntPoly(_poly.cyclotomic_coeffs(n))


def cyc_add(a: CycRat, b: CycRat) -> CycRat:
    a._check(b)
    return a + b


def cyc_sub(a: CycRat, b: CycRat) -> CycRat:
    a._check(b)
    return a - b


def cyc_neg(a: CycRat) -> CycRat:
    return -a


def cyc_mul(a: CycRat, b: CycRat) -> CycRat:
    a._check(b)
    return a * b


def _fpoly_strip(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fpoly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [Fraction(0)] * max(0, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / lead
        if c:
            q[i - db] = c
            for j, bj in enumerate(b):
                a[i - db + j] -= c * bj
    return q, _fpoly_strip(a[:db])


def _fpoly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def cyc_invert(a: CycRat) -> CycRat:
    """Inverse via the extended Euclidean algorithm against Phi_n over Q."""
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero in a cyclotomic field")
    n = a.order
    if a.is_rational():
        return CycRat.from_rational(n, 1 / a.rational_value())
    # track s with s * A = r (mod Phi_n)
    r0 = [Fraction(c) for c in _poly.cyclotomic_coeffs(n)]
    r1 = _fpoly_strip([Fraction(c) for c in a.numerators])
    s0: list[Fraction] = []
    s1 = [Fraction(1)]
    while len(r1) > 1:
        q, r2 = _fpoly_divmod(r0, r1)
        qs = _fpoly_mul(q, s1)
        s2 = [(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)
              for i in range(max(len(s0), len(qs)))]
        r0, r1, s0, s1 = r1, r2, s1, _fpoly_strip(s2)
    if not r1:
        raise ArithmeticError("element shares a factor with Phi_n")
    # s1 * numerators = r1[0], so a^-1 = den * s1 / r1[0]
    scale = Fraction(a.denominator) / r1[0]
    return CycRat(n, [c * scale for c in s1])


def galois_apply(t: int, a: CycRat) -> CycRat:
    """sigma_t: zeta_n -> zeta_n^t."""
    n = a.order
    if gcd(t, n) != 1:
        raise InvalidAutomorphismError(f"gcd({t}, {n}) != 1")
    t %= n
    if t == 1 % n:
        return a
    out = [0] * n
    for i, c in enumerate(a.numerators):
        if c:
            out[i * t % n] += c
    return CycRat._raw(n, out, a.denominator)


def _group_product(a: CycRat, gens: Iterable[int] | None = None) -> CycRat:
    """prod over t in the subgroup of (Z/n)^* generated by gens (default: all) of sigma_t(a)."""
    n = a.order
    group = set(units(n)) if n > 1 else {0}
    sub = {1 % n}
    acc = a
    candidates = sorted(group) if gens is None else list(gens)
    for g in candidates:
        g %= n
        if g in sub:
            continue
        # smallest k with g^k in the current subgroup
        k, h = 1, g
        while h not in sub:
            h = h * g % n
            k += 1
        acc = _orbit_product(acc, g, k)
        new = set(sub)
        power = 1
        for _ in range(k):
            power = power * g % n
            new |= {s * power % n for s in sub}
        sub = new
        if gens is None and len(sub) == len(group):
            break
    return acc


def _orbit_product(x: CycRat, g: int, k: int) -> CycRat:
    """prod_{j<k} sigma_{g^j}(x) by binary splitting."""
    n = x.order
    if k == 1:
        return x
    half = _orbit_product(x, g, k // 2)
    shift = pow(g, k // 2, n)
    acc = half * galois_apply(shift, half)
    if k % 2:
        acc = x * galois_apply(g, acc)
    return acc


def norm(a: CycRat) -> Fraction:
    """N_{Q(zeta_n)/Q}(a) as the product of all Galois conjugates."""
    n = a.order
    if n <= 2:
        return a.rational_value()
    value = _group_product(a)
    return value.rational_value()


def trace(a: CycRat) -> Fraction:
    total = CycRat.zero(a.order)
    for t in units(a.order):
        total = total + galois_apply(t, a)
    return total.rational_value()


def _embed_up(a: CycRat, n: int) -> CycRat:
    d = a.order
    step = n // d
    num = [0] * (step * (len(a.numerators) - 1) + 1) if a.numerators else [0]
    for i, c in enumerate(a.numerators):
        num[i * step] = c
    return CycRat._raw(n, num, a.denominator)


@lru_cache(maxsize=256)
def _down_solver(d: int, n: int) -> tuple[tuple[int, ...], tuple[tuple[Fraction, ...], ...]]:
    """Pivot rows of the embedding matrix Q(zeta_d) -> Q(zeta_n) and their inverse."""
    fd = totient(d)
    cols = [_embed_up(CycRat.zeta(d, i), n).numerators for i in range(fd)]
    rows = len(cols[0])
    # greedy pivot row choice by fraction Gaussian elimination on the transpose
    mat = [[Fraction(cols[j][r]) for j in range(fd)] for r in range(rows)]
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    for r in range(rows):
        v = list(mat[r])
        for b, piv in basis:
            if v[piv]:
                f = v[piv] / b[piv]
                v = [x - f * y for x, y in zip(v, b)]
        nz = next((i for i, x in enumerate(v) if x), None)
        if nz is not None:
            basis.append((v, nz))
            chosen.append(r)
            if len(chosen) == fd:
                break
    square = [mat[r] for r in chosen]
    inv = _fmat_inverse(square)
    return tuple(chosen), tuple(tuple(row) for row in inv)


def _fmat_inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    k = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(k)] for i, row in enumerate(m)]
    for col in range(k):
        piv = next(r for r in range(col, k) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        lead = aug[col][col]
        aug[col] = [x / lead for x in aug[col]]
        for r in range(k):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[k:] for row in aug]


def embed(a: CycRat, new_order: int) -> CycRat:
    """Move a between Q(zeta_d) and Q(zeta_n) along zeta_d -> zeta_n^(n/d).

    Up-embedding needs d | n.  Down-embedding (n | d) solves for the subfield
    representation and checks that it reproduces a.
    """
    d = a.order
    if new_order == d:
        return a
    if new_order % d == 0:
        return _embed_up(a, new_order)
    if d % new_order == 0:
        pivots, inv = _down_solver(new_order, d)
        y = [a.numerators[r] for r in pivots]
        cand = CycRat(new_order, [sum((row[j] * y[j] for j in range(len(y))), Fraction(0)) for row in inv])
        cand = cand * Fraction(1, a.denominator)
        if _embed_up(cand, d) != a:
            raise NotInSubfieldError(f"element of order {d} is not in Q(zeta_{new_order})")
        return cand
    # general case through the compositum / intersection
    common = gcd(d, new_order)
    return embed(embed(a, common), new_order)


def cyclotomic_unit_xi(p: int, a: int) -> CycRat:
    """xi_a = zeta_p^((1-a)/2) (zeta_p^a - 1) / (zeta_p - 1), a real unit."""
    if not (is_prime(p) and p % 2):
        raise ValueError("p must be an odd prime")
    if a % p in (0, 1):
        raise ValueError("index a must not be 0 or 1 modulo p")
    e = (1 - a) * pow(2, -1, p) % p
    # (zeta^a - 1)/(zeta - 1) = 1 + zeta + ... + zeta^(a-1), a taken mod p
    num = [0] * p
    for i in range(a % p):
        num[(i + e) % p] += 1
    return CycRat.from_cyclic(p, num)


def kummer_sum_identity(p: int) -> Fraction:
    """Sum of zeta/(1-zeta)^2 over the nontrivial p-th roots of unity."""
    if not (is_prime(p) and p % 2):
        raise ValueError("p must be an odd prime")
    z = CycRat.zeta(p)
    term = z * cyc_invert((1 - z) * (1 - z))
    acc = CycRat.zero(p)
    for t in range(1, p):
        acc = acc + galois_apply(t, term)
    if not acc.is_rational():
        raise ArithmeticError(f"Kummer sum for p={p} is not rational: {acc}")
    return acc.rational_value()
