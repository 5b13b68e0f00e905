"""Primes of Z[zeta_m] via Hensel-lifted roots, and cyclotomic valuations.

A prime above l (l not dividing m) is the kernel of zeta_m -> r, where r is a
primitive m-th root of unity in the unramified ring W(F_{l^F}) truncated mod
l^K.  That ring is modelled as (Z / l^K)[x] / (M(x)) with M the integer lift
of the finite-field modulus.  The valuation of a cyclotomic integer is then
the l-adic valuation of its image, computed with adaptively raised K.

The totally ramified prime above p in Z[zeta_{pm}] is handled by expanding
in powers of pi = zeta_p - 1 over Z[zeta_m].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, gcd
from typing import Sequence

from .arith import mult_order, totient, units, vp_int
from .cyclotomic import CycRat, IntPoly, embed, norm
from .finitefield import MultCharacter, build_field
from .gauss import gauss_power_in_subfield, gauss_sum
from .report import CheckReport

__all__ = [
    "INF",
    "DerivativeVanishesError",
    "RamifiedPrimeError",
    "PrimeIdealData",
    "RamifiedContext",
    "DigitProfile",
    "hensel_lift",
    "prime_above",
    "ramified_context",
    "unramified_valuation",
    "pi_expand",
    "pi_reassemble",
    "ramified_valuation",
    "digit_profile",
    "stickelberger_congruence_check",
    "stickelberger_relation_check",
]

INF = float("inf")
START_PRECISION = 8
GUARD = 4


class DerivativeVanishesError(ValueError):
    """Hensel lifting was asked to lift a non-simple root."""


class RamifiedPrimeError(ValueError):
    """prime_above called with l dividing m."""


# -- the ring (Z / l^K)[x] / (M) ---------------------------------------------


class _UnramRing:
    def __init__(self, l: int, K: int, mod: Sequence[int]):
        self.l = l
        self.K = K
        self.mod = tuple(mod)  # monic, low degree first
        self.f = len(self.mod) - 1
        self.n = l**K

    def elt(self, c: int | Sequence[int]) -> tuple[int, ...]:
        if isinstance(c, int):
            c = (c,)
        c = list(c) + [0] * (self.f - len(c))
        return tuple(x % self.n for x in c[: self.f])

    def add(self, a, b):
        return tuple((x + y) % self.n for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.n for x, y in zip(a, b))

    def scale(self, c: int, a):
        return tuple(c * x % self.n for x in a)

    def mul(self, a, b):
        f, n, mod = self.f, self.n, self.mod
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        for i in range(len(prod) - 1, f - 1, -1):
            c = prod[i] % n
            if c:
                for j in range(f):
                    prod[i - f + j] -= c * mod[j]
        return tuple(c % n for c in prod[:f])

    def pow(self, a, k: int):
        result = self.elt(1)
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def evaluate(self, poly: Sequence[int], x):
        acc = self.elt(0)
        for c in reversed(poly):
            acc = self.add(self.mul(acc, x), self.elt(c))
        return acc

    def is_unit(self, a) -> bool:
        return any(c % self.l for c in a)

    def inverse(self, a):
        """Inverse of a unit: residue inverse by Fermat, then Newton lifting."""
        if not self.is_unit(a):
            raise ZeroDivisionError("not a unit in the unramified ring")
        base = _UnramRing(self.l, 1, self.mod)
        u = base.pow(base.elt(a), self.l**self.f - 2)
        prec = 1
        while prec < self.K:
            prec = min(2 * prec, self.K)
            ring = _UnramRing(self.l, prec, self.mod)
            a_r = ring.elt(a)
            u = ring.mul(u, ring.sub(ring.elt(2), ring.mul(a_r, ring.elt(u))))
        return self.elt(u)

    def valuation(self, a) -> int | None:
        """min l-adic valuation of the coefficients, None when a = 0 mod l^K."""
        if not any(a):
            return None
        return min(vp_int(c, self.l) for c in a if c)


def _derivative(poly: Sequence[int]) -> list[int]:
    return [i * c for i, c in enumerate(poly)][1:]


def hensel_lift(poly: IntPoly | Sequence[int], root0: int | Sequence[int], target_K: int,
                l: int, modulus: Sequence[int] | None = None):
    """Lift a simple root of poly from mod l to mod l^target_K by Newton steps.

    Without a modulus the root lives in Z/l^K and an int is returned; with a
    modulus it lives in (Z/l^K)[x]/(modulus) and a coefficient tuple is returned.
    """
    coeffs = list(poly.coeffs) if isinstance(poly, IntPoly) else list(poly)
    mod = tuple(modulus) if modulus is not None else (0, 1)
    scalar = modulus is None
    ring1 = _UnramRing(l, 1, mod)
    r = ring1.elt(root0)
    if any(ring1.evaluate(coeffs, r)):
        raise ValueError("root0 is not a root modulo l")
    if not ring1.is_unit(ring1.evaluate(_derivative(coeffs), r)):
        raise DerivativeVanishesError("derivative vanishes at root0 modulo l")
    prec = 1
    while prec < target_K:
        prec = min(2 * prec, target_K)
        ring = _UnramRing(l, prec, mod)
        r = ring.elt(r)
        step = ring.mul(ring.evaluate(coeffs, r), ring.inverse(ring.evaluate(_derivative(coeffs), r)))
        r = ring.sub(r, step)
    r = _UnramRing(l, max(target_K, 1), mod).elt(r)
    return r[0] if scalar else r


# -- primes above l ------------------------------------------------------------


@dataclass(frozen=True)
class PrimeIdealData:
    """Prime of Z[zeta_m] above l, given by zeta_m -> root in W(F_{l^F}) mod l^K.

    f is the residue degree ord_m(l); field_degree F is a multiple of f and
    fixes the working ring; selector t picks root = (g^((l^F - 1)/m))^t.
    """

    l: int
    m: int
    f: int
    field_degree: int
    selector: int
    modulus: tuple[int, ...]
    root: tuple[int, ...]
    K: int

    def with_precision(self, K: int) -> "PrimeIdealData":
        if K == self.K:
            return self
        root = _lifted_root(self.l, self.m, self.field_degree, self.selector, K)
        return PrimeIdealData(self.l, self.m, self.f, self.field_degree, self.selector,
                              self.modulus, root, K)

    def ring(self) -> _UnramRing:
        return _UnramRing(self.l, self.K, self.modulus)

    def residue_root(self) -> tuple[int, ...]:
        return tuple(c % self.l for c in self.root)


def _residue_root(l: int, m: int, field_degree: int, selector: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    field = build_field(l, field_degree)
    step = (field.q - 1) // m
    return field.exp(step * selector).coeffs, tuple(field.modulus.coeffs) if field.f > 1 else (0, 1)


@lru_cache(maxsize=4096)
def _lifted_root(l: int, m: int, field_degree: int, selector: int, K: int) -> tuple[int, ...]:
    r0, mod = _residue_root(l, m, field_degree, selector)
    x_m_minus_1 = [-1] + [0] * (m - 1) + [1]
    return tuple(hensel_lift(x_m_minus_1, r0, K, l, modulus=mod))


def prime_above(l: int, m: int, choice: int = 1, field_degree: int | None = None,
                K: int = START_PRECISION) -> PrimeIdealData:
    """Prime of Z[zeta_m] above l, zeta_m -> (g^((l^F-1)/m))^choice."""
    if m % l == 0:
        raise RamifiedPrimeError(f"{l} divides {m}: ramified case")
    if gcd(choice, m) != 1:
        raise ValueError("selector must be coprime to m")
    f = mult_order(l % m, m) if m > 1 else 1
    F = f if field_degree is None else field_degree
    if F % f:
        raise ValueError(f"field degree {F} is not a multiple of the residue degree {f}")
    _, mod = _residue_root(l, m, F, choice % m if m > 1 else 1)
    sel = choice % m if m > 1 else 1
    root = _lifted_root(l, m, F, sel, K)
    return PrimeIdealData(l, m, f, F, sel, mod, root, K)


@lru_cache(maxsize=4096)
def _root_powers(l: int, m: int, F: int, sel: int, K: int, count: int) -> tuple[tuple[int, ...], ...]:
    root = _lifted_root(l, m, F, sel, K)
    _, mod = _residue_root(l, m, F, sel)
    ring = _UnramRing(l, K, mod)
    out = [ring.elt(1)]
    for _ in range(count - 1):
        out.append(ring.mul(out[-1], root))
    return tuple(out)


def _evaluate_at(P: PrimeIdealData, num: Sequence[int]):
    ring = P.ring()
    powers = _root_powers(P.l, P.m, P.field_degree, P.selector, P.K, len(num))
    acc = [0] * ring.f
    for c, pw in zip(num, powers):
        if c:
            for i, x in enumerate(pw):
                acc[i] += c * x
    return tuple(a % ring.n for a in acc)


def unramified_valuation(alpha: CycRat, P: PrimeIdealData) -> int | float:
    """v_P(alpha) for alpha in Q(zeta_m); +inf for zero.

    Precision starts at P.K and doubles until the computed valuation sits
    at least GUARD below the working precision.
    """
    if alpha.order != P.m:
        if P.m % alpha.order == 0:
            alpha = embed(alpha, P.m)
        else:
            raise ValueError(f"element of order {alpha.order} is not in Q(zeta_{P.m})")
    if alpha.is_zero():
        return INF
    den_v = vp_int(alpha.denominator, P.l)
    K = max(P.K, START_PRECISION)
    while True:
        Q = P.with_precision(K)
        v = Q.ring().valuation(_evaluate_at(Q, alpha.numerators))
        if v is not None and v < K - GUARD:
            return v - den_v
        K *= 2


# -- ramified prime above p in Z[zeta_{pm}] ------------------------------------


@dataclass(frozen=True)
class RamifiedContext:
    """Prime of Z[zeta_{pm}] above base (a prime of Z[zeta_m] over p); e = p - 1."""

    base: PrimeIdealData
    p: int

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def e(self) -> int:
        return self.p - 1

    @property
    def order(self) -> int:
        return self.p * self.base.m

    def pi(self) -> CycRat:
        return CycRat.zeta(self.order, self.base.m) - 1


def ramified_context(p: int, m: int, choice: int = 1, field_degree: int | None = None) -> RamifiedContext:
    return RamifiedContext(prime_above(p, m, choice, field_degree), p)


def pi_expand(alpha: CycRat, ctx: RamifiedContext) -> list[CycRat]:
    """Coefficients c_0..c_{p-2} in Q(zeta_m) with alpha = sum c_k pi^k."""
    p, m = ctx.p, ctx.m
    n = p * m
    if alpha.order != n:
        if n % alpha.order == 0:
            alpha = embed(alpha, n)
        else:
            raise ValueError(f"element of order {alpha.order} is not in Q(zeta_{n})")
    u = pow(m, -1, p) if p > 1 else 0
    v = pow(p, -1, m) if m > 1 else 0
    buckets = [[0] * m for _ in range(p)]
    for k, c in enumerate(alpha.numerators):
        if c:
            buckets[k * u % p][k * v % m] += c
    top = buckets[p - 1]
    rows = [[x - y for x, y in zip(buckets[j], top)] for j in range(p - 1)]
    out = []
    den = alpha.denominator
    for k in range(p - 1):
        ck = [0] * m
        for j in range(k, p - 1):
            b = comb(j, k)
            for i, x in enumerate(rows[j]):
                if x:
                    ck[i] += b * x
        out.append(CycRat.from_cyclic(m, ck, den))
    return out


def pi_reassemble(coeffs: Sequence[CycRat], ctx: RamifiedContext) -> CycRat:
    n = ctx.order
    pi = ctx.pi()
    acc = CycRat.zero(n)
    power = CycRat.one(n)
    for c in coeffs:
        acc = acc + embed(c, n) * power
        power = power * pi
    return acc


def ramified_valuation(alpha: CycRat, ctx: RamifiedContext) -> int | float:
    """v_P(alpha) = min_k (k + (p-1) v(c_k)) over the pi-adic expansion."""
    if alpha.is_zero():
        return INF
    best = INF
    for k, c in enumerate(pi_expand(alpha, ctx)):
        if c.is_zero():
            continue
        best = min(best, k + ctx.e * unramified_valuation(c, ctx.base))
    return best


# -- digits and the Stickelberger checks ---------------------------------------


@dataclass(frozen=True)
class DigitProfile:
    a: int
    p: int
    f: int
    digits: tuple[int, ...]
    s: int
    gamma: int
    fractional_identity: bool


def digit_profile(a: int, p: int, f: int) -> DigitProfile:
    """Base-p digits of a mod (p^f - 1), digit sum s(a) and gamma(a) = prod a_i!."""
    q = p**f
    r = a % (q - 1) if q > 2 else 0
    digits = []
    x = r
    for _ in range(f):
        x, d = divmod(x, p)
        digits.append(d)
    s = sum(digits)
    gamma = 1
    for d in digits:
        gamma *= factorial(d)
    frac = sum((Fraction(p**i * a, q - 1) % 1 for i in range(f)), Fraction(0))
    return DigitProfile(a, p, f, tuple(digits), s, gamma, (p - 1) * frac == s)


def stickelberger_congruence_check(p: int, f: int, a: int) -> CheckReport:
    """v_P(G(omega^a)) = s(a) and v_P(gamma(a) G(omega^a) - pi^s(a)) >= s(a) + 1."""
    field = build_field(p, f)
    q = field.q
    m = q - 1
    ctx = ramified_context(p, m, 1, field_degree=f)
    omega = MultCharacter(field, q - 2)
    g = gauss_sum(field, omega**a)
    prof = digit_profile(a, p, f)
    v_g = ramified_valuation(g, ctx)
    delta = g * prof.gamma - ctx.pi() ** prof.s
    v_d = ramified_valuation(delta, ctx)
    ok = v_g == prof.s and v_d >= prof.s + 1 and prof.fractional_identity
    return CheckReport(
        "stickelberger-congruence",
        {"p": p, "f": f, "a": a},
        ok,
        lhs={"v_gauss": v_g, "v_delta": v_d},
        rhs={"s": prof.s, "gamma": prof.gamma},
        witness={"digits": list(prof.digits)},
    )


def stickelberger_relation_check(p: int, f: int, m: int) -> CheckReport:
    """Valuations of G(chi)^m, chi = omega^((q-1)/m), at every prime above p in Z[zeta_m]."""
    field = build_field(p, f)
    q = field.q
    if m <= 1 or (q - 1) % m:
        raise ValueError(f"m = {m} must be a divisor of q - 1 = {q - 1} greater than 1")
    chi = MultCharacter(field, (q - 2) * ((q - 1) // m))
    power = gauss_power_in_subfield(field, chi)
    observed, expected = {}, {}
    for t in units(m):
        P = prime_above(p, m, t, field_degree=f)
        observed[t] = unramified_valuation(power, P)
        expected[t] = Fraction(m, p - 1) * digit_profile(t * (q - 1) // m, p, f).s
    total = sum(observed.values())
    nv = vp_int(norm(power).numerator, p) if m > 2 else vp_int(power.rational_value().numerator, p)
    budget = f * m * totient(m) // 2 if m > 2 else f
    ok = all(observed[t] == expected[t] for t in observed) and total == nv == budget
    return CheckReport(
        "stickelberger-relation",
        {"p": p, "f": f, "m": m},
        ok,
        lhs=observed,
        rhs=expected,
        witness={"sum_r_t": total, "v_p_norm": nv, "norm_budget": budget},
    )
