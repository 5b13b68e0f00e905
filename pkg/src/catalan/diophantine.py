"""Elementary Diophantine tools around x^m - y^n = 1.

Valuations, Pell equations, a few classical identities checked exactly,
a brute-force search for small solutions, and the final filter chain that
excludes every pair of odd prime exponents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2
import numpy as np

from .arith import is_prime, primes_up_to, vp_int
from .report import CheckReport

__all__ = [
    "INF",
    "PellSolution",
    "EliminationVerdict",
    "InvalidDError",
    "VERDICTS",
    "vp",
    "vp_factorial",
    "binom_valuation_bound",
    "pell_fundamental",
    "pell_power",
    "stoermer_scan",
    "petit_lemme_check",
    "cassels_decomposition_check",
    "pythagorean_generate",
    "power_gap_identity",
    "combinatorial_count_check",
    "brute_catalan",
    "wieferich_pair_check",
    "lift_congruence_mod_q2",
    "eliminate_pair",
    "eliminate_all",
]

INF = float("inf")
SMALL_PRIME_LIMIT = 43
VERDICTS = ("small-prime", "wieferich-fail", "bound-fail", "congruence-fail", "mod-q2-cases")


class InvalidDError(ValueError):
    pass


# -- valuations --------------------------------------------------------------


def vp(n, p: int):
    """p-adic valuation of an integer or rational; +inf at 0."""
    if isinstance(n, Fraction):
        if n == 0:
            return INF
        return vp_int(n.numerator, p) - vp_int(n.denominator, p)
    return vp_int(int(n), p)


def _digit_sum(n: int, p: int) -> int:
    s = 0
    while n:
        n, r = divmod(n, p)
        s += r
    return s


def vp_factorial(p: int, n: int) -> int:
    """v_p(n!) by the floor sum, cross-checked against (n - S_p(n)) / (p - 1)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    floor_sum = 0
    pk = p
    while pk <= n:
        floor_sum += n // pk
        pk *= p
    digit_form, rem = divmod(n - _digit_sum(n, p), p - 1)
    if rem or digit_form != floor_sum:
        raise ArithmeticError(f"v_{p}({n}!) mismatch: {floor_sum} vs {digit_form}")
    return floor_sum


def binom_valuation_bound(p: int, m: int, n: int, r: int) -> CheckReport:
    """v_p(r!) <= v_p(a (a-1) ... (a-r+1)) with a = m/n and p not dividing n."""
    if n % p == 0:
        raise ValueError("p must not divide n")
    if r < 1:
        raise ValueError("r must be positive")
    a = Fraction(m, n)
    prod = Fraction(1)
    for j in range(r):
        prod *= a - j
    lhs = vp_factorial(p, r)
    rhs = vp(prod, p)
    margin = rhs - lhs
    return CheckReport("binomial-valuation", {"p": p, "m": m, "n": n, "r": r}, lhs <= rhs, lhs, rhs,
                       witness={"margin": margin})


# -- Pell --------------------------------------------------------------------


@dataclass(frozen=True)
class PellSolution:
    D: int
    x: int
    y: int
    index: int = 1

    def __post_init__(self):
        if self.x * self.x - self.D * self.y * self.y != 1:
            raise ArithmeticError(f"({self.x}, {self.y}) does not solve x^2 - {self.D} y^2 = 1")


def pell_fundamental(D: int) -> PellSolution:
    """Fundamental solution of x^2 - D y^2 = 1 from the continued fraction of sqrt(D)."""
    if D <= 0:
        raise InvalidDError("D must be positive")
    a0 = math.isqrt(D)
    if a0 * a0 == D:
        raise InvalidDError(f"D = {D} is a perfect square")
    # convergents h/k of sqrt(D); stop at the first one solving the equation
    m, d, a = 0, 1, a0
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    while h * h - D * k * k != 1:
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
    return PellSolution(D, h, k, 1)


def pell_power(sol: PellSolution, k: int) -> PellSolution:
    """(x_1 + y_1 sqrt D)^k in Z[sqrt D] by square-and-multiply."""
    if k < 1:
        raise ValueError("k must be positive")
    D = sol.D
    rx, ry = 1, 0
    bx, by = sol.x, sol.y
    e = k
    while e:
        if e & 1:
            rx, ry = rx * bx + D * ry * by, rx * by + ry * bx
        bx, by = bx * bx + D * by * by, 2 * bx * by
        e >>= 1
    return PellSolution(D, rx, ry, sol.index * k)


def _supported_on(n: int, D: int) -> bool:
    """True when every prime factor of n divides D (no factorization needed)."""
    n = abs(n)
    while n > 1:
        g = math.gcd(n, D)
        if g == 1:
            return False
        while n % g == 0:
            n //= g
    return n == 1


def stoermer_scan(D: int, k_max: int) -> list[int]:
    """Indices k <= k_max for which every prime dividing y_k also divides D."""
    base = pell_fundamental(D)
    return [k for k in range(1, k_max + 1) if _supported_on(pell_power(base, k).y, D)]


# -- identities --------------------------------------------------------------


def petit_lemme_check(x: int, y: int, n: int, sign: int) -> CheckReport:
    """gcd(x +- y, (x^n +- y^n)/(x +- y)) = gcd(x +- y, n)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if n < 1:
        raise ValueError("n must be positive")
    if math.gcd(x, y) != 1:
        raise ValueError("x and y must be coprime")
    if sign == 1 and n % 2 == 0:
        raise ValueError("sign + needs odd n")
    s = x + sign * y
    if s == 0:
        raise ValueError("x +- y must be nonzero")
    num = x**n + sign * y**n
    quo, rem = divmod(num, s)
    if rem:
        raise ArithmeticError("x +- y does not divide x^n +- y^n")
    lhs = math.gcd(s, quo)
    rhs = math.gcd(s, n)
    return CheckReport("petit-lemme", {"x": x, "y": y, "n": n, "sign": sign}, lhs == rhs, lhs, rhs)


def cassels_decomposition_check(a: int, b: int, q: int) -> CheckReport:
    """(a^q - b^q)/(a - b) = k(a - b) + q b^(q-1) with k = (a - b)^(q-2) + u b q."""
    if a == b or a == 0 or b == 0:
        raise ValueError("need nonzero a != b")
    if math.gcd(a, b) != 1:
        raise ValueError("a and b must be coprime")
    if not is_prime(q):
        raise ValueError("q must be prime")
    c = a - b
    s, rem = divmod(a**q - b**q, c)
    ok = rem == 0
    k, rem_k = divmod(s - q * b ** (q - 1), c)
    ok = ok and rem_k == 0
    u, rem_u = divmod(k - c ** (q - 2), b * q)
    ok = ok and rem_u == 0
    witness = {"k": k, "u": u}
    if math.gcd(s, c) != math.gcd(q, c):
        ok = False
    if q >= 3 and c % q == 0:
        exact = s % q == 0 and s % (q * q) != 0 and k % q == 0
        witness["q_exactly_divides"] = exact
        ok = ok and exact
    return CheckReport("cassels-decomposition", {"a": a, "b": b, "q": q}, ok,
                       s, k * c + q * b ** (q - 1), witness)


def pythagorean_generate(c: int, d: int) -> tuple[int, int, int]:
    """Primitive triple (c^2 - d^2, 2cd, c^2 + d^2)."""
    if not c > d > 0:
        raise ValueError("need c > d > 0")
    if math.gcd(c, d) != 1 or (c - d) % 2 == 0:
        raise ValueError("c, d must be coprime of opposite parity")
    x, y, z = c * c - d * d, 2 * c * d, c * c + d * d
    if x * x + y * y != z * z or math.gcd(x, y) != 1:
        raise ArithmeticError("not a primitive triple")
    return x, y, z


def power_gap_identity(n: int) -> list[tuple[int, int]]:
    """n pairs (u, v) with u^2 - v^2 = 2^(2n)."""
    if n < 1:
        raise ValueError("n must be positive")
    target = 1 << (2 * n)
    out = []
    for k in range(1, n + 1):
        hi, lo = 1 << (2 * n - k - 1), 1 << (k - 1)
        u, v = hi + lo, hi - lo
        if u * u - v * v != target:
            raise ArithmeticError(f"k = {k} fails")
        out.append((u, v))
    if len(set(out)) != n:
        raise ArithmeticError("representations are not distinct")
    return out


def _count_bounded_tuples(s: int, k: int) -> int:
    """Number of (l_1..l_k) in N^k with sum <= s, by explicit enumeration."""
    if k == 0:
        return 1
    return sum(_count_bounded_tuples(s - first, k - 1) for first in range(s + 1))


def combinatorial_count_check(s: int, k: int) -> CheckReport:
    """Enumerated count equals C(s+k, k); for s >= 6, k >= 2, s + 2k >= 13 also
    C(s+k, k) > 4/3 (s+1) k^2 + 1."""
    if s < 0 or k < 1:
        raise ValueError("need s >= 0 and k >= 1")
    count = _count_bounded_tuples(s, k)
    binom = math.comb(s + k, k)
    ok = count == binom
    witness = {}
    if s >= 6 and k >= 2 and s + 2 * k >= 13:
        bound = Fraction(4, 3) * (s + 1) * k * k + 1
        witness["inequality"] = binom > bound
        witness["bound"] = bound
        ok = ok and binom > bound
    return CheckReport("combinatorial-count", {"s": s, "k": k}, ok, count, binom, witness)


# -- brute-force search ------------------------------------------------------


def _positive_solutions(x_max: int, exps: list[int]) -> list[tuple[int, int, int, int]]:
    """All a^m - b^n = 1 with 2 <= a, b <= x_max and m, n in exps.

    For each exponent pair, the candidate b = (a^m - 1)^(1/n) is estimated in
    floating point for every a at once and only near-integers are checked
    exactly with an integer root.
    """
    out = []
    a_all = np.arange(2, x_max + 1, dtype=np.float64)
    log_a = np.log(a_all)
    for m in exps:
        mlog = m * log_a
        # log(a^m - 1) = m log a + log1p(-a^-m)
        log_am1 = mlog + np.log1p(-np.exp(-mlog))
        for n in exps:
            if n == m:
                continue  # consecutive m-th powers differ by more than 1
            a_cap = x_max ** (n / m) + 1  # b <= x_max forces a^m <= x_max^n + 1
            lim = int(min(x_max, a_cap)) - 1
            if lim < 1:
                continue
            b_est = np.exp(log_am1[:lim] / n)
            near = np.abs(b_est - np.rint(b_est)) < 1e-4
            near &= (b_est > 1.5) & (b_est < x_max + 0.5)
            for idx in np.nonzero(near)[0]:
                a = int(idx) + 2
                root, exact = gmpy2.iroot(gmpy2.mpz(a) ** m - 1, n)
                if exact and 2 <= root <= x_max:
                    out.append((a, int(root), m, n))
    return out


def brute_catalan(x_max: int, e_max: int, prime_exponents: bool = True) -> list[tuple[int, int, int, int]]:
    """All (x, y, m, n) with x^m - y^n = 1, 2 <= |x|, |y| <= x_max, 2 <= m, n <= e_max.

    Exponents are restricted to primes unless prime_exponents is False.
    """
    if x_max < 2 or e_max < 2:
        return []
    exps = [e for e in range(2, e_max + 1) if not prime_exponents or is_prime(e)]
    found = set()
    for a, b, m, n in _positive_solutions(x_max, exps):
        # x^m = a^m, y^n = b^n
        for x in ((a, -a) if m % 2 == 0 else (a,)):
            for y in ((b, -b) if n % 2 == 0 else (b,)):
                found.add((x, y, m, n))
        # x^m = -b^n, y^n = -a^m needs both exponents odd
        if m % 2 and n % 2:
            found.add((-b, -a, n, m))
    for x, y, m, n in found:
        if x**m - y**n != 1:
            raise ArithmeticError(f"bad solution {(x, y, m, n)}")
    return sorted(found, key=lambda t: (abs(t[0]), abs(t[1]), t[2], t[3], t[0], t[1]))


# -- the final elimination ---------------------------------------------------


def wieferich_pair_check(p: int, q: int) -> CheckReport:
    """p^(q-1) = 1 mod q^2 and q^(p-1) = 1 mod p^2, reported separately."""
    if p == q or p < 3 or q < 3 or not (is_prime(p) and is_prime(q)):
        raise ValueError("need distinct odd primes")
    pq = pow(p, q - 1, q * q)
    qp = pow(q, p - 1, p * p)
    both = pq == 1 and qp == 1
    return CheckReport("double-wieferich", {"p": p, "q": q}, both, pq, qp,
                       witness={"p^(q-1) mod q^2": pq, "q^(p-1) mod p^2": qp,
                                "first": pq == 1, "second": qp == 1})


def lift_congruence_mod_q2(r: int, q: int) -> CheckReport:
    """If r = 1 mod q and r^(q-1) = 1 mod q^2 then r = 1 mod q^2.

    The order of r mod q^2 divides both q (r lies in the kernel of reduction
    mod q) and q - 1, hence equals 1.  The order is computed and reported.
    """
    mod = q * q
    r %= mod
    if math.gcd(r, q) != 1:
        raise ValueError("r must be a unit mod q")
    hyp = r % q == 1 and pow(r, q - 1, mod) == 1
    order = 1
    cur = r
    while cur != 1:
        cur = cur * r % mod
        order += 1
    ok = (not hyp) or (order == 1 and r == 1)
    return CheckReport("mod-q2-lift", {"r": r, "q": q}, ok, order, 1, witness={"hypotheses": hyp})


@dataclass(frozen=True)
class EliminationVerdict:
    p: int
    q: int
    verdict: str
    witness: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q, "verdict": self.verdict, "witness": self.witness}


class UnresolvedPairError(ArithmeticError):
    """No filter excluded the pair, which would contradict the theorem."""


def _mod_q2_cases(p: int, q: int) -> dict | None:
    """Final case split once p = 1 mod q (after orienting the pair)."""
    if p % q != 1:
        p, q = q, p
    if p % q != 1:
        return None
    lift = lift_congruence_mod_q2(p, q)
    if not lift.passed or not lift.witness["hypotheses"]:
        return None
    j, rem = divmod(p - 1, q * q)
    if rem or j not in (1, 2, 3):
        return None
    if j in (1, 3):
        return {"oriented": [p, q], "case": f"p = 1 + {j}q^2", "reason": "parity"}
    if q % 3:
        return {"oriented": [p, q], "case": "p = 1 + 2q^2", "reason": "p = 0 mod 3"}
    # q = 3, p = 19: excluded again by the small-prime theorem
    if min(p, q) <= SMALL_PRIME_LIMIT:
        return {"oriented": [p, q], "case": "p = 1 + 2q^2", "reason": "q = 3, p = 19, small-prime fallback"}
    return None


def eliminate_pair(p: int, q: int) -> EliminationVerdict:
    """First filter in proof order that excludes the exponent pair (p, q)."""
    if p == q or p < 3 or q < 3 or not (is_prime(p) and is_prime(q)):
        raise ValueError("need distinct odd primes")
    if min(p, q) <= SMALL_PRIME_LIMIT:
        return EliminationVerdict(p, q, "small-prime", {"min": min(p, q), "limit": SMALL_PRIME_LIMIT})
    w = wieferich_pair_check(p, q)
    if not w.passed:
        return EliminationVerdict(p, q, "wieferich-fail", {"p^(q-1) mod q^2": w.lhs, "q^(p-1) mod p^2": w.rhs})
    if not (p < 4 * q * q and q < 4 * p * p):
        return EliminationVerdict(p, q, "bound-fail", {"4q^2": 4 * q * q, "4p^2": 4 * p * p})
    if p % q != 1 and q % p != 1:
        return EliminationVerdict(p, q, "congruence-fail", {"p mod q": p % q, "q mod p": q % p})
    case = _mod_q2_cases(p, q)
    if case is not None:
        return EliminationVerdict(p, q, "mod-q2-cases", case)
    raise UnresolvedPairError(f"no filter excludes ({p}, {q})")


def _eliminate_row(args: tuple[int, list[int]]) -> list[EliminationVerdict]:
    p, primes = args
    return [eliminate_pair(p, q) for q in primes if q != p]


def eliminate_all(bound: int, jobs: int = 1) -> list[EliminationVerdict]:
    """Verdicts for every ordered pair of distinct odd primes up to bound, in (p, q) order."""
    primes = [p for p in primes_up_to(bound) if p > 2]
    tasks = [(p, primes) for p in primes]
    if jobs > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_eliminate_row, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        rows = [_eliminate_row(t) for t in tasks]
    return [v for row in rows for v in row]

