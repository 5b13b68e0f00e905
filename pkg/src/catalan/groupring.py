"""The group ring Z[(Z/mZ)^*], Stickelberger elements and related checks."""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from .arith import is_prime, totient, units
from .cyclotomic import CycRat, galois_apply
from .report import CheckReport

__all__ = [
    "GroupRingElt",
    "LatticeBasis",
    "StickelbergerBasis",
    "gr_mul",
    "sigma",
    "s_of_G",
    "iota",
    "theta",
    "theta_b",
    "stickelberger_basis",
    "lattice_facts_check",
    "lattice_rank",
    "hermite_normal_form",
    "same_lattice",
    "stickelberger_ideal_generators",
    "stickelberger_generation_check",
    "act",
    "semisimple_check",
    "mihailescu_series",
    "series_tail_diagnostic",
]

Scalar = int | Fraction


class GroupRingElt:
    """sum a_t sigma_t over t in (Z/m)^*, stored densely over the sorted units."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Mapping[int, Scalar] | Sequence[Scalar] | None = None):
        if m < 1:
            raise ValueError("modulus must be positive")
        keys = units(m)
        self.m = m
        if coeffs is None:
            self.coeffs: tuple[Scalar, ...] = (0,) * len(keys)
        elif isinstance(coeffs, Mapping):
            pos = {t: i for i, t in enumerate(keys)}
            dense: list[Scalar] = [0] * len(keys)
            for t, v in coeffs.items():
                t %= m
                if t not in pos:
                    raise ValueError(f"{t} is not a unit modulo {m}")
                dense[pos[t]] += v
            self.coeffs = tuple(_tidy(v) for v in dense)
        else:
            if len(coeffs) != len(keys):
                raise ValueError("dense coefficient list has the wrong length")
            self.coeffs = tuple(_tidy(v) for v in coeffs)

    @property
    def keys(self) -> tuple[int, ...]:
        return units(self.m)

    def __getitem__(self, t: int) -> Scalar:
        return self.coeffs[self.keys.index(t % self.m)]

    def items(self) -> list[tuple[int, Scalar]]:
        return list(zip(self.keys, self.coeffs))

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def norm1(self) -> Scalar:
        """||x|| = sum of |coefficients|."""
        return sum(abs(c) for c in self.coeffs)

    def augmentation(self) -> Scalar:
        return sum(self.coeffs)

    def _check(self, other: "GroupRingElt") -> None:
        if self.m != other.m:
            raise ValueError(f"moduli {self.m} and {other.m} differ")

    def __add__(self, other: "GroupRingElt") -> "GroupRingElt":
        self._check(other)
        return GroupRingElt(self.m, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "GroupRingElt") -> "GroupRingElt":
        self._check(other)
        return GroupRingElt(self.m, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "GroupRingElt":
        return GroupRingElt(self.m, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, GroupRingElt):
            return gr_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return GroupRingElt(self.m, [a * other for a in self.coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupRingElt) and other.m == self.m and other.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash((self.m, self.coeffs))

    def mod(self, q: int) -> "GroupRingElt":
        """Reduction of an integral element modulo q (representatives in [0, q))."""
        if not self.is_integral():
            raise ValueError("only integral elements reduce modulo q")
        return GroupRingElt(self.m, [c % q for c in self.coeffs])

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": [[t, _json_scalar(c)] for t, c in self.items()]}

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*s{t}" for t, c in self.items() if c)
        return f"GroupRingElt({self.m}: {body or '0'})"


def _tidy(v: Scalar) -> Scalar:
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return v


def _json_scalar(c: Scalar):
    if isinstance(c, Fraction):
        return [c.numerator, c.denominator]
    return c


def gr_mul(a: GroupRingElt, b: GroupRingElt) -> GroupRingElt:
    """Convolution: coefficient of sigma_u is sum over st = u of a_s b_t."""
    a._check(b)
    m = a.m
    out: dict[int, Scalar] = {}
    for s, x in a.items():
        if x:
            for t, y in b.items():
                if y:
                    u = s * t % m
                    out[u] = out.get(u, 0) + x * y
    return GroupRingElt(m, out)


def sigma(m: int, t: int) -> GroupRingElt:
    return GroupRingElt(m, {t % m: 1})


def s_of_G(m: int) -> GroupRingElt:
    return GroupRingElt(m, [1] * len(units(m)))


def iota(m: int) -> GroupRingElt:
    return sigma(m, -1)


def theta(m: int) -> GroupRingElt:
    """Theta = sum <t/m> sigma_t^{-1} with rational coefficients."""
    if m < 3:
        raise ValueError("theta needs m >= 3")
    return GroupRingElt(m, {pow(t, -1, m): Fraction(t, m) for t in units(m)})


def theta_b(m: int, b: int) -> GroupRingElt:
    """Theta_b = -sum [bt/m] sigma_t^{-1}; asserted equal to (sigma_b - b) Theta."""
    if gcd(b, m) != 1:
        raise ValueError(f"gcd({b}, {m}) != 1")
    out = GroupRingElt(m, {pow(t, -1, m): -((b * t) // m) for t in units(m)})
    check = gr_mul(sigma(m, b) - GroupRingElt(m, {1: b}), theta(m))
    if check != out:
        raise ArithmeticError(f"Theta_{b} disagrees with (sigma_b - b) Theta for m = {m}")
    return out


class LatticeBasis(list):
    """List of integral GroupRingElt spanning a sublattice of Z[G]."""

    def matrix(self) -> list[list[int]]:
        return [list(map(int, e.coeffs)) for e in self]


class StickelbergerBasis:
    def __init__(self, p: int, f: list[GroupRingElt], e: list[GroupRingElt], sG: GroupRingElt):
        self.p = p
        self.f = f  # f[0] is f_1
        self.e = e
        self.sG = sG

    def f_i(self, i: int) -> GroupRingElt:
        return self.f[i - 1]

    def e_i(self, i: int) -> GroupRingElt:
        return self.e[i - 1]


def stickelberger_basis(p: int) -> StickelbergerBasis:
    """f_i = g_{i+1} - g_i (i = 1..p-1) and e_i = (1 - iota) f_i (i <= (p-1)/2)."""
    if not (is_prime(p) and p % 2):
        raise ValueError("p must be an odd prime")

    def g(b: int) -> dict[int, int]:
        return {pow(a, -1, p): (a * b) // p for a in range(1, p)}

    gs = {b: g(b) for b in range(1, p + 1)}
    f = []
    for i in range(1, p):
        gi, gn = gs[i], gs[i + 1]
        f.append(GroupRingElt(p, {t: gn[t] - gi[t] for t in gi}))
    one_minus_iota = GroupRingElt(p, {1: 1, p - 1: -1})
    e = [gr_mul(one_minus_iota, fi) for fi in f[: (p - 1) // 2]]
    return StickelbergerBasis(p, f, e, s_of_G(p))


def lattice_facts_check(p: int) -> CheckReport:
    """Norms, the symmetry f_i = f_{p-1-i}, (1 + iota) f_i = s(G) and the two ranks."""
    B = stickelberger_basis(p)
    h = (p - 1) // 2
    norms = [B.f_i(i).norm1() for i in range(1, p - 1)]
    sym = all(B.f_i(i) == B.f_i(p - 1 - i) for i in range(1, p - 1))
    one_plus_iota = sigma(p, 1) + iota(p)
    plus = all(gr_mul(one_plus_iota, B.f_i(i)) == B.sG for i in range(1, h + 1))
    rank_f = lattice_rank(B.f[:h] + [B.sG])
    rank_e = lattice_rank(B.e)
    ok = all(n == h for n in norms) and sym and plus and rank_f == h + 1 and rank_e == h
    return CheckReport("stickelberger-lattice", {"p": p}, ok,
                       lhs={"rank_f_sG": rank_f, "rank_e": rank_e},
                       rhs={"rank_f_sG": h + 1, "rank_e": h},
                       witness={"norms": sorted(set(norms)), "symmetric": sym, "plus_part": plus})


def lattice_rank(basis: Iterable[GroupRingElt] | Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    rows = [list(map(int, b.coeffs)) if isinstance(b, GroupRingElt) else list(map(int, b)) for b in basis]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for r in range(rank + 1, len(rows)):
            row = rows[r]
            rows[r] = [(pr[col] * row[j] - row[col] * pr[j]) // prev for j in range(ncols)]
        prev = pr[col]
        rank += 1
        if rank == len(rows):
            break
    return rank


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style HNF (nonzero rows only): echelon, positive pivots, reduced above."""
    mat = [list(map(int, r)) for r in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    top = 0
    for col in range(ncols):
        # gcd-combine everything below top into a single pivot
        for r in range(top + 1, len(mat)):
            a, b = mat[top][col], mat[r][col]
            if b == 0:
                continue
            g, x, y = _xgcd(a, b)
            ra, rb = mat[top], mat[r]
            new_top = [x * u + y * v for u, v in zip(ra, rb)]
            new_r = [(a // g) * v - (b // g) * u for u, v in zip(ra, rb)]
            mat[top], mat[r] = new_top, new_r
        if top < len(mat) and mat[top][col] != 0:
            if mat[top][col] < 0:
                mat[top] = [-v for v in mat[top]]
            piv = mat[top][col]
            for r in range(top):
                k = mat[r][col] // piv
                if k:
                    mat[r] = [u - k * v for u, v in zip(mat[r], mat[top])]
            top += 1
            if top == len(mat):
                break
    return [r for r in mat[:top] if any(r)]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def same_lattice(a: Iterable[GroupRingElt], b: Iterable[GroupRingElt]) -> bool:
    ma = [list(map(int, e.coeffs)) for e in a]
    mb = [list(map(int, e.coeffs)) for e in b]
    return hermite_normal_form(ma) == hermite_normal_form(mb)


def stickelberger_ideal_generators(m: int) -> list[GroupRingElt]:
    """Z-generators of I_st = {beta Theta : beta in Z[G], beta Theta integral}.

    With A the matrix of beta -> beta (m Theta), the admissible beta are those
    with beta A in m Z^n; they are read off the HNF of [[A | I], [m I | 0]].
    """
    keys = units(m)
    n = len(keys)
    mt = theta(m) * m
    A = [list(map(int, gr_mul(sigma(m, t), mt).coeffs)) for t in keys]
    aug = [A[i] + [int(i == j) for j in range(n)] for i in range(n)]
    aug += [[m * int(i == j) for j in range(n)] + [0] * n for i in range(n)]
    hnf = hermite_normal_form(aug)
    betas = [row[n:] for row in hnf if not any(row[:n])]
    gens = []
    for beta in betas:
        img = [sum(beta[i] * A[i][j] for i in range(n)) for j in range(n)]
        if any(v % m for v in img):
            raise ArithmeticError("admissible beta produced a non-integral element")
        gens.append(GroupRingElt(m, [v // m for v in img]))
    return gens


def stickelberger_generation_check(m: int) -> CheckReport:
    """I_st equals the Z-span of Theta_b, b in [1, m + 1] coprime to m."""
    ideal = stickelberger_ideal_generators(m)
    span = [theta_b(m, b) for b in range(1, m + 2) if gcd(b, m) == 1]
    ok = same_lattice(ideal, span)
    return CheckReport("stickelberger-generation", {"m": m}, ok,
                       lhs=hermite_normal_form([e.coeffs for e in ideal]),
                       rhs=hermite_normal_form([e.coeffs for e in span]))


def act(theta_elt: GroupRingElt, x: CycRat) -> CycRat:
    """x^theta = prod sigma_t(x)^{a_t} for non-negative integer a_t."""
    if theta_elt.m != x.order:
        raise ValueError("group ring modulus must match the field order")
    if not theta_elt.is_integral() or any(c < 0 for c in theta_elt.coeffs):
        raise ValueError("exponential action needs non-negative integer coefficients")
    acc = CycRat.one(x.order)
    for t, c in theta_elt.items():
        if c:
            acc = acc * galois_apply(t, x) ** c
    return acc


def _gf_poly_gcd(a: list[int], b: list[int], q: int) -> list[int]:
    def trim(v):
        while v and v[-1] % q == 0:
            v.pop()
        return [c % q for c in v]

    a, b = trim(list(a)), trim(list(b))
    while b:
        inv = pow(b[-1], -1, q)
        while len(a) >= len(b):
            c = a[-1] * inv % q
            shift = len(a) - len(b)
            for i, y in enumerate(b):
                a[shift + i] = (a[shift + i] - c * y) % q
            a = trim(a)
        a, b = b, a
    return a


def semisimple_check(q: int, n: int) -> CheckReport:
    """x^n - 1 squarefree over F_q, via gcd with its derivative."""
    if not is_prime(q):
        raise ValueError("q must be prime")
    poly = [-1] + [0] * (n - 1) + [1]
    deriv = [i * c for i, c in enumerate(poly)][1:]
    g = _gf_poly_gcd(poly, deriv, q)
    squarefree = len(g) == 1
    return CheckReport("semisimple", {"q": q, "n": n}, squarefree, lhs=len(g) - 1, rhs=0,
                       witness={"gcd": g, "q_divides_n": n % q == 0})


def _binom_general(x: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out = out * (x - i) / (i + 1)
    return out


def _series_mul(a: list[CycRat], b: list[CycRat], K: int) -> list[CycRat]:
    n = a[0].order
    out = [CycRat.zero(n) for _ in range(K + 1)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j in range(0, K + 1 - i):
            if not b[j].is_zero():
                out[i + j] = out[i + j] + x * b[j]
    return out


def mihailescu_series(p: int, q: int, theta_elt: GroupRingElt, K: int) -> tuple[list[CycRat], CheckReport]:
    """Truncated F(T) = prod_tau (1 - tau(zeta_p) T)^(n_tau / q) and its arithmetic checks.

    Returns the coefficients F_0..F_K and a report verifying, for each k, that
    a_k = F_k k! q^k lies in Z[zeta_p] and a_k = (-sum n_tau tau(zeta_p))^k mod q.
    """
    if K < 1:
        raise ValueError("truncation order must be at least 1")
    if theta_elt.m != p:
        raise ValueError("theta must live in Z[(Z/p)^*]")
    if any(not isinstance(c, int) or c < 0 or c > q for c in theta_elt.coeffs):
        raise ValueError("coefficients must be integers in [0, q]")
    series = [CycRat.one(p)] + [CycRat.zero(p) for _ in range(K)]
    for t, n_t in theta_elt.items():
        if n_t == 0:
            continue
        x = Fraction(n_t, q)
        neg_root = -CycRat.zeta(p, t)
        factor = [CycRat.from_rational(p, _binom_general(x, k)) * (neg_root**k) for k in range(K + 1)]
        series = _series_mul(series, factor, K)
    base = CycRat.zero(p)
    for t, n_t in theta_elt.items():
        base = base - CycRat.zeta(p, t) * n_t
    integral, congruent = [], []
    fact = 1
    for k, coeff in enumerate(series):
        if k:
            fact *= k
        a_k = coeff * (fact * q**k)
        integral.append(a_k.is_integral())
        diff = a_k - base**k
        congruent.append(diff.is_integral() and all(c % q == 0 for c in diff.numerators))
    ok = all(integral) and all(congruent)
    report = CheckReport("mihailescu-series", {"p": p, "q": q, "K": K, "theta": theta_elt.to_json()}, ok,
                         witness={"integral": integral, "congruent": congruent})
    return series, report


def series_tail_diagnostic(p: int, q: int, theta_elt: GroupRingElt, coeffs: Sequence[CycRat],
                           t: complex, sigma_index: int = 1) -> dict:
    """Floating-point check of the truncation tail bound (diagnostics only).

    Compares F^sigma(t), evaluated as a product of principal powers, with the
    truncated sum and with |binom(-m, k+1)| |t|^(k+1) / (1 - |t|)^(m + k + 1).
    """
    r = abs(t)
    if r >= 1:
        raise ValueError("|t| must be < 1")
    k = len(coeffs) - 1
    full = 1 + 0j
    for tau, n_t in theta_elt.items():
        z = cmath.exp(2j * cmath.pi * (tau * sigma_index % p) / p)
        full *= (1 - z * t) ** (n_t / q)
    partial = sum(galois_apply(sigma_index, c).complex_value() * t**j for j, c in enumerate(coeffs))
    m_val = sum(theta_elt.coeffs) / q
    binom = abs(float(_binom_general(Fraction(-sum(theta_elt.coeffs), q), k + 1)))
    bound = binom * r ** (k + 1) / (1 - r) ** (m_val + k + 1)
    err = abs(full - partial)
    return {"error": err, "bound": bound, "within": err <= bound * (1 + 1e-9) + 1e-12}
