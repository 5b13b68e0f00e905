"""Gauss and Jacobi sums over explicit finite fields, with identity checks.

Sign convention: G(chi) = -sum_{t != 0} chi(t) psi(t) and
J(chi1, chi2) = -sum_t chi1(t) chi2(1 - t), so that G(1) = 1.
"""

from __future__ import annotations

from functools import lru_cache

from .arith import units
from .cyclotomic import CycRat, embed, galois_apply
from .finitefield import FqElt, FqField, MultCharacter, build_field
from .report import CheckReport

__all__ = [
    "gauss_sum",
    "jacobi_sum",
    "gauss_conjugate_check",
    "gauss_norm_check",
    "gauss_jacobi_check",
    "gauss_power_in_subfield",
    "residue_symbol",
    "root_of_unity_injectivity_check",
    "gauss_frobenius_check",
    "field_identity_suite",
]


def _key(field: FqField) -> tuple[int, int]:
    return field.p, field.f


@lru_cache(maxsize=8192)
def _gauss_cyclic(p: int, f: int, d: int) -> tuple[int, ...]:
    """G(chi_d) as a group-ring vector over zeta_N^0..zeta_N^(N-1), N = (q-1)p."""
    field = build_field(p, f)
    m = field.q - 1
    n = m * p
    acc = [0] * n
    for idx in range(1, field.q):
        a = d * field.log_index(idx) % m
        b = field.trace_index(idx)
        acc[(a * p + b * m) % n] -= 1
    return tuple(acc)


@lru_cache(maxsize=8192)
def _gauss_cached(p: int, f: int, d: int) -> CycRat:
    n = (p**f - 1) * p
    return CycRat.from_cyclic(n, _gauss_cyclic(p, f, d))


def gauss_sum(field: FqField, chi: MultCharacter) -> CycRat:
    """G(chi) in Q(zeta_{(q-1)p}), accumulated in the group ring and reduced once."""
    return _gauss_cached(field.p, field.f, chi.d)


@lru_cache(maxsize=65536)
def _jacobi_cyclic(p: int, f: int, d1: int, d2: int) -> tuple[int, ...]:
    field = build_field(p, f)
    m = field.q - 1
    acc = [0] * m
    for idx in range(field.q):
        jdx = field.one_minus_index(idx)
        if idx == 0:
            if d1 != 0:
                continue
            e1 = 0
        else:
            e1 = d1 * field.log_index(idx)
        if jdx == 0:
            if d2 != 0:
                continue
            e2 = 0
        else:
            e2 = d2 * field.log_index(jdx)
        acc[(e1 + e2) % m] -= 1
    return tuple(acc)


@lru_cache(maxsize=65536)
def _jacobi_cached(p: int, f: int, d1: int, d2: int) -> CycRat:
    return CycRat.from_cyclic(p**f - 1, _jacobi_cyclic(p, f, d1, d2))


def _permuted_equal(src: tuple[int, ...], dst: tuple[int, ...], c: int) -> bool:
    """dst[c k mod n] == src[k] for all k, i.e. sigma_c(src) = dst in the group ring."""
    n = len(src)
    return all(dst[k * c % n] == v for k, v in enumerate(src))


def jacobi_sum(field: FqField, chi1: MultCharacter, chi2: MultCharacter) -> CycRat:
    """J(chi1, chi2) in Q(zeta_{q-1})."""
    return _jacobi_cached(field.p, field.f, chi1.d, chi2.d)


def _conj(x: CycRat) -> CycRat:
    return galois_apply(-1, x)


def _params(field: FqField, *chars: MultCharacter) -> dict:
    out = {"p": field.p, "f": field.f}
    for i, c in enumerate(chars, 1):
        out[f"d{i}" if len(chars) > 1 else "d"] = c.d
    return out


def gauss_conjugate_check(field: FqField, chi: MultCharacter) -> CheckReport:
    """conj(G(chi)) = chi(-1) G(chi^-1)."""
    g = gauss_sum(field, chi)
    lhs = _conj(g)
    rhs = gauss_sum(field, chi.inverse()) * chi.sign_at_minus_one()
    return CheckReport("gauss-conjugate", _params(field, chi), lhs == rhs, lhs, rhs)


def gauss_norm_check(field: FqField, chi: MultCharacter) -> CheckReport:
    """G(chi) conj(G(chi)) = q for nontrivial chi."""
    g = gauss_sum(field, chi)
    lhs = g * _conj(g)
    return CheckReport("gauss-norm", _params(field, chi), lhs == field.q, lhs, field.q)


def gauss_jacobi_check(field: FqField, chi1: MultCharacter, chi2: MultCharacter) -> CheckReport:
    """G(chi1) G(chi2) = G(chi1 chi2) J(chi1, chi2)."""
    n = (field.q - 1) * field.p
    lhs = gauss_sum(field, chi1) * gauss_sum(field, chi2)
    rhs = gauss_sum(field, chi1 * chi2) * embed(jacobi_sum(field, chi1, chi2), n)
    return CheckReport("gauss-jacobi", _params(field, chi1, chi2), lhs == rhs, lhs, rhs)


def gauss_power_in_subfield(field: FqField, chi: MultCharacter) -> CycRat:
    """G(chi)^m in Q(zeta_m), m = ord(chi), computed two ways and compared."""
    if chi.is_trivial():
        raise ValueError("character must be nontrivial")
    m = chi.order
    direct = embed(gauss_sum(field, chi) ** m, m)
    prod = CycRat.from_rational(m, field.q * chi.sign_at_minus_one())
    for k in range(1, m - 1):
        prod = prod * embed(jacobi_sum(field, chi, chi**k), m)
    if direct != prod:
        raise ArithmeticError(f"G(chi)^{m} disagrees with the Jacobi product for {chi}")
    return direct


def residue_symbol(field: FqField, x: FqElt, m: int) -> CycRat:
    """m-th power residue symbol: zeta_m^(log_g x mod m), or 0 at x = 0."""
    if m < 1 or (field.q - 1) % m:
        raise ValueError(f"m = {m} does not divide q - 1 = {field.q - 1}")
    if x.is_zero():
        return CycRat.zero(m)
    return CycRat.zeta(m, field.log(x) % m)


def root_of_unity_injectivity_check(field: FqField, m: int) -> CheckReport:
    """The m-th roots of unity g^(k(q-1)/m) are pairwise distinct in F_q."""
    if m < 1 or (field.q - 1) % m:
        raise ValueError(f"m = {m} does not divide q - 1 = {field.q - 1}")
    step = (field.q - 1) // m
    images = [field.exp(k * step).coeffs for k in range(m)]
    ok = len(set(images)) == m
    return CheckReport("roots-of-unity-injective", {"p": field.p, "f": field.f, "m": m}, ok,
                       witness={"images": [list(c) for c in images]})


def gauss_frobenius_check(field: FqField, b: int) -> CheckReport:
    """G(omega^(bp)) = G(omega^b) with omega of exponent q - 2."""
    omega = MultCharacter(field, field.q - 2)
    lhs = gauss_sum(field, omega ** (b * field.p))
    rhs = gauss_sum(field, omega**b)
    return CheckReport("gauss-frobenius", {"p": field.p, "f": field.f, "b": b}, lhs == rhs, lhs, rhs)


def _lift_unit(c: int, m: int, p: int) -> int:
    """Integer congruent to c mod m and to 1 mod p (gcd(m, p) = 1)."""
    return (c * p * pow(p, -1, m) + m * pow(m, -1, p)) % (m * p) if m > 1 else 1


def _unit_generators(m: int) -> list[int]:
    """A generating set of (Z/m)^*, greedy."""
    if m <= 2:
        return []
    group = set(units(m))
    sub = {1}
    gens = []
    for g in sorted(group):
        if g in sub:
            continue
        gens.append(g)
        frontier = set(sub)
        while True:
            new = {s * g % m for s in frontier} | frontier
            if new == frontier:
                break
            frontier = new
        sub = frontier
        if sub == group:
            break
    return gens


def field_identity_suite(field: FqField, direct_pairs: bool | None = None) -> dict:
    """Run the Gauss-sum identities for every nontrivial character of F_q.

    Per-character identities (norm, conjugation) are checked directly.  The
    pair factorization is checked directly for every pair when direct_pairs
    is True; otherwise one pair per orbit of the scaling action
    (d1, d2) -> (c d1, c d2), c a unit mod q - 1, is checked, together with
    the exact equivariance sigma_c G(chi_d) = G(chi_cd) and
    sigma_c J(chi_d1, chi_d2) = J(chi_cd1, chi_cd2) that transports each
    representative identity to the rest of its orbit.  Equivariance is
    checked on the group-ring vectors before reduction, which implies it for
    the reduced values.  The default is direct for q <= 32.
    """
    q, p = field.q, field.p
    m = q - 1
    n = m * p
    if direct_pairs is None:
        direct_pairs = q <= 32
    failures: list[dict] = []
    counts = {"characters": 0, "pairs": 0, "pairs_direct": 0, "equivariance": 0}
    chars = [MultCharacter(field, d) for d in range(1, m)]
    for chi in chars:
        counts["characters"] += 1
        for rep in (gauss_norm_check(field, chi), gauss_conjugate_check(field, chi)):
            if not rep.passed:
                failures.append(rep.to_json())
    if not direct_pairs:
        # G equivariance under a generating set of the scaling group
        for c in _unit_generators(m):
            lift = _lift_unit(c, m, p)
            for d in range(1, m):
                counts["equivariance"] += 1
                if not _permuted_equal(_gauss_cyclic(p, field.f, d), _gauss_cyclic(p, field.f, d * c % m), lift):
                    failures.append({"identity": "gauss-equivariance", "p": p, "f": field.f, "d": d, "c": c})
    seen: set[tuple[int, int]] = set()
    unit_list = units(m) if m > 1 else (1,)
    for d1 in range(1, m):
        for d2 in range(1, m):
            if (d1 + d2) % m == 0:
                continue
            counts["pairs"] += 1
            chi1, chi2 = MultCharacter(field, d1), MultCharacter(field, d2)
            if direct_pairs:
                counts["pairs_direct"] += 1
                rep = gauss_jacobi_check(field, chi1, chi2)
                if not rep.passed:
                    failures.append(rep.to_json())
                continue
            if (d1, d2) in seen:
                continue
            counts["pairs_direct"] += 1
            rep = gauss_jacobi_check(field, chi1, chi2)
            if not rep.passed:
                failures.append(rep.to_json())
            j = _jacobi_cyclic(p, field.f, d1, d2)
            for c in unit_list:
                img = (d1 * c % m, d2 * c % m)
                if img in seen:
                    continue
                seen.add(img)
                counts["equivariance"] += 1
                if not _permuted_equal(j, _jacobi_cyclic(p, field.f, img[0], img[1]), c):
                    failures.append({"identity": "jacobi-equivariance", "p": p, "f": field.f,
                                     "d1": d1, "d2": d2, "c": c})
    return {"p": p, "f": field.f, "q": q, "order": n, "counts": counts,
            "pass": not failures, "failures": failures}
