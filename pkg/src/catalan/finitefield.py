"""Explicit finite fields F_{p^f} with discrete-log tables and characters."""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from sympy import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from .arith import factor, is_prime
from .cyclotomic import CycRat, IntPoly

__all__ = [
    "FqField",
    "FqElt",
    "MultCharacter",
    "InvalidPrimeError",
    "LogOfZeroError",
    "build_field",
    "trace",
    "discrete_log",
    "char_eval",
    "additive_char_exponent",
]


class InvalidPrimeError(ValueError):
    pass


class LogOfZeroError(ValueError):
    pass


def _polymulmod(a: tuple[int, ...], b: tuple[int, ...], mod: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Product of coefficient vectors modulo a monic polynomial over F_p."""
    f = len(mod) - 1
    prod = [0] * (2 * f - 1 if f else 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for i in range(len(prod) - 1, f - 1, -1):
        c = prod[i] % p
        if c:
            for j in range(f):
                prod[i - f + j] -= c * mod[j]
    return tuple(c % p for c in prod[:f])


class FqElt:
    """Element of an explicit finite field, stored by its coefficient vector."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: "FqField", coeffs):
        coeffs = tuple(int(c) % field.p for c in coeffs)
        if len(coeffs) != field.f:
            coeffs = (coeffs + (0,) * field.f)[: field.f]
        self.field = field
        self.coeffs = coeffs

    @property
    def index(self) -> int:
        """Integer encoding sum c_i p^i, used for table lookups."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * self.field.p + c
        return acc

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "FqElt") -> "FqElt":
        return FqElt(self.field, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "FqElt") -> "FqElt":
        return FqElt(self.field, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "FqElt":
        return FqElt(self.field, (-a for a in self.coeffs))

    def __mul__(self, other: "FqElt") -> "FqElt":
        fld = self.field
        return FqElt(fld, _polymulmod(self.coeffs, other.coeffs, fld._mod, fld.p))

    def __pow__(self, k: int) -> "FqElt":
        fld = self.field
        if self.is_zero():
            if k <= 0:
                raise ZeroDivisionError("non-positive power of zero")
            return self
        return fld.exp(fld.log(self) * k)

    def __eq__(self, other) -> bool:
        return isinstance(other, FqElt) and other.field is self.field and other.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.f, self.coeffs))

    def __repr__(self) -> str:
        return f"FqElt({self.field.p}^{self.field.f}: {list(self.coeffs)})"


class FqField:
    """F_q with q = p^f, a deterministic modulus and generator, and log tables.

    The modulus is the first monic irreducible of degree f when coefficient
    vectors are read as base-p integers; the generator is the first element
    of exact order q - 1 in the same order.
    """

    def __init__(self, p: int, f: int):
        if not is_prime(p):
            raise InvalidPrimeError(f"{p} is not prime")
        if f < 1:
            raise ValueError("degree f must be positive")
        self.p = p
        self.f = f
        self.q = p**f
        self._mod = self._find_modulus()
        self.modulus = IntPoly(self._mod)
        self._build_tables()

    def _find_modulus(self) -> tuple[int, ...]:
        p, f = self.p, self.f
        for low in product(range(p), repeat=f):
            coeffs = tuple(reversed(low)) + (1,)  # low[0] is the most significant digit
            if gf_irreducible_p(list(reversed(coeffs)), p, ZZ):
                return coeffs
        raise ArithmeticError("no irreducible polynomial found")

    def _decode(self, idx: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.f):
            idx, r = divmod(idx, self.p)
            out.append(r)
        return tuple(out)

    def _has_full_order(self, coeffs: tuple[int, ...]) -> bool:
        n = self.q - 1
        if n == 1:
            return any(coeffs)
        one = (1,) + (0,) * (self.f - 1)
        for r in factor(n):
            if self._slow_pow(coeffs, n // r) == one:
                return False
        return self._slow_pow(coeffs, n) == one

    def _slow_pow(self, base: tuple[int, ...], k: int) -> tuple[int, ...]:
        result = (1,) + (0,) * (self.f - 1)
        while k:
            if k & 1:
                result = _polymulmod(result, base, self._mod, self.p)
            base = _polymulmod(base, base, self._mod, self.p)
            k >>= 1
        return result

    def _build_tables(self) -> None:
        q = self.q
        for idx in range(1, q):
            cand = self._decode(idx)
            if self._has_full_order(cand):
                break
        else:
            raise ArithmeticError("no generator found")
        self._gen = cand
        exp_tab = [0] * (q - 1)
        log_tab = [-1] * q
        cur = (1,) + (0,) * (self.f - 1)
        for k in range(q - 1):
            i = FqElt(self, cur).index
            exp_tab[k] = i
            log_tab[i] = k
            cur = _polymulmod(cur, cand, self._mod, self.p)
        if any(v < 0 for v in log_tab[1:]):
            raise ArithmeticError("generator does not have order q - 1")
        self._exp = exp_tab
        self._log = log_tab
        # trace table via Frobenius powers
        self._trace = [0] * q
        for idx in range(1, q):
            acc = [0] * self.f
            k = log_tab[idx]
            for i in range(self.f):
                term = self._decode(exp_tab[(k * self.p**i) % (q - 1)])
                acc = [a + b for a, b in zip(acc, term)]
            acc = [a % self.p for a in acc]
            if any(acc[1:]):
                raise ArithmeticError("trace left the prime field")
            self._trace[idx] = acc[0]
        # log of 1 - t, used by Jacobi sums
        one = self.one()
        self._one_minus = [FqElt(self, (one - self.element_at(i)).coeffs).index for i in range(q)]

    # -- element helpers -----------------------------------------------------

    @property
    def generator(self) -> FqElt:
        return FqElt(self, self._gen)

    def element(self, coeffs) -> FqElt:
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        return FqElt(self, coeffs)

    def element_at(self, idx: int) -> FqElt:
        return FqElt(self, self._decode(idx))

    def zero(self) -> FqElt:
        return FqElt(self, (0,) * self.f)

    def one(self) -> FqElt:
        return FqElt(self, (1,) + (0,) * (self.f - 1))

    def elements(self) -> list[FqElt]:
        return [self.element_at(i) for i in range(self.q)]

    def exp(self, k: int) -> FqElt:
        return self.element_at(self._exp[k % (self.q - 1)])

    def log(self, x: FqElt) -> int:
        if x.is_zero():
            raise LogOfZeroError("discrete log of zero")
        return self._log[x.index]

    def log_index(self, idx: int) -> int:
        return self._log[idx]

    def trace_index(self, idx: int) -> int:
        return self._trace[idx]

    def one_minus_index(self, idx: int) -> int:
        return self._one_minus[idx]

    def frobenius(self, x: FqElt) -> FqElt:
        return x if x.is_zero() else self.exp(self.log(x) * self.p)

    def descriptor(self) -> dict:
        return {"p": self.p, "f": self.f, "modulus": list(self._mod), "generator": list(self._gen)}

    def __repr__(self) -> str:
        return f"FqField(p={self.p}, f={self.f}, modulus={self.modulus}, generator={list(self._gen)})"


@lru_cache(maxsize=128)
def build_field(p: int, f: int = 1) -> FqField:
    return FqField(p, f)


class MultCharacter:
    """Multiplicative character chi with chi(g) = zeta_{q-1}^d."""

    __slots__ = ("field", "d")

    def __init__(self, field: FqField, d: int):
        self.field = field
        self.d = d % (field.q - 1)

    @property
    def modulus(self) -> int:
        return self.field.q - 1

    @property
    def order(self) -> int:
        from math import gcd
        n = self.modulus
        return n // gcd(self.d, n)

    def is_trivial(self) -> bool:
        return self.d == 0

    def __mul__(self, other: "MultCharacter") -> "MultCharacter":
        return MultCharacter(self.field, self.d + other.d)

    def __pow__(self, k: int) -> "MultCharacter":
        return MultCharacter(self.field, self.d * k)

    def inverse(self) -> "MultCharacter":
        return MultCharacter(self.field, -self.d)

    def exponent_at(self, x: FqElt) -> int | None:
        """Exponent e with chi(x) = zeta_{q-1}^e, or None when chi(x) = 0."""
        if x.is_zero():
            return 0 if self.is_trivial() else None
        return self.d * self.field.log(x) % self.modulus

    def sign_at_minus_one(self) -> int:
        """chi(-1), always +1 or -1."""
        e = self.exponent_at(-self.field.one())
        n = self.modulus
        return 1 if e == 0 else -1 if 2 * e == n else _raise_sign()

    def __eq__(self, other) -> bool:
        return isinstance(other, MultCharacter) and other.field is self.field and other.d == self.d

    def __hash__(self) -> int:
        return hash((self.field.q, self.d))

    def __repr__(self) -> str:
        return f"MultCharacter(q={self.field.q}, d={self.d})"


def _raise_sign() -> int:
    raise ArithmeticError("chi(-1) is not +-1")


def trace(x: FqElt) -> int:
    """Absolute trace to F_p as an integer in [0, p)."""
    return x.field.trace_index(x.index)


def discrete_log(x: FqElt) -> int:
    return x.field.log(x)


def char_eval(chi: MultCharacter, x: FqElt) -> CycRat:
    """chi(x) in Q(zeta_{q-1}); chi(0) = 0 unless chi is trivial."""
    n = chi.modulus
    e = chi.exponent_at(x)
    if e is None:
        return CycRat.zero(n)
    return CycRat.zeta(n, e)


def additive_char_exponent(x: FqElt) -> int:
    """Tr(x), so that psi(x) = zeta_p^Tr(x)."""
    return trace(x)
