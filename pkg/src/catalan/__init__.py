"""Exact arithmetic in cyclotomic fields and finite fields, with verification
suites for the number theory behind x^p - y^q = 1.

Submodules: cyclotomic, finitefield, gauss, padic, groupring, classnum,
diophantine and cli.
"""

from .classnum import h_minus
from .cyclotomic import CycRat, IntPoly, cyclotomic_polynomial, embed, galois_apply, norm, trace
from .diophantine import brute_catalan, eliminate_pair, pell_fundamental
from .finitefield import FqField, MultCharacter, build_field
from .gauss import gauss_sum, jacobi_sum
from .groupring import GroupRingElt, stickelberger_basis
from .padic import prime_above, ramified_valuation, unramified_valuation

__version__ = "0.1.0"

__all__ = [
    "CycRat",
    "IntPoly",
    "cyclotomic_polynomial",
    "embed",
    "galois_apply",
    "norm",
    "trace",
    "FqField",
    "MultCharacter",
    "build_field",
    "gauss_sum",
    "jacobi_sum",
    "prime_above",
    "unramified_valuation",
    "ramified_valuation",
    "GroupRingElt",
    "stickelberger_basis",
    "h_minus",
    "brute_catalan",
    "eliminate_pair",
    "pell_fundamental",
]
