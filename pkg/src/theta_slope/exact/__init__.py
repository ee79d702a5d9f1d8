"""Exact arithmetic layer: rationals, polynomials in r, s, t, p, matrices."""

from .matrix import PolyMatrix, det_fraction_free, kernel_basis
from .poly import ONE, ZERO, MPoly, RatFun, divides, exact_div, gbinom, p, parse_poly, parse_ratfun, poly_gcd, r, s, t
from .rational import INF, UsageError, binom, falling, fmt_rational, is_prime, padic_valuation, rising
from .roots import rational_roots

__all__ = [
    "PolyMatrix", "det_fraction_free", "kernel_basis",
    "ONE", "ZERO", "MPoly", "RatFun", "divides", "exact_div", "gbinom", "p", "parse_poly", "parse_ratfun",
    "poly_gcd", "r", "s", "t",
    "INF", "UsageError", "binom", "falling", "fmt_rational", "is_prime", "padic_valuation", "rising",
    "rational_roots",
]
