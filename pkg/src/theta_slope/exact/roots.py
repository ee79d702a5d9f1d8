"""Rational roots of univariate polynomials via the rational root theorem."""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from typing import Dict, List

from .poly import MPoly, RatFun
from .rational import UsageError


def _dense_int(f: MPoly) -> List[int]:
    """Integer coefficient list (constant term first) of a univariate primitive polynomial."""
    vs = f.variables()
    if len(vs) > 1:
        raise UsageError(f"rational_roots needs a univariate polynomial, got {f}")
    v = vs[0] if vs else 0
    _, prim = f.primitive()
    out = [0] * (prim.degree(v) + 1)
    for e, c in prim.terms.items():
        out[e[v]] = int(c)
    return out


def _small_factor(n: int, bound: int) -> Dict[int, int]:
    """Prime factors of n that are <= bound (trial division)."""
    n = abs(n)
    out: Dict[int, int] = {}
    q = 2
    while q <= bound and q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 1 if q == 2 else 2
    if 1 < n <= bound:
        out[n] = out.get(n, 0) + 1
    return out


def _divisors(n: int, bound: int) -> List[int]:
    """Positive divisors of n not exceeding bound."""
    divs = [1]
    for q, k in _small_factor(n, bound).items():
        divs = [d * q ** i for d in divs for i in range(k + 1) if d * q ** i <= bound]
    return sorted(divs)


def _horner(coeffs: List[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs: List[int], a: int, b: int) -> List[int]:
    """Divide by (b*x - a), which must be an exact factor over Z."""
    n = len(coeffs) - 1
    q = [0] * n
    rem = coeffs[n]
    for i in range(n - 1, -1, -1):
        q[i] = rem // b
        rem = coeffs[i] + q[i] * a
    return q


def rational_roots(f) -> List[Fraction]:
    """Distinct rational roots of the numerator of f, ascending.

    Poles are ignored.  Raises UsageError for the zero function.
    """
    f = RatFun.coerce(f)
    if f.is_zero():
        raise UsageError("rational_roots of the zero function")
    coeffs = _dense_int(f.num)
    roots = set()
    if len(coeffs) > 1 and coeffs[0] == 0:
        roots.add(Fraction(0))
        while coeffs[0] == 0:
            coeffs.pop(0)
    while len(coeffs) > 1:
        lead, trail = coeffs[-1], coeffs[0]
        # Cauchy bound on |root|
        bound = 1 + max(Fraction(abs(c), abs(lead)) for c in coeffs[:-1])
        found = None
        for b in _divisors(lead, abs(lead)):
            for a in _divisors(trail, min(abs(trail), int(bound * b) + 1)):
                for sa in (a, -a):
                    if igcd(sa, b) == 1 and _horner(coeffs, Fraction(sa, b)) == 0:
                        found = (sa, b)
                        break
                if found:
                    break
            if found:
                break
        if found is None:
            break
        roots.add(Fraction(*found))
        coeffs = _deflate(coeffs, *found)
    return sorted(roots)

