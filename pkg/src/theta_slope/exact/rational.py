"""Integer and rational helpers: primality, p-adic valuation, extended binomials."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

INF = math.inf


class UsageError(ValueError):
    """Raised when an operation is called outside its documented domain."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise UsageError(f"expected a prime, got {p!r}")


def _int_valuation(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def padic_valuation(x, p: int):
    """Return v_p(x) for an integer or rational x; ``math.inf`` for zero."""
    require_prime(p)
    x = Fraction(x)
    if x == 0:
        return INF
    return _int_valuation(x.numerator, p) - _int_valuation(x.denominator, p)


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


@lru_cache(maxsize=65536)
def binom(n: int, k: int) -> int:
    """Extended binomial coefficient n(n-1)...(n-k+1)/k! for any integer n.

    Zero for k < 0, so that ``binom(-1, 2) == 1`` and ``binom(5, -1) == 0``.
    """
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k) if k <= n else 0
    # C(n, k) = (-1)^k C(k - n - 1, k)
    return (-1) ** k * math.comb(k - n - 1, k)


def falling(x, n: int):
    """x(x-1)...(x-n+1); works for ints, Fractions and polynomials."""
    out = 1
    for i in range(n):
        out = out * (x - i)
    return out


def rising(x, n: int):
    """x(x+1)...(x+n-1); 1 when n == 0."""
    if n < 0:
        raise UsageError("rising factorial needs n >= 0")
    out = 1
    for i in range(n):
        out = out * (x + i)
    return out


def fmt_rational(x) -> str:
    """Exact text form: ``"243/2"``, ``"-3"``; never a float."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)
