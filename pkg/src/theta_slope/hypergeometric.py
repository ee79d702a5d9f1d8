"""Exact verification of the terminating hypergeometric identities that make the
large-s kernel vector work.

Everything lives in Q(r, s).  Each identity is checked by multiplying through
by a known common denominator, dividing every term exactly, and comparing the
resulting polynomials, so a pass at a given alpha is a proof at that alpha.

Pochhammer symbols (x)_n here are FALLING factorials x(x-1)...(x-n+1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import List, Optional, Tuple

from .exact.poly import ONE, ZERO, MPoly, exact_div, gbinom, r, s
from .exact.rational import UsageError, falling


def _falling_poly(x: MPoly, n: int) -> MPoly:
    return falling(x, n) if n else ONE


def _common_denominator(alpha: int) -> MPoly:
    """(s+1) s (s-1) ... (s-alpha): divisible by every denominator that occurs."""
    return _falling_poly(s + 1, alpha + 2)


def _cleared(num: MPoly, den: MPoly, D: MPoly) -> MPoly:
    """num * (D / den); den must divide D."""
    q = exact_div(D, den)
    if q is None:
        raise ArithmeticError(f"{den} does not divide the common denominator {D}")
    return num * q


def kernel_coefficient(alpha: int, j: int) -> Tuple[MPoly, MPoly]:
    """(numerator, denominator) of the j-th kernel coefficient

        (-1)^j j!/(j+1) C(alpha, j) ((j+1)(s+1) + (alpha-j) r) / ((s-alpha+1)...(s-alpha+1+j)).
    """
    c = Fraction((-1) ** j * factorial(j) * comb(alpha, j), j + 1)
    num = ((s + 1) * (j + 1) + r * (alpha - j)) * c
    den = _falling_poly(s - alpha + 1 + j, j + 1)
    return num, den


def xi_sum(alpha: int) -> Tuple[MPoly, MPoly]:
    """Cleared weight-zero sum: (numerator over D, D)."""
    D = _common_denominator(alpha)
    total = ZERO
    for j in range(alpha + 1):
        num, den = kernel_coefficient(alpha, j)
        diff = gbinom(s + j, j) - gbinom(r + j, j)
        if not diff.is_zero():
            total = total + _cleared(num, den, D) * diff
    return total, D


def check_xi(alpha: int) -> bool:
    """sum_j d_j (C(s+j, j) - C(r+j, j)) == (r-s)/s."""
    total, D = xi_sum(alpha)
    return total == _cleared(r - s, s, D)


def check_h(alpha: int) -> bool:
    """sum_j (-1)^j C(alpha, j) (s-1+j)_j / (s-alpha+j)_j == 0, and the
    companion form sum_{j>=0} (-1)^j C(alpha, j+1) (s+j)_{j+1} / (s-alpha+1+j)_{j+1} == 1."""
    D = _common_denominator(alpha)
    h = ZERO
    one = ZERO
    for j in range(alpha + 1):
        h = h + _cleared(_falling_poly(s - 1 + j, j) * ((-1) ** j * comb(alpha, j)), _falling_poly(s - alpha + j, j), D)
        if j + 1 <= alpha:
            term = _falling_poly(s + j, j + 1) * ((-1) ** j * comb(alpha, j + 1))
            one = one + _cleared(term, _falling_poly(s - alpha + 1 + j, j + 1), D)
    return h.is_zero() and one == D


def xi_w_sides(alpha: int, w: int) -> Tuple[MPoly, MPoly]:
    """Both sides of the weight-w identity multiplied by the common denominator."""
    D = _common_denominator(alpha)
    lhs = ZERO
    for j in range(1, alpha + 1):
        inner = ZERO
        for v in range(w + 1):
            k = (-1) ** (w - v) * comb(j + w - v - 1, w - v)
            if k and v <= j:
                inner = inner + gbinom(r + j, v) * gbinom(s + j - v, j - v) * k
        if not inner.is_zero():
            num, den = kernel_coefficient(alpha, j)
            lhs = lhs + _cleared(num, den, D) * inner
    rhs = _cleared((r - s) * _falling_poly(r, w) * (-1) ** w, _falling_poly(s, w + 1), D)
    if w == alpha:
        rhs = rhs + _cleared(_falling_poly(s - r, alpha + 1), _falling_poly(s, alpha + 1), D)
    return lhs, rhs


def check_xi_w(alpha: int, w: int) -> bool:
    lhs, rhs = xi_w_sides(alpha, w)
    return lhs == rhs


@dataclass
class HypergeometricResult:
    alpha: int
    xi_ok: bool
    h_ok: bool
    # w -> pass/fail for 0 < w <= alpha
    xi_w_ok: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.xi_ok and self.h_ok and all(self.xi_w_ok.values())

    def first_failure(self) -> Optional[Tuple[int, str]]:
        if not self.xi_ok:
            return (self.alpha, "xi")
        if not self.h_ok:
            return (self.alpha, "h")
        for w, ok in self.xi_w_ok.items():
            if not ok:
                return (self.alpha, f"xi_w[{w}]")
        return None


def verify_alpha(alpha: int) -> HypergeometricResult:
    """All three identity families at a single alpha >= 1."""
    if alpha < 1:
        raise UsageError(f"alpha must be >= 1, got {alpha}")
    return HypergeometricResult(
        alpha,
        check_xi(alpha),
        check_h(alpha),
        {w: check_xi_w(alpha, w) for w in range(1, alpha + 1)},
    )


def verify_hypergeometric(alpha_max: int) -> List[HypergeometricResult]:
    """One result per alpha in 1..alpha_max."""
    if alpha_max < 1:
        raise UsageError(f"alpha_max must be >= 1, got {alpha_max}")
    return [verify_alpha(a) for a in range(1, alpha_max + 1)]


__all__ = [
    "kernel_coefficient", "xi_sum", "check_xi", "check_h", "xi_w_sides", "check_xi_w",
    "HypergeometricResult", "verify_alpha", "verify_hypergeometric",
]
