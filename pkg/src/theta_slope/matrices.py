"""Symbolic matrices over Q(r) (and Q(r, s, p) for the large-s case) whose
kernels and minors locate the exceptional residues of r mod p.

The constructions follow the reference Sage programs entry for entry; the
only liberty taken is that root sets come from numerators (see
exact.roots.rational_roots).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations
from typing import Dict, List, Optional, Sequence

from .exact.matrix import PolyMatrix, det_fraction_free, kernel_basis
from .exact.poly import ONE, ZERO, MPoly, RatFun, gbinom, poly_gcd, p, r, s, t
from .exact.rational import UsageError, binom, padic_valuation, require_prime
from .exact.roots import rational_roots
from .identities import eta


@dataclass(frozen=True)
class MatrixParams:
    m: int
    alpha: int
    L: int

    def __post_init__(self):
        if self.m < 0 or not 0 <= self.alpha <= self.m:
            raise UsageError(f"need 0 <= alpha <= m, got m={self.m}, alpha={self.alpha}")
        if not 1 <= self.L <= self.m:
            raise UsageError(f"need 1 <= L <= m, got L={self.L}, m={self.m}")


def _params(m, alpha, L) -> MatrixParams:
    return MatrixParams(m, alpha, L)


def _eta_column_sum(l: int, w: int, alpha: int, L: int) -> MPoly:
    """-C(r-alpha+l, l)[w=0] + sum_v (-1)^v C(l-v, w-v) eta(2L-alpha+l-v, l-v) C(r-alpha+l, v)."""
    top = r - alpha + l
    out = -gbinom(top, l) if w == 0 else ZERO
    for v in range(w + 1):
        k = (-1) ** v * binom(l - v, w - v) * eta(2 * L - alpha + l - v, l - v)
        if k:
            out = out + gbinom(top, v) * k
    return out


def _boundary_term(l: int, w: int, alpha: int, L: int) -> MPoly:
    """C(r-alpha+l, 2L-alpha) C(2L-r, w): the top interior term removed from the sum."""
    return gbinom(r - alpha + l, 2 * L - alpha) * gbinom(2 * L - r, w)


@lru_cache(maxsize=None)
def _construct_matrix(m: int, alpha: int, L: int) -> PolyMatrix:
    rows, cols = alpha + 1, m + 3
    A = PolyMatrix(rows, cols)
    A[0, 0] = 1
    A[rows - 1, 0] = A[rows - 1, 0] - (-1) ** alpha
    if L >= alpha and m + alpha >= 2 * L:
        for w in range(rows):
            A[w, 1] = gbinom(2 * L - r, w)
        A[rows - 1, 1] = A[rows - 1, 1] - 1
    for l in range(alpha - m, alpha + 1):
        for w in range(rows):
            a = -_boundary_term(l, w, alpha, L) if m + alpha >= 2 * L else ZERO
            A[w, l + 2 - alpha + m] = a + _eta_column_sum(l, w, alpha, L)
    return A


def construct_matrix(m: int, alpha: int, L: int) -> PolyMatrix:
    """The (alpha+1) x (m+3) range-condition matrix over Q[r]."""
    _params(m, alpha, L)
    A = _construct_matrix(m, alpha, L)
    return PolyMatrix(A.rows, A.cols, list(A.entries))


def gcd_for_the_matrix(m: int, alpha: int, L: int) -> MPoly:
    """gcd over Q[r] of all maximal minors of the columns {0, 1} plus the last alpha+1."""
    _params(m, alpha, L)
    A = _construct_matrix(m, alpha, L)
    M = alpha + 1
    cols = [0, 1] + list(range(m - alpha + 2, m + 3))
    B = A.submatrix(range(M), cols)
    g = ZERO
    for i, j in combinations(range(M + 2), 2):
        keep = [c for c in range(M + 2) if c not in (i, j)]
        d = det_fraction_free(B.submatrix(range(M), keep))
        g = poly_gcd(g, d.num)
    return g


@dataclass
class ExceptionalCase:
    params: MatrixParams
    value: RatFun
    kernel_vector: List[RatFun]
    kernel_dimension: int
    divided_by: Optional[RatFun]
    gcd_factor: Optional[MPoly]


@lru_cache(maxsize=None)
def _exceptional_cases(m: int, alpha: int, L: int) -> ExceptionalCase:
    A = _construct_matrix(m, alpha, L)
    ker = kernel_basis(A)
    K = ker[0]
    value = A[0, 0] * K[0]
    divided_by = None
    if not K[m + 2].is_zero():
        divided_by = K[m + 2]
        value = value / divided_by
    gcd_factor = None
    if 2 * L - 1 >= alpha >= L:
        gcd_factor = gcd_for_the_matrix(m, alpha, L)
        value = value * gcd_factor
    return ExceptionalCase(MatrixParams(m, alpha, L), value, K, len(ker), divided_by, gcd_factor)


def exceptional_cases(m: int, alpha: int, L: int) -> ExceptionalCase:
    """Polynomial whose roots are the exceptional residues for (m, alpha, L), with diagnostics."""
    _params(m, alpha, L)
    return _exceptional_cases(m, alpha, L)


def get_roots(g: RatFun) -> List[Fraction]:
    """Sorted rational roots of the numerator; [] for the zero function."""
    g = RatFun.coerce(g)
    if g.is_zero():
        return []
    return rational_roots(g)


@dataclass
class RootReport:
    m: int
    L: int
    roots: List[Fraction]
    product: RatFun
    # alpha -> roots contributed by that factor
    provenance: Dict[int, List[Fraction]] = field(default_factory=dict)


def roots_for_L(m: int, L: int, alphas: Optional[Sequence[int]] = None) -> RootReport:
    if alphas is None:
        alphas = range(1, m + 1)
    product = RatFun.coerce(1)
    prov: Dict[int, List[Fraction]] = {}
    for alpha in alphas:
        case = exceptional_cases(m, alpha, L)
        product = product * case.value
        prov[alpha] = get_roots(case.value)
    return RootReport(m, L, get_roots(product), product, dict(sorted(prov.items())))


def roots_for_all_matrices(m: int) -> List[RootReport]:
    """One RootReport per L in 1..m."""
    if m < 1:
        raise UsageError("m must be >= 1")
    return [roots_for_L(m, L) for L in range(1, m + 1)]


# -- the small matrix and the restricted sums ------------------------------------


@lru_cache(maxsize=None)
def _construct_small_matrix(m: int, alpha: int, L: int) -> PolyMatrix:
    cols, rows = alpha + 1, 2 * m + 2 - alpha
    A = PolyMatrix(rows, cols)
    for l in range(cols):
        for w in range(rows):
            a = -_boundary_term(l, w, alpha, L) if alpha >= L else ZERO
            A[w, l] = a + _eta_column_sum(l, w, alpha, L)
    return A


def construct_small_matrix(m: int, alpha: int, L: int) -> PolyMatrix:
    """(2m+2-alpha) x (alpha+1) matrix whose columns are the restricted sums mod p."""
    _params(m, alpha, L)
    A = _construct_small_matrix(m, alpha, L)
    return PolyMatrix(A.rows, A.cols, list(A.entries))


@dataclass
class MwList:
    params: MatrixParams
    constants: List[RatFun]
    values: List[RatFun]
    kernel_dimension: int


class KernelEmpty(Exception):
    """No nonzero vector kills the top rows (never happens for valid params)."""


def find_m_w(m: int, alpha: int, L: int) -> MwList:
    """Constants from the kernel of the top alpha rows, and every row applied to them."""
    _params(m, alpha, L)
    A = _construct_small_matrix(m, alpha, L)
    M = alpha + 1
    ker = kernel_basis(A.submatrix(range(M - 1), range(M)))
    if not ker:
        raise KernelEmpty(f"no constants for m={m}, alpha={alpha}, L={L}")
    C = ker[0]
    values = A.apply(C)
    return MwList(MatrixParams(m, alpha, L), C, values, len(ker))


def eval_m_w_exact(p_: int, r_: int, alpha: int, C: Sequence, w: int) -> Fraction:
    """sum over 0 < i(p-1) < r-2alpha of sum_l C_l C(r-alpha+l, i(p-1)+l) C(i, w), C_0 = 1.

    ``C`` lists C_1..C_alpha (or C_0..C_alpha when it has alpha+1 entries).
    """
    require_prime(p_)
    if r_ <= 2 * alpha:
        raise UsageError(f"need r > 2*alpha, got r={r_}, alpha={alpha}")
    coeffs = [Fraction(c) for c in C]
    if len(coeffs) == alpha:
        coeffs = [Fraction(1)] + coeffs
    if len(coeffs) != alpha + 1:
        raise UsageError(f"expected {alpha} constants, got {len(C)}")
    total = Fraction(0)
    i = 1
    while i * (p_ - 1) < r_ - 2 * alpha:
        bw = binom(i, w)
        if bw:
            for l, c in enumerate(coeffs):
                if c:
                    total += c * binom(r_ - alpha + l, i * (p_ - 1) + l) * bw
        i += 1
    return total


def m_w_valuation(p_: int, r_: int, alpha: int, C: Sequence, w: int):
    return padic_valuation(eval_m_w_exact(p_, r_, alpha, C, w), p_)


def small_matrix_entry_in_domain(p_: int, m: int, alpha: int, L: int, w: int, l: int) -> bool:
    """Whether the mod-p reduction behind entry (w, l) is valid for this prime.

    Needs C(i, w) to reduce through i = 2L - r mod p (w <= p-2), the residue
    arguments 2L-alpha+l-v to stay inside (-(p-1), p-1), and at most one
    multiple of p-1 in the excluded top window [r-2alpha, r-alpha].
    """
    top = 2 * L - alpha + l
    return w <= p_ - 2 and top <= p_ - 2 and top - w >= -(p_ - 2) and 2 * alpha - 2 * L < p_ - 1


def small_matrix_congruence_holds(p_: int, r_: int, m: int, alpha: int, L: int, w: int, l: int) -> bool:
    """Entry (w, l) of the small matrix at r = r_ against the single-column restricted sum, mod p."""
    entry = _construct_small_matrix(m, alpha, L)[w, l]
    value = entry(r=r_)
    unit = [Fraction(0)] * (alpha + 1)
    unit[l] = Fraction(1)
    exact = eval_m_w_exact(p_, r_, alpha, unit, w)
    diff = value - exact
    return diff.denominator % p_ != 0 and diff.numerator % p_ == 0


# -- the large-s matrix ---------------------------------------------------------


@lru_cache(maxsize=None)
def _construct_big_matrix(alpha: int) -> PolyMatrix:
    M = alpha + 1
    A = PolyMatrix(M, M)
    for l in range(M):
        for w in range(M):
            b = -gbinom(r - alpha + l, l) if w == 0 else ZERO
            for v in range(w + 1):
                k = (-1) ** (w - v) * binom(l + w - v - 1, w - v)
                if k:
                    b = b + gbinom(s - alpha + l - v, l - v) * gbinom(r - alpha + l, v) * k
            entry = RatFun.coerce(b)
            if l == 0:
                a = RatFun((s - r) * p * gbinom(r - alpha, w), (s - alpha) * gbinom(s - alpha - 1, w))
                entry = entry + a * (-1) ** w
            A[w, l] = entry
    return A


def construct_big_matrix(m: int, alpha: int) -> PolyMatrix:
    """(alpha+1) square matrix over Q(r, s, p); does not depend on m."""
    if not 0 <= alpha <= m:
        raise UsageError(f"need 0 <= alpha <= m, got m={m}, alpha={alpha}")
    A = _construct_big_matrix(alpha)
    return PolyMatrix(A.rows, A.cols, list(A.entries))


@dataclass
class BigMatrixPolynomial:
    m: int
    alpha: int
    value: RatFun
    kernel_vector: List[RatFun]
    sentinel: bool


@lru_cache(maxsize=None)
def _polynomial_from_the_big_matrix(alpha: int) -> BigMatrixPolynomial:
    M = alpha + 1
    A = _construct_big_matrix(alpha)
    A = PolyMatrix(A.rows, A.cols, list(A.entries))
    for i in range(M):
        A[i, 0] = A[i, 0] / p
    ker = kernel_basis(A.submatrix(range(M - 1), range(M)))
    C = ker[0]
    if C[0] == 1:
        x = RatFun.coerce(0)
        for v in range(M):
            if not C[v].is_zero():
                x = x + A[M - 1, v] * C[v]
        return BigMatrixPolynomial(-1, alpha, x.subs({"r": s - t}), C, False)
    return BigMatrixPolynomial(-1, alpha, RatFun.coerce(t + 1), C, True)


def polynomial_from_the_big_matrix(m: int, alpha: int) -> BigMatrixPolynomial:
    """Last row against the kernel of the top rows, with r -> s - t; t + 1 when the
    kernel vector does not start with 1."""
    if not 0 <= alpha <= m:
        raise UsageError(f"need 0 <= alpha <= m, got m={m}, alpha={alpha}")
    res = _polynomial_from_the_big_matrix(alpha)
    return BigMatrixPolynomial(m, alpha, res.value, res.kernel_vector, res.sentinel)


def the_roots_for_all_big_matrices(m: int) -> RatFun:
    """Product of the large-s polynomials for alpha in 0..m-1."""
    if m < 1:
        raise UsageError("m must be >= 1")
    return reduce(lambda a, b: a * b, (polynomial_from_the_big_matrix(m, a).value for a in range(m)), RatFun.coerce(1))


@dataclass
class BoundsCheck:
    m: int
    passed: bool
    roots_ok: bool
    divisibility_ok: bool
    roots_by_L: Dict[int, List[Fraction]]
    big_product: RatFun


def verify_exceptional_bounds(m: int) -> BoundsCheck:
    """Roots for each L lie in [2(L-m), 2L], and the large-s product divides
    prod_{alpha<m} (t - alpha)^m."""
    if m < 1:
        raise UsageError("m must be >= 1")
    roots_ok = True
    by_L: Dict[int, List[Fraction]] = {}
    for rep in roots_for_all_matrices(m):
        by_L[rep.L] = rep.roots
        if rep.roots and (min(rep.roots) < 2 * (rep.L - m) or max(rep.roots) > 2 * rep.L):
            roots_ok = False
    f = the_roots_for_all_big_matrices(m)
    g = ONE
    for alpha in range(m):
        g = g * (t - alpha) ** m
    quotient = RatFun(g) / f
    div_ok = quotient.den.is_constant()
    return BoundsCheck(m, roots_ok and div_ok, roots_ok, div_ok, by_L, f)


__all__ = [
    "MatrixParams", "construct_matrix", "gcd_for_the_matrix", "ExceptionalCase", "exceptional_cases",
    "get_roots", "RootReport", "roots_for_L", "roots_for_all_matrices", "construct_small_matrix",
    "MwList", "KernelEmpty", "find_m_w", "eval_m_w_exact", "m_w_valuation",
    "small_matrix_entry_in_domain", "small_matrix_congruence_holds", "construct_big_matrix", "BigMatrixPolynomial",
    "polynomial_from_the_big_matrix", "the_roots_for_all_big_matrices", "BoundsCheck",
    "verify_exceptional_bounds",
]
