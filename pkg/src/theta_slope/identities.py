"""Exact verifiers for binomial-sum congruences and related identities.

Every check evaluates big-integer sums exactly and compares against the
claimed value, either exactly or modulo a power of p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .exact.rational import INF, UsageError, binom, padic_valuation, require_prime, rising

rising_factorial = rising


def eta(X: int, Y: int) -> int:
    """Boundary-corrected binomial used in the mod-p character-sum reductions."""
    if X >= 1 and Y >= 0:
        return binom(X, Y)
    if X < 1 and Y >= 0:
        return (2 if X == Y == 0 else 1) * binom(X - 1, Y)
    if X < 1 and Y < 0:
        return binom(X - 1, X - Y) if X >= Y else 0
    return 0


def decompose_weight(p: int, r: int):
    """(t, s) with r = t(p-1) + s and 1 <= s <= p-1."""
    if r < 1:
        raise UsageError(f"r must be positive, got {r}")
    t, s = divmod(r - 1, p - 1)
    return t, s + 1


@dataclass
class SumReport:
    p: int
    r: int
    value: Fraction
    target: Fraction
    required_valuation: object
    achieved_valuation: object
    passed: bool
    extra: Dict[str, object] = field(default_factory=dict)


def _report(p, r, value, target, required, extra=None) -> SumReport:
    value, target = Fraction(value), Fraction(target)
    achieved = padic_valuation(value - target, p)
    return SumReport(p, r, value, target, required, achieved, achieved >= required, extra or {})


def power_sum(p: int, r: int, weight: int = 0) -> int:
    """sum_{j=1}^{t} j^weight C(r, j(p-1)) with r = t(p-1)+s."""
    t, _ = decompose_weight(p, r)
    step = p - 1
    total = 0
    c = 1
    # walk the row C(r, k) multiplicatively; far cheaper than a comb() per term
    for k in range(1, t * step + 1):
        c = c * (r - k + 1) // k
        if k % step == 0:
            total += (k // step) ** weight * c
    return total


def residue_class_sum(p: int, R: int, A: int, all_j: bool = True) -> int:
    """sum over j of C(R, j(p-1) + A).

    With ``all_j`` every integer j contributes; otherwise only j >= 0.
    """
    step = p - 1
    # smallest j with j*step + A >= 0, or 0 when only j >= 0 counts
    j = -(A // step) if all_j else 0
    total = 0
    while j * step + A <= R:
        if j * step + A >= 0:
            total += binom(R, j * step + A)
        j += 1
    return total


def _quadratic_constants(p: int, s: int):
    """Fit alpha_t = gamma + t*A + t^2*B exactly at t = 1, 2, 3."""
    alphas = []
    for t in (1, 2, 3):
        M = power_sum(p, t * (p - 1) + s)
        alphas.append((M - Fraction(t * p, s)) / p ** 2)
    a1, a2, a3 = alphas
    B = (a3 - 2 * a2 + a1) / 2
    A = a2 - a1 - 3 * B
    gamma = a1 - A - B
    return gamma, A, B


def verify_binomial_sum_congruence(part: int, p: int, r: int, A: Optional[int] = None) -> SumReport:
    """Check one of the six congruences for sums of C(r, j(p-1)).

    Parts: 1 power sum mod p^2; 2 its quadratic refinement mod p^3;
    3 weighted sum mod p; 4 weighted sum mod p^2 when p | t;
    5 residue-class sum mod p (needs A >= 0); 6 Pascal recurrence for
    the residue-class sum (exact; needs A).
    """
    require_prime(p)
    if part == 6:
        if A is None:
            raise UsageError("the recurrence check needs A")
        return _recurrence_report(p, r, A)
    if r < 1:
        raise UsageError(f"r must be >= 1, got {r}")
    t, s = decompose_weight(p, r)
    if part == 1:
        return _report(p, r, power_sum(p, r), Fraction(t * p, s), 2, {"t": t, "s": s})
    if part == 2:
        if t < 1:
            raise UsageError("the quadratic refinement needs t >= 1")
        gamma, As, Bs = _quadratic_constants(p, s)
        target = Fraction(t * p, s) + p ** 2 * (t * As + t * t * Bs)
        rep = _report(p, r, power_sum(p, r), target, 3, {"t": t, "s": s, "A_s": As, "B_s": Bs, "gamma": gamma})
        if padic_valuation(gamma, p) < 1:
            rep.passed = False
        return rep
    if part in (3, 4):
        if s == 1:
            raise UsageError("the weighted sum congruence needs s != 1")
        if part == 4 and t % p:
            raise UsageError("the mod p^2 weighted congruence needs p | t")
        return _report(p, r, power_sum(p, r, 1), 0, 1 if part == 3 else 2, {"t": t, "s": s})
    if part == 5:
        if A is None or A < 0:
            raise UsageError("residue-class congruence needs A >= 0")
        nu = A % (p - 1)
        target = binom(s, nu) * (2 if (s == p - 1 and nu == 0) else 1)
        value = residue_class_sum(p, r, A)
        rep = _report(p, r, value, target, 1, {"t": t, "s": s, "A": A})
        return rep
    raise UsageError(f"part must be 1..6, got {part}")


def residue_class_recurrence(p: int, R: int, A: int) -> int:
    """Value of sum_{j>=0} C(R, j(p-1)+A) rebuilt from the A = 0 sums."""
    M0 = lambda i: residue_class_sum(p, i, 0, all_j=False)
    if A == 0:
        return M0(R)
    if A > 0:
        return sum(binom(R - 1 - i, A - 1) * M0(i) for i in range(R))
    n = -A
    return sum((-1) ** i * binom(n, i) * M0(R + n - i) for i in range(n + 1))


def _recurrence_report(p: int, R: int, A: int) -> SumReport:
    if R < 0:
        raise UsageError("R must be >= 0")
    direct = residue_class_sum(p, R, A, all_j=False)
    rebuilt = residue_class_recurrence(p, R, A)
    ok = direct == rebuilt
    return SumReport(p, R, Fraction(direct), Fraction(rebuilt), INF,
                     padic_valuation(direct - rebuilt, p), ok, {"A": A})


def verify_alternating_difference(r: int, L: int, b: int, N: int) -> bool:
    """sum_j (-1)^(j-b) C(L, j-b) C(r - jN, u) == [u == L] N^L for 0 <= u <= L."""
    if min(r, L, b, N) < 0:
        raise UsageError("r, L, b, N must be nonnegative")
    if r < (L + b) * N:
        raise UsageError("need r >= (L + b) N")
    for u in range(L + 1):
        total = sum((-1) ** k * binom(L, k) * binom(r - (k + b) * N, u) for k in range(L + 1))
        if total != (N ** L if u == L else 0):
            return False
    return True


def verify_binomial_inversion(which: int, A: int, z: int, w: int, p: Optional[int] = None) -> bool:
    """Re-expansion of C(z, w) through C(z + A, v); ``which=2`` is the mod-p
    form with z read as i and the upper argument i(p-1) + A."""
    if A < 0 or z < 0 or w < 0:
        raise UsageError("A, z (or i), w must be nonnegative")
    if which == 1:
        rhs = sum((-1) ** (w - v) * binom(A + w - v - 1, w - v) * binom(z + A, v) for v in range(w + 1))
        return binom(z, w) == rhs
    if which == 2:
        if p is None:
            raise UsageError("the mod-p form needs a prime p")
        require_prime(p)
        i = z
        rhs = sum((-1) ** v * binom(A - v, w - v) * binom(i * (p - 1) + A, v) for v in range(w + 1))
        return (binom(i, w) - rhs) % p == 0
    raise UsageError(f"which must be 1 or 2, got {which}")


# -- theta factorisation ------------------------------------------------------


@dataclass
class ThetaFactorization:
    alpha: int
    gamma: int
    p: int
    r: int
    input_coeffs: List[int]
    output_coeffs: List[int]
    sign: int
    # (-1)^alpha * sign * output_coeffs: the form whose end coefficients are C_beta and C_0
    display_coeffs: List[int]


@dataclass
class ThetaFailure:
    alpha: int
    first_violated_w: int
    moment: int


def moments(C: Sequence[int], w: int) -> int:
    return sum(c * binom(j, w) for j, c in enumerate(C))


def theta_closed_form(C: Sequence[int], alpha: int) -> List[int]:
    beta = len(C) - 1
    sign = (-1) ** alpha
    return [sign * sum(binom(i - j - 1, alpha - 1) * C[i] for i in range(j + 1, beta + 1))
            for j in range(beta - alpha + 1)]


def _mul_int(a: List[int], b: List[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def theta_power(p: int, k: int) -> List[int]:
    """(x y^p - x^p y)^k over Z as x-exponent-indexed coefficients of degree k(p+1)."""
    theta = [0] * (p + 2)
    theta[1] = 1
    theta[p] = -1
    out = [1]
    for _ in range(k):
        out = _mul_int(out, theta)
    return out


def theta_factor(C: Sequence[int], alpha: int, p: int, gamma: int = 0, r: Optional[int] = None):
    """Factor sum_j C_j x^(alpha+gamma+j(p-1)) y^(...) through theta^alpha.

    Returns ThetaFactorization on success or ThetaFailure naming the first w
    with sum_j C_j C(j, w) != 0.  The sign relating the closed-form
    coefficients to the expansion is found by multiplying out over Z.
    """
    require_prime(p)
    C = [int(c) for c in C]
    beta = len(C) - 1
    if not (beta >= alpha > 0):
        raise UsageError(f"need len(C)-1 >= alpha > 0, got beta={beta}, alpha={alpha}")
    if gamma < 0:
        raise UsageError("gamma must be nonnegative")
    r_min = alpha * (p + 1) + beta * (p - 1) + gamma
    if r is None:
        r = r_min
    if r < r_min:
        raise UsageError(f"r must be at least {r_min}")
    for w in range(alpha):
        mw = moments(C, w)
        if mw:
            return ThetaFailure(alpha, w, mw)
    f = [0] * (r + 1)
    for j, c in enumerate(C):
        f[alpha + gamma + j * (p - 1)] += c
    out = theta_closed_form(C, alpha)
    cofactor = [0] * (r - alpha * (p + 1) + 1)
    for j, c in enumerate(out):
        cofactor[gamma + j * (p - 1)] += c
    g = _mul_int(theta_power(p, alpha), cofactor)
    if g == f:
        sign = 1
    elif g == [-x for x in f]:
        sign = -1
    else:
        raise ArithmeticError("closed-form theta coefficients do not reproduce the input")
    disp = [(-1) ** alpha * sign * c for c in out]
    return ThetaFactorization(alpha, gamma, p, r, C, out, sign, disp)


def theta_multiplicity(C: Sequence[int]) -> int:
    """Largest k with (1 - u)^k dividing sum_j C_j u^j (independent oracle
    for how many leading moments vanish)."""
    poly = [Fraction(c) for c in C]
    if not any(poly):
        raise UsageError("zero coefficient vector")
    k = 0
    while True:
        # synthetic division by (u - 1)
        if sum(poly) != 0:
            return k
        q = [Fraction(0)] * (len(poly) - 1)
        acc = Fraction(0)
        for i in range(len(poly) - 1, 0, -1):
            acc += poly[i]
            q[i - 1] = acc
        poly = q
        k += 1


# -- mod-p restricted sums with eta corrections --------------------------------


def kappa_in_range(p: int, m: int, l: int, w: int, L: int) -> bool:
    """Range of (l, w) in which the eta-corrected congruence is claimed."""
    return w <= p - 2 and 2 * L - m + l - w >= -(p - 2)


def kappa_coefficients(m: int, l: int, w: int, L: int, variant: str = "binom-ip") -> List[int]:
    out = []
    for v in range(w + 1):
        e = eta(2 * L - m + l - v, l - v)
        if variant == "binom-ip":
            out.append((-1) ** (w - v) * binom(l + w - v - 1, w - v) * e)
        elif variant == "binom-i":
            out.append((-1) ** v * binom(l - v, w - v) * e)
        else:
            raise UsageError(f"unknown variant {variant!r}")
    return out


def kappa_sides(p: int, r: int, m: int, l: int, w: int, L: int, variant: str = "binom-ip"):
    """Exact (lhs, rhs) of the eta-corrected congruence; compare mod p."""
    top = r - m + l
    lhs = 0
    i = 0
    while i * (p - 1) + l <= top:
        weight = binom((p - 1) * i, w) if variant == "binom-ip" else binom(i, w)
        lhs += binom(top, i * (p - 1) + l) * weight
        i += 1
    kap = kappa_coefficients(m, l, w, L, variant)
    rhs = sum(k * binom(top, v) for v, k in enumerate(kap))
    return lhs, rhs


def verify_kappa_congruence(p: int, r: int, m: int, l: int, w: int, L: int,
                            variant: str = "binom-ip", strict: bool = True) -> bool:
    """Sum over i of C(r-m+l, i(p-1)+l) times C((p-1)i, w) (or C(i, w)) against
    the eta-corrected short sum, mod p.  ``strict`` enforces the range in
    which the congruence is claimed."""
    require_prime(p)
    if min(r, m, l, w) < 0:
        raise UsageError("r, m, l, w must be nonnegative")
    if strict:
        if r < (m + 1) * (p + 1):
            raise UsageError(f"need r >= (m+1)(p+1) = {(m + 1) * (p + 1)}")
        if (r - 2 * L) % (p - 1):
            raise UsageError("need r = 2L mod (p-1)")
        if not 1 <= L <= m:
            raise UsageError("need 1 <= L <= m")
        if p <= m + 1:
            raise UsageError("need p > m + 1")
        if not kappa_in_range(p, m, l, w, L):
            raise UsageError("need w <= p-2 and 2L-m+l-w >= -(p-2)")
    lhs, rhs = kappa_sides(p, r, m, l, w, L, variant)
    return (lhs - rhs) % p == 0
