"""Parameter-grid sweeps over the exact verifiers, summarised per prime or per
grid block so that large sweeps produce small reports."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .exact.rational import UsageError
from .identities import (
    ThetaFactorization,
    ThetaFailure,
    decompose_weight,
    kappa_in_range,
    theta_factor,
    theta_multiplicity,
    verify_alternating_difference,
    verify_binomial_inversion,
    verify_binomial_sum_congruence,
    verify_kappa_congruence,
)
from .matrices import small_matrix_congruence_holds, small_matrix_entry_in_domain

DEFAULT_PRIMES = (3, 5, 7, 11, 13)


@dataclass
class SweepSummary:
    label: str
    checked: int = 0
    passed: int = 0
    first_failure: Optional[Tuple] = None
    skipped: int = 0

    @property
    def ok(self) -> bool:
        return self.checked == self.passed

    def record(self, ok: bool, witness: Tuple) -> None:
        self.checked += 1
        if ok:
            self.passed += 1
        elif self.first_failure is None:
            self.first_failure = witness


def sum_congruence_points(part: int, p: int, r_max: int, r_min: Optional[int] = None) -> Iterable[Tuple[int, Optional[int]]]:
    """(r, A) pairs for one part of the sum congruences on its default grid."""
    if part == 1:
        for r in range(r_min or p, r_max + 1):
            yield r, None
    elif part == 2:
        for r in range(r_min or p, r_max + 1):
            t, _ = decompose_weight(p, r)
            if t >= 1:
                yield r, None
    elif part in (3, 4):
        for r in range(r_min or 1, r_max + 1):
            t, s = decompose_weight(p, r)
            if s != 1 and (part == 3 or t % p == 0):
                yield r, None
    elif part == 5:
        for r in range(r_min or 1, r_max + 1):
            for A in range(0, 2 * (p - 1)):
                yield r, A
    elif part == 6:
        for R in range(r_min or 0, r_max + 1):
            for A in range(-5, 11):
                yield R, A
    else:
        raise UsageError(f"part must be 1..6, got {part}")


DEFAULT_R_MAX = {1: 1500, 2: 300, 3: 1000, 4: 1000, 5: 300, 6: 60}


def sweep_sum_congruence(part: int, primes: Sequence[int] = DEFAULT_PRIMES, r_max: Optional[int] = None,
                         r_min: Optional[int] = None) -> List[SweepSummary]:
    r_max = DEFAULT_R_MAX[part] if r_max is None else r_max
    out = []
    for p in primes:
        summary = SweepSummary(f"part={part} p={p}")
        for r, A in sum_congruence_points(part, p, r_max, r_min):
            rep = verify_binomial_sum_congruence(part, p, r, A)
            summary.record(rep.passed, (p, r, A))
        out.append(summary)
    return out


def sweep_alternating(L_max: int = 4, b_max: int = 3, N_max: int = 5, span: int = 30) -> SweepSummary:
    summary = SweepSummary("alternating differences")
    for L in range(L_max + 1):
        for b in range(b_max + 1):
            for N in range(1, N_max + 1):
                lo = (L + b) * N
                for r in range(lo, lo + span + 1):
                    summary.record(verify_alternating_difference(r, L, b, N), (r, L, b, N))
    return summary


def sweep_inversion(A_max: int = 6, z_max: int = 12, w_max: int = 6, primes: Sequence[int] = (3, 5, 7)) -> List[SweepSummary]:
    exact = SweepSummary("inversion exact")
    for A in range(A_max + 1):
        for z in range(z_max + 1):
            for w in range(w_max + 1):
                exact.record(verify_binomial_inversion(1, A, z, w), (A, z, w))
    modp = SweepSummary("inversion mod p")
    for p in primes:
        for A in range(A_max + 1):
            for i in range(z_max + 1):
                for w in range(min(w_max, p - 1) + 1):
                    modp.record(verify_binomial_inversion(2, A, i, w, p), (p, A, i, w))
    return [exact, modp]


def sweep_kappa(primes: Sequence[int] = (5, 7, 11), m_max: int = 3, samples: int = 3,
                variant: str = "binom-ip") -> SweepSummary:
    summary = SweepSummary(f"eta-corrected sums ({variant})")
    for p in primes:
        for m in range(1, m_max + 1):
            if p <= m + 1:
                continue
            for L in range(1, m + 1):
                base = (m + 1) * (p + 1)
                rs = [r for r in range(base, base + samples * (p - 1) + 1) if (r - 2 * L) % (p - 1) == 0][:samples]
                for r in rs:
                    for l in range(m + 1):
                        for w in range(2 * m + 2):
                            if not kappa_in_range(p, m, l, w, L):
                                summary.skipped += 1
                                continue
                            ok = verify_kappa_congruence(p, r, m, l, w, L, variant)
                            summary.record(ok, (p, r, m, l, w, L))
    return summary


def sample_weights(p: int, m: int, L: int, samples: int = 3) -> List[int]:
    """The first few r > (m+1)(p+1) with r = 2L mod (p-1)."""
    r = (m + 1) * (p + 1) + 1
    r += (2 * L - r) % (p - 1)
    return [r + k * (p - 1) for k in range(samples)]


@dataclass
class SmallMatrixSweep:
    in_domain: SweepSummary
    outside_domain: SweepSummary

    @property
    def ok(self) -> bool:
        return self.in_domain.ok


def sweep_small_matrix(m_set: Sequence[int] = (1, 2, 3), primes: Sequence[int] = (5, 7, 11),
                       samples: int = 3) -> SmallMatrixSweep:
    """Every small-matrix entry at sampled r against its restricted sum, mod p.

    Entries are split by whether the mod-p reduction behind them is valid
    for the prime; only the in-domain half is a claim.
    """
    inside = SweepSummary("small matrix entries, reduction valid")
    outside = SweepSummary("small matrix entries, reduction not claimed")
    for m in m_set:
        for p in primes:
            if p <= m + 1:
                continue
            for L in range(1, m + 1):
                for r in sample_weights(p, m, L, samples):
                    for alpha in range(m + 1):
                        for w in range(2 * m + 2 - alpha):
                            for l in range(alpha + 1):
                                ok = small_matrix_congruence_holds(p, r, m, alpha, L, w, l)
                                target = inside if small_matrix_entry_in_domain(p, m, alpha, L, w, l) else outside
                                target.record(ok, (m, p, r, alpha, L, w, l))
    return SmallMatrixSweep(inside, outside)


# -- theta factorisation property ----------------------------------------------


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def vector_with_multiplicity(k: int, cofactor: Sequence[int]) -> List[int]:
    """Coefficients of (1 - u)^k times the cofactor polynomial."""
    out = list(cofactor)
    for _ in range(k):
        out = _poly_mul(out, [1, -1])
    return out


def random_theta_case(rng: random.Random, valid: bool, alpha_max: int = 4, extra_max: int = 4,
                      coeff_bound: int = 9) -> Tuple[List[int], int, int]:
    """(C, alpha, expected first violated w or -1 when valid)."""
    alpha = rng.randint(1, alpha_max)
    k = alpha if valid else rng.randint(0, alpha - 1)
    deg = rng.randint(0, extra_max) + (alpha - k)
    while True:
        q = [rng.randint(-coeff_bound, coeff_bound) for _ in range(deg + 1)]
        if sum(q) != 0 and q[-1] != 0:
            break
    C = vector_with_multiplicity(k, q)
    return C, alpha, (-1 if valid else k)


def theta_property_check(count: int = 500, seed: int = 20240601, primes: Sequence[int] = (3, 5, 7)) -> List[SweepSummary]:
    """Random vectors with and without the vanishing-moment condition."""
    rng = random.Random(seed)
    good = SweepSummary("theta factorisation succeeds")
    bad = SweepSummary("theta factorisation fails at first violated w")
    for _ in range(count):
        C, alpha, _ = random_theta_case(rng, True)
        p = rng.choice(primes)
        res = theta_factor(C, alpha, p, gamma=rng.randint(0, 2))
        # theta_factor itself multiplies back out over Z; add the boundary identities
        ok = (isinstance(res, ThetaFactorization) and res.display_coeffs[-1] == C[-1]
              and res.display_coeffs[0] == (-1) ** alpha * C[0])
        good.record(ok, (tuple(C), alpha, p))
    for _ in range(count):
        C, alpha, expected = random_theta_case(rng, False)
        p = rng.choice(primes)
        res = theta_factor(C, alpha, p)
        ok = isinstance(res, ThetaFailure) and res.first_violated_w == expected == theta_multiplicity(C)
        bad.record(ok, (tuple(C), alpha, p, expected))
    return [good, bad]


__all__ = [
    "SweepSummary", "DEFAULT_PRIMES", "DEFAULT_R_MAX", "sum_congruence_points", "sweep_sum_congruence",
    "sweep_alternating", "sweep_inversion", "kappa_in_range", "sweep_kappa", "vector_with_multiplicity",
    "random_theta_case", "theta_property_check", "sample_weights", "SmallMatrixSweep", "sweep_small_matrix",
]
