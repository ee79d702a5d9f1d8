"""Brute-force finite-field oracle for homogeneous polynomials in x, y over F_p.

A degree-r form is stored as r+1 residues; index i holds the coefficient of
x^i y^(r-i).  The group GL2(F_p) acts on the right by
(f|g)(x, y) = f(ax + by, cx + dy) for g = [[a, b], [c, d]], so that
(f|g)|h = f|(gh).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .exact.rational import UsageError, binom, require_prime

Matrix2 = Tuple[int, int, int, int]


@dataclass(frozen=True)
class FpHomPoly:
    p: int
    r: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.r + 1:
            raise UsageError(f"degree {self.r} form needs {self.r + 1} coefficients")
        object.__setattr__(self, "coeffs", tuple(int(c) % self.p for c in self.coeffs))

    @classmethod
    def zero(cls, p: int, r: int) -> "FpHomPoly":
        return cls(p, r, (0,) * (r + 1))

    @classmethod
    def monomial(cls, p: int, r: int, i: int, c: int = 1) -> "FpHomPoly":
        """c * x^i y^(r-i)."""
        if not 0 <= i <= r:
            raise UsageError(f"exponent {i} outside 0..{r}")
        coeffs = [0] * (r + 1)
        coeffs[i] = c
        return cls(p, r, tuple(coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "FpHomPoly") -> "FpHomPoly":
        _same_space(self, other)
        return FpHomPoly(self.p, self.r, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "FpHomPoly") -> "FpHomPoly":
        _same_space(self, other)
        return FpHomPoly(self.p, self.r, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c: int) -> "FpHomPoly":
        return FpHomPoly(self.p, self.r, tuple(c * a for a in self.coeffs))

    def __mul__(self, other: "FpHomPoly") -> "FpHomPoly":
        if self.p != other.p:
            raise UsageError("mixed characteristics")
        out = [0] * (self.r + other.r + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return FpHomPoly(self.p, self.r + other.r, tuple(out))

    def __pow__(self, k: int) -> "FpHomPoly":
        out = FpHomPoly(self.p, 0, (1,))
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, u: int, v: int) -> int:
        """Value at (x, y) = (u, v), with 0^0 = 1."""
        p = self.p
        total = 0
        for i, c in enumerate(self.coeffs):
            if c:
                total += c * pow(u, i, p) * pow(v, self.r - i, p)
        return total % p

    def act(self, g: Matrix2) -> "FpHomPoly":
        """Right action f(ax + by, cx + dy)."""
        a, b, c, d = g
        p = self.p
        lin_x = FpHomPoly(p, 1, (b, a))  # a x + b y
        lin_y = FpHomPoly(p, 1, (d, c))  # c x + d y
        out = FpHomPoly.zero(p, self.r)
        px = [FpHomPoly(p, 0, (1,))]
        py = [FpHomPoly(p, 0, (1,))]
        for _ in range(self.r):
            px.append(px[-1] * lin_x)
            py.append(py[-1] * lin_y)
        for i, coef in enumerate(self.coeffs):
            if coef:
                out = out + (px[i] * py[self.r - i]).scale(coef)
        return out

    def __str__(self):
        terms = []
        for i in range(self.r, -1, -1):
            c = self.coeffs[i]
            if c:
                mono = "*".join(
                    part for part in (
                        "x" if i == 1 else f"x^{i}" if i else "",
                        "y" if self.r - i == 1 else f"y^{self.r - i}" if self.r - i else "",
                    ) if part
                )
                terms.append((mono if c == 1 else f"{c}*{mono}") if mono else str(c))
        return " + ".join(terms) if terms else "0"


def _same_space(f: FpHomPoly, g: FpHomPoly):
    if (f.p, f.r) != (g.p, g.r):
        raise UsageError(f"forms live in different spaces: (p={f.p}, r={f.r}) vs (p={g.p}, r={g.r})")


def gl2_det(g: Matrix2, p: int) -> int:
    a, b, c, d = g
    return (a * d - b * c) % p


def random_gl2(p: int, rng) -> Matrix2:
    while True:
        g = tuple(int(x) for x in rng.integers(0, p, size=4))
        if gl2_det(g, p):
            return g


def primitive_root(p: int) -> int:
    require_prime(p)
    if p == 2:
        return 1
    factors = [q for q in range(2, p) if (p - 1) % q == 0 and all(q % k for k in range(2, q))]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise ArithmeticError("no primitive root found")


def gl2_generators(p: int) -> List[Matrix2]:
    """Transvection, swap and diag(g, 1) for a primitive root g: these generate GL2(F_p)."""
    return [(1, 1, 0, 1), (0, 1, 1, 0), (primitive_root(p), 0, 0, 1)]


# -- the character-sum map -----------------------------------------------------


def _residue_s(p: int, r: int) -> int:
    return (r - 1) % (p - 1) + 1


def psi_apply(f: FpHomPoly, s: Optional[int] = None) -> FpHomPoly:
    """sum over (u, v) in F_p^2 of f(u, v) (vX - uY)^(p-1-s), by direct double loop.

    The result is indexed like any form: index j holds the X^j Y^(p-1-s-j) coefficient.
    """
    p, r = f.p, f.r
    if r < 1:
        raise UsageError("psi_apply needs degree r >= 1")
    if s is None:
        s = _residue_s(p, r)
    if not 1 <= s <= p - 1:
        raise UsageError(f"s must lie in 1..{p - 1}, got {s}")
    if (r - s) % (p - 1):
        raise UsageError(f"r = {r} is not congruent to s = {s} mod {p - 1}")
    n = p - 1 - s
    out = [0] * (n + 1)
    for u in range(p):
        for v in range(p):
            val = f(u, v)
            if not val:
                continue
            for j in range(n + 1):
                out[j] += val * binom(n, j) * pow(v, j, p) * pow(-u % p, n - j, p)
    return FpHomPoly(p, n, tuple(out))


def psi_matrix_entry(p: int, r: int, i: int, j: int) -> int:
    """Closed form for the X^j coefficient of psi_apply(x^i y^(r-i))."""
    require_prime(p)
    s = _residue_s(p, r)
    n = p - 1 - s
    if not 0 <= i <= r or not 0 <= j <= n:
        raise UsageError(f"index out of range: i in 0..{r}, j in 0..{n}")
    if i in (0, r) or (j - (i - s)) % (p - 1):
        return 0
    return ((-1) ** (j + s) * binom(n, j)) % p


@dataclass
class PsiCheck:
    p: int
    r: int
    vanishing_ok: bool
    top_value_ok: bool
    entries_ok: bool
    equivariance_ok: bool
    samples: int

    @property
    def passed(self) -> bool:
        return self.vanishing_ok and self.top_value_ok and self.entries_ok and self.equivariance_ok


def verify_psi(p: int, r: int, samples: int = 100, seed: int = 0) -> PsiCheck:
    """Check the psi value claims, the closed-form matrix and equivariance at one (p, r).

    Claims (for r = t(p-1) + s with t >= 2): psi kills x^i y^(r-i) and
    x^(r-i) y^i for i < s, and sends x^(l(p-1)) y^(r-l(p-1)) to X^(p-1-s)
    for 1 <= l <= t.  Equivariance carries the twist det(g)^s.
    """
    require_prime(p)
    s = _residue_s(p, r)
    t = (r - s) // (p - 1)
    if t < 2:
        raise UsageError(f"the psi value claims need t >= 2, got t={t}")
    n = p - 1 - s
    images = [psi_apply(FpHomPoly.monomial(p, r, i)) for i in range(r + 1)]
    vanishing = all(images[i].is_zero() and images[r - i].is_zero() for i in range(s))
    top = FpHomPoly.monomial(p, n, n)
    top_ok = all(images[l * (p - 1)] == top for l in range(1, t + 1))
    entries = all(images[i].coeffs[j] == psi_matrix_entry(p, r, i, j) for i in range(r + 1) for j in range(n + 1))
    rng = np.random.default_rng(seed + 1000 * p + r)
    equi = True
    for _ in range(samples):
        f = FpHomPoly(p, r, tuple(int(x) for x in rng.integers(0, p, size=r + 1)))
        g = random_gl2(p, rng)
        lhs = psi_apply(f.act(g))
        rhs = psi_apply(f).act(g).scale(pow(gl2_det(g, p), s, p))
        if lhs != rhs:
            equi = False
            break
    return PsiCheck(p, r, vanishing, top_ok, entries, equi, samples)


def psi_twisted_apply(f: FpHomPoly, h: int) -> FpHomPoly:
    """Divide out theta^h, apply psi to the cofactor, multiply theta^h back."""
    q = theta_divide(f, h)
    if isinstance(q, ThetaDivisionFailure):
        raise UsageError(f"form is only divisible by theta^{q.max_power}")
    image = psi_apply(q) if q.r >= 1 else q
    return image * theta_form(f.p) ** h if h else image


# -- theta division --------------------------------------------------------------


def theta_form(p: int) -> FpHomPoly:
    """x y^p - x^p y."""
    coeffs = [0] * (p + 2)
    coeffs[1] = 1
    coeffs[p] = -1
    return FpHomPoly(p, p + 1, tuple(coeffs))


@dataclass(frozen=True)
class ThetaDivisionFailure:
    requested: int
    max_power: int


def _divide_once(f: FpHomPoly) -> Optional[FpHomPoly]:
    p, r = f.p, f.r
    if r < p + 1:
        return None
    theta = theta_form(p).coeffs
    rem = list(f.coeffs)
    q = [0] * (r - p)
    inv = pow(theta[p], -1, p)
    for k in range(r - p - 1, -1, -1):
        c = rem[k + p] * inv % p
        q[k] = c
        if c:
            for i, tc in enumerate(theta):
                if tc:
                    rem[k + i] = (rem[k + i] - c * tc) % p
    if any(rem):
        return None
    return FpHomPoly(p, r - p - 1, tuple(q))


def theta_divide(f: FpHomPoly, k: int):
    """Quotient of f by theta^k, or a failure naming the largest power that divides."""
    if k < 0:
        raise UsageError("k must be nonnegative")
    cur = f
    for done in range(k):
        nxt = _divide_once(cur)
        if nxt is None:
            return ThetaDivisionFailure(k, done)
        cur = nxt
    return cur


# -- GL2-span closure -------------------------------------------------------------


def rref_mod_p(A: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over F_p; zero rows removed."""
    A = np.array(A, dtype=np.int64) % p
    if A.ndim != 2 or A.shape[0] == 0:
        return A.reshape(0, A.shape[-1] if A.ndim == 2 else 0), []
    rows, cols = A.shape
    pivots: List[int] = []
    k = 0
    for c in range(cols):
        if k == rows:
            break
        nz = np.nonzero(A[k:, c])[0]
        if nz.size == 0:
            continue
        i = k + int(nz[0])
        if i != k:
            A[[k, i]] = A[[i, k]]
        A[k] = A[k] * pow(int(A[k, c]), -1, p) % p
        col = A[:, c].copy()
        col[k] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            A[nzr] = (A[nzr] - np.outer(col[nzr], A[k])) % p
        pivots.append(c)
        k += 1
    return A[:k], pivots


def action_matrix(p: int, r: int, g: Matrix2) -> np.ndarray:
    """Row i is the coefficient vector of (x^i y^(r-i))|g."""
    return np.array([FpHomPoly.monomial(p, r, i).act(g).coeffs for i in range(r + 1)], dtype=np.int64)


@dataclass
class Subspace:
    p: int
    r: int
    basis: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    def contains(self, f: FpHomPoly) -> bool:
        stacked = np.vstack([self.basis, np.array(f.coeffs, dtype=np.int64)[None, :]])
        return rref_mod_p(stacked, self.p)[0].shape[0] == self.dim

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and (self.p, self.r) == (other.p, other.r)
            and np.array_equal(self.basis, other.basis)
        )


def span(forms: Sequence[FpHomPoly]) -> Subspace:
    forms = list(forms)
    if not forms:
        raise UsageError("need at least one form")
    p, r = forms[0].p, forms[0].r
    for f in forms:
        _same_space(forms[0], f)
    basis, _ = rref_mod_p(np.array([f.coeffs for f in forms], dtype=np.int64), p)
    return Subspace(p, r, basis)


def span_closure(gens: Sequence[FpHomPoly]) -> Subspace:
    """Smallest GL2(F_p)-stable subspace containing gens."""
    sub = span(gens)
    p, r = sub.p, sub.r
    mats = [action_matrix(p, r, g) for g in gl2_generators(p)]
    while True:
        blocks = [sub.basis] + [sub.basis @ M % p for M in mats]
        basis, _ = rref_mod_p(np.vstack(blocks), p)
        if basis.shape[0] == sub.dim:
            return sub
        sub = Subspace(p, r, basis)


def low_monomials(p: int, r: int, m: int) -> List[FpHomPoly]:
    """y^r, x y^(r-1), ..., x^m y^(r-m)."""
    return [FpHomPoly.monomial(p, r, i) for i in range(m + 1)]


def explicit_spanning_list(p: int, r: int, m: int) -> List[FpHomPoly]:
    """Explicit linear spanning set for the subrepresentation generated by low_monomials.

    The x^i y^(r-i) and x^(r-i) y^i for i <= m, plus for every i in 0..p-2 and
    j = i - k (k = 0..m) the residue-class sums
    sum over n with r-m > n(p-1)+i > m of C(r-m, n(p-1)+j) x^(n(p-1)+i) y^(r-n(p-1)-i),
    and their images under x <-> y.
    """
    out = [FpHomPoly.monomial(p, r, i) for i in range(m + 1)]
    out += [FpHomPoly.monomial(p, r, r - i) for i in range(m + 1)]
    for i in range(p - 1):
        for k in range(m + 1):
            j = i - k
            coeffs = [0] * (r + 1)
            n = -((i - m) // (p - 1)) - 1
            while n * (p - 1) + i < r - m:
                e = n * (p - 1) + i
                if e > m:
                    coeffs[e] += binom(r - m, n * (p - 1) + j)
                n += 1
            f = FpHomPoly(p, r, tuple(coeffs))
            out.append(f)
            out.append(FpHomPoly(p, r, tuple(reversed(f.coeffs))))
    return out
