"""Dense matrices over Q(r, s, t, p): fraction-free determinant and an
echelonised right kernel."""

from __future__ import annotations

from math import lcm as ilcm
from typing import Iterable, List, Optional, Sequence

from .poly import ONE, ZERO, MPoly, RatFun, exact_div, poly_gcd
from .rational import UsageError


class PolyMatrix:
    """rows x cols matrix stored row-major as RatFun entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Optional[Sequence] = None):
        if rows < 0 or cols < 0:
            raise UsageError("matrix dimensions must be nonnegative")
        if entries is None:
            entries = [RatFun.coerce(0)] * (rows * cols)
        entries = [RatFun.coerce(e) for e in entries]
        if len(entries) != rows * cols:
            raise UsageError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "PolyMatrix":
        rows = [list(row) for row in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(row) != cols for row in rows):
            raise UsageError("ragged rows")
        return cls(len(rows), cols, [e for row in rows for e in row])

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def __setitem__(self, ij, value):
        i, j = ij
        self.entries[i * self.cols + j] = RatFun.coerce(value)

    def row(self, i: int) -> List[RatFun]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> List[RatFun]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def row_list(self) -> List[List[RatFun]]:
        return [self.row(i) for i in range(self.rows)]

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "PolyMatrix":
        rows, cols = list(rows), list(cols)
        return PolyMatrix(len(rows), len(cols), [self[i, j] for i in rows for j in cols])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def apply(self, vec: Sequence) -> List[RatFun]:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise UsageError("vector length does not match column count")
        out = []
        for i in range(self.rows):
            acc = RatFun.coerce(0)
            for j in range(self.cols):
                e = self[i, j]
                if e and vec[j]:
                    acc = acc + e * vec[j]
            out.append(acc)
        return out

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, [fn(e) for e in self.entries])

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def __str__(self):
        return "\n".join("[" + ", ".join(str(e) for e in self.row(i)) + "]" for i in range(self.rows))

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols})"


def _clear_row(row: Sequence[RatFun]):
    """Scale a row of RatFuns to MPolys; return (polys, scale) with polys = scale*row."""
    den = ONE
    for e in row:
        if not e.den.is_constant() and e.den != den:
            den = den * exact_div(e.den, poly_gcd(den, e.den))
    out = []
    for e in row:
        if e.is_zero():
            out.append(ZERO)
        else:
            out.append(e.num * exact_div(den, e.den))
    # also clear rational coefficients so elimination stays in Z[...]
    k = 1
    for f in out:
        for c in f.terms.values():
            k = ilcm(k, c.denominator)
    if k != 1:
        out = [f * k for f in out]
    return out, den * k


def _bareiss_echelon(rows: List[List[MPoly]]):
    """Fraction-free row echelon form in place.

    Returns (pivot_columns, number_of_row_swaps).  Every stored entry is a
    minor of the input, so the divisions by the previous pivot are exact.
    """
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    prev = ONE
    pivots: List[int] = []
    swaps = 0
    k = 0
    for c in range(nc):
        if k == nr:
            break
        best = None
        for i in range(k, nr):
            if not rows[i][c].is_zero():
                if best is None or len(rows[i][c].terms) < len(rows[best][c].terms):
                    best = i
        if best is None:
            continue
        if best != k:
            rows[k], rows[best] = rows[best], rows[k]
            swaps += 1
        piv = rows[k][c]
        for i in range(k + 1, nr):
            lead = rows[i][c]
            row_i = rows[i]
            row_k = rows[k]
            for j in range(c + 1, nc):
                val = piv * row_i[j]
                if not lead.is_zero() and not row_k[j].is_zero():
                    val = val - lead * row_k[j]
                if prev != ONE and not val.is_zero():
                    q = exact_div(val, prev)
                    if q is None:
                        raise ArithmeticError("fraction-free elimination lost exactness")
                    val = q
                row_i[j] = val
            row_i[c] = ZERO
        prev = piv
        pivots.append(c)
        k += 1
    return pivots, swaps


def det_fraction_free(M: PolyMatrix) -> RatFun:
    """Exact determinant by Bareiss elimination after clearing denominators."""
    if M.rows != M.cols:
        raise UsageError(f"determinant of a non-square {M.rows}x{M.cols} matrix")
    n = M.rows
    if n == 0:
        return RatFun.coerce(1)
    rows = []
    scale = ONE
    for i in range(n):
        polys, k = _clear_row(M.row(i))
        rows.append(polys)
        scale = scale * k
    pivots, swaps = _bareiss_echelon(rows)
    if len(pivots) < n:
        return RatFun.coerce(0)
    d = rows[n - 1][n - 1]
    if swaps % 2:
        d = -d
    return RatFun(d, scale)


def _rref(vectors: List[List[RatFun]]) -> List[List[RatFun]]:
    """Reduced row echelon form of a list of vectors, zero rows dropped."""
    rows = [list(v) for v in vectors]
    if not rows:
        return []
    nc = len(rows[0])
    k = 0
    for c in range(nc):
        piv = None
        for i in range(k, len(rows)):
            if not rows[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        rows[k], rows[piv] = rows[piv], rows[k]
        inv = 1 / rows[k][c]
        rows[k] = [e * inv if e else e for e in rows[k]]
        for i in range(len(rows)):
            if i != k and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], rows[k])]
        k += 1
        if k == len(rows):
            break
    return rows[:k]


def kernel_basis(M: PolyMatrix) -> List[List[RatFun]]:
    """Right null space of M as reduced echelon rows (leading entries 1,
    strictly increasing pivot positions).  A 0-row matrix gives the
    standard basis."""
    n = M.cols
    if M.rows == 0:
        return [[RatFun.coerce(1 if i == j else 0) for j in range(n)] for i in range(n)]
    rows = [_clear_row(M.row(i))[0] for i in range(M.rows)]
    pivots, _ = _bareiss_echelon(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x: List[RatFun] = [RatFun.coerce(0)] * n
        x[f] = RatFun.coerce(1)
        for k in range(len(pivots) - 1, -1, -1):
            c = pivots[k]
            total = RatFun.coerce(0)
            for j in range(c + 1, n):
                if not rows[k][j].is_zero() and not x[j].is_zero():
                    total = total + x[j] * RatFun(rows[k][j], ONE, _normal=True)
            x[c] = -total / RatFun(rows[k][c], ONE, _normal=True)
        basis.append(x)
    return _rref(basis)
