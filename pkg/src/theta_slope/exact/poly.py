"""Sparse multivariate polynomials over Q in the variables r, s, t, p, and
their fraction field.

Exponent vectors are 4-tuples ordered (r, s, t, p).  Terms print in graded
lexicographic order with r < s < t < p, highest term first.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd, lcm as ilcm
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .rational import UsageError, binom, fmt_rational, to_fraction

VARS = ("r", "s", "t", "p")
NVARS = len(VARS)
_ZERO_EXP = (0,) * NVARS

Exps = Tuple[int, ...]


def _order_key(e: Exps):
    return (sum(e), e[3], e[2], e[1], e[0])


def _var_index(v) -> int:
    if isinstance(v, int):
        return v
    try:
        return VARS.index(v)
    except ValueError:
        raise UsageError(f"unknown variable {v!r}; expected one of {VARS}") from None


class MPoly:
    """Immutable polynomial; ``terms`` maps exponent tuples to nonzero Fractions."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Exps, object]] = None):
        clean: Dict[Exps, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = to_fraction(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exps, Fraction]) -> "MPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "MPoly":
        c = to_fraction(c)
        return cls._raw({_ZERO_EXP: c} if c else {})

    @classmethod
    def var(cls, name) -> "MPoly":
        e = [0] * NVARS
        e[_var_index(name)] = 1
        return cls._raw({tuple(e): Fraction(1)})

    @classmethod
    def coerce(cls, x) -> "MPoly":
        if isinstance(x, MPoly):
            return x
        return cls.const(x)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ZERO_EXP in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise UsageError(f"{self} is not constant")
        return self.terms.get(_ZERO_EXP, Fraction(0))

    def degree(self, v=None) -> int:
        """Degree in variable ``v`` (total degree when omitted); -1 for zero."""
        if not self.terms:
            return -1
        if v is None:
            return max(sum(e) for e in self.terms)
        i = _var_index(v)
        return max(e[i] for e in self.terms)

    def variables(self) -> Tuple[int, ...]:
        seen = [False] * NVARS
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    seen[i] = True
        return tuple(i for i in range(NVARS) if seen[i])

    def leading_term(self) -> Tuple[Exps, Fraction]:
        e = max(self.terms, key=_order_key)
        return e, self.terms[e]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self):
        return MPoly._raw({e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, MPoly):
            if isinstance(other, RatFun):
                return NotImplemented
            other = MPoly.const(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s += c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            if isinstance(other, RatFun):
                return NotImplemented
            other = MPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return MPoly.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            if isinstance(other, RatFun):
                return NotImplemented
            c = to_fraction(other)
            if not c:
                return MPoly._raw({})
            return MPoly._raw({e: k * c for e, k in self.terms.items()})
        if len(self.terms) > len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out: Dict[Exps, Fraction] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3])
                out[e] = out.get(e, 0) + ca * cb
        return MPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise UsageError("negative power of a polynomial")
        out = MPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __truediv__(self, other):
        if isinstance(other, (MPoly, RatFun)):
            return RatFun(self) / other
        c = to_fraction(other)
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return self * (1 / c)

    def __rtruediv__(self, other):
        return RatFun(MPoly.coerce(other)) / self

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.terms == other.terms
        if isinstance(other, RatFun):
            return other == self
        try:
            c = to_fraction(other)
        except TypeError:
            return NotImplemented
        return self.terms == ({_ZERO_EXP: c} if c else {})

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- structure ----------------------------------------------------------

    def coefficients_in(self, v) -> Dict[int, "MPoly"]:
        """View as a polynomial in ``v`` with coefficients free of ``v``."""
        i = _var_index(v)
        out: Dict[int, Dict[Exps, Fraction]] = {}
        for e, c in self.terms.items():
            d = e[i]
            rest = e[:i] + (0,) + e[i + 1:]
            out.setdefault(d, {})[rest] = c
        return {d: MPoly._raw(t) for d, t in out.items()}

    @staticmethod
    def from_coefficients(coeffs: Mapping[int, "MPoly"], v) -> "MPoly":
        i = _var_index(v)
        out: Dict[Exps, Fraction] = {}
        for d, poly in coeffs.items():
            for e, c in poly.terms.items():
                e2 = e[:i] + (e[i] + d,) + e[i + 1:]
                out[e2] = out.get(e2, 0) + c
        return MPoly._raw({e: c for e, c in out.items() if c})

    def primitive(self) -> Tuple[Fraction, "MPoly"]:
        """Split into (unit, primitive integer polynomial with positive leading coefficient)."""
        if not self.terms:
            return Fraction(1), self
        den = 1
        for c in self.terms.values():
            den = ilcm(den, c.denominator)
        g = 0
        for c in self.terms.values():
            g = igcd(g, c.numerator * (den // c.denominator))
        unit = Fraction(g, den)
        if self.leading_coefficient() < 0:
            unit = -unit
        if unit == 1:
            return unit, self
        inv = 1 / unit
        return unit, MPoly._raw({e: c * inv for e, c in self.terms.items()})

    def subs(self, mapping: Mapping[object, object]) -> "MPoly":
        """Substitute polynomials (or numbers) for variables."""
        repl = {_var_index(k): MPoly.coerce(v) for k, v in mapping.items()}
        powers: Dict[Tuple[int, int], MPoly] = {}

        def pw(i, k):
            key = (i, k)
            if key not in powers:
                powers[key] = repl[i] ** k
            return powers[key]

        out = MPoly._raw({})
        for e, c in self.terms.items():
            kept = list(e)
            term = MPoly.const(c)
            for i in repl:
                if e[i]:
                    term = term * pw(i, e[i])
                    kept[i] = 0
            out = out + term * MPoly._raw({tuple(kept): Fraction(1)})
        return out

    def __call__(self, **values) -> Fraction:
        """Evaluate at rational values; every variable present must be given."""
        idx = {_var_index(k): to_fraction(v) for k, v in values.items()}
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    if i not in idx:
                        raise UsageError(f"no value given for {VARS[i]}")
                    term *= idx[i] ** k
            total += term
        return total

    # -- printing -----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_order_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (VARS[i] if k == 1 else f"{VARS[i]}^{k}") for i, k in enumerate(e) if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = fmt_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{fmt_rational(a)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"MPoly({self})"


r, s, t, p = (MPoly.var(v) for v in VARS)
ZERO = MPoly.const(0)
ONE = MPoly.const(1)


def parse_poly(text: str) -> MPoly:
    """Parse the canonical text form produced by ``str(MPoly)``."""
    text = text.strip()
    if text == "0":
        return ZERO
    out = ZERO
    tokens = text.replace(" - ", " + -").split(" + ")
    for tok in tokens:
        tok = tok.strip()
        neg = tok.startswith("-")
        if neg:
            tok = tok[1:]
        coeff = Fraction(1)
        e = [0] * NVARS
        for factor in tok.split("*"):
            if factor[0].isalpha():
                name, _, k = factor.partition("^")
                e[_var_index(name)] += int(k) if k else 1
            else:
                coeff *= Fraction(factor)
        out = out + MPoly({tuple(e): -coeff if neg else coeff})
    return out


def gbinom(P, k: int) -> MPoly:
    """P(P-1)...(P-k+1)/k! as a polynomial; zero for k < 0."""
    if k < 0:
        return ZERO
    if not isinstance(P, MPoly):
        return MPoly.const(binom(int(P), k)) if Fraction(P).denominator == 1 else _gbinom_poly(MPoly.const(P), k)
    if P.is_constant() and P.constant_value().denominator == 1:
        return MPoly.const(binom(int(P.constant_value()), k))
    return _gbinom_poly(P, k)


def _gbinom_poly(P: MPoly, k: int) -> MPoly:
    out = ONE
    fact = 1
    for i in range(k):
        out = out * (P - i)
        fact *= i + 1
    return out * Fraction(1, fact)


# -- exact division and gcd ---------------------------------------------------


def _main_var(f: MPoly) -> int:
    vs = f.variables()
    return vs[-1] if vs else -1


def exact_div(f: MPoly, g: MPoly) -> Optional[MPoly]:
    """Return h with f == g*h, or None when g does not divide f."""
    if g.is_zero():
        raise UsageError("division by the zero polynomial")
    if f.is_zero():
        return ZERO
    if g.is_constant():
        return f * (1 / g.constant_value())
    v = _main_var(g)
    G = g.coefficients_in(v)
    n = max(G)
    lc = G[n]
    F = f.coefficients_in(v)
    Q: Dict[int, MPoly] = {}
    while F:
        m = max(F)
        if m < n:
            return None
        q = exact_div(F[m], lc)
        if q is None:
            return None
        Q[m - n] = q
        for i, gi in G.items():
            k = i + m - n
            val = F.get(k, ZERO) - q * gi
            if val.is_zero():
                F.pop(k, None)
            else:
                F[k] = val
    return MPoly.from_coefficients(Q, v)


def divides(f: MPoly, g: MPoly) -> bool:
    """True iff g = f*h for a polynomial h."""
    if f.is_zero():
        raise UsageError("divides: f must be nonzero")
    return exact_div(g, f) is not None


def _content_in(f: MPoly, v: int) -> MPoly:
    out = ZERO
    for c in f.coefficients_in(v).values():
        out = poly_gcd(out, c)
        if out.is_constant():
            return ONE
    return out


def _prem(a: MPoly, b: MPoly, v: int) -> MPoly:
    B = b.coefficients_in(v)
    db = max(B)
    lcb = B[db]
    xv = MPoly.var(v)
    while not a.is_zero():
        da = a.degree(v)
        if da < db:
            break
        lca = a.coefficients_in(v)[da]
        a = a * lcb - lca * (xv ** (da - db)) * b
    return a


def poly_gcd(f: MPoly, g: MPoly) -> MPoly:
    """Greatest common divisor, normalised to a primitive integer polynomial
    with positive leading coefficient (zero only if both inputs are zero)."""
    if f.is_zero():
        return g.primitive()[1]
    if g.is_zero():
        return f.primitive()[1]
    if f.is_constant() or g.is_constant():
        return ONE
    vf, vg = set(f.variables()), set(g.variables())
    v = max(vf | vg)
    if v not in vf:
        return poly_gcd(f, _content_in(g, v))
    if v not in vg:
        return poly_gcd(_content_in(f, v), g)
    cf, cg = _content_in(f, v), _content_in(g, v)
    c = poly_gcd(cf, cg)
    a = exact_div(f, cf)
    b = exact_div(g, cg)
    if a.degree(v) < b.degree(v):
        a, b = b, a
    if len(vf | vg) == 1:
        h = _univariate_gcd(a, b, v)
    else:
        while not b.is_zero() and b.degree(v) > 0:
            rem = _prem(a, b, v)
            a = b
            b = ZERO if rem.is_zero() else exact_div(rem, _content_in(rem, v))
        h = a if b.is_zero() else ONE
        if not h.is_constant():
            h = exact_div(h, _content_in(h, v))
    return (c * h).primitive()[1]


def _univariate_gcd(a: MPoly, b: MPoly, v: int) -> MPoly:
    A = _to_dense(a, v)
    B = _to_dense(b, v)
    while B:
        A, B = B, _dense_rem(A, B)
    return _from_dense(A, v)


def _to_dense(f: MPoly, v: int):
    out = [Fraction(0)] * (f.degree(v) + 1)
    for e, c in f.terms.items():
        out[e[v]] = c
    return out


def _from_dense(coeffs, v: int) -> MPoly:
    terms = {}
    for d, c in enumerate(coeffs):
        if c:
            e = [0] * NVARS
            e[v] = d
            terms[tuple(e)] = c
    return MPoly._raw(terms)


def _dense_rem(A, B):
    A = list(A)
    db = len(B) - 1
    inv = 1 / B[-1]
    while len(A) - 1 >= db and A:
        q = A[-1] * inv
        shift = len(A) - 1 - db
        for i, bc in enumerate(B):
            A[i + shift] -= q * bc
        A.pop()
        while A and not A[-1]:
            A.pop()
    return A


# -- rational functions -------------------------------------------------------


class RatFun:
    """Element of Q(r, s, t, p) in canonical form.

    ``num/den`` with gcd(num, den) = 1 and ``den`` a primitive integer
    polynomial with positive leading coefficient; zero is 0/1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1, *, _normal=False):
        num = MPoly.coerce(num)
        den = MPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _normal:
            num, den = _normalise(num, den)
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, x) -> "RatFun":
        if isinstance(x, RatFun):
            return x
        if isinstance(x, MPoly):
            return cls(x, ONE, _normal=True)
        return cls(MPoly.const(x), ONE, _normal=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> MPoly:
        if not self.is_polynomial():
            raise UsageError(f"{self} is not a polynomial")
        return self.num

    def __neg__(self):
        return RatFun(-self.num, self.den, _normal=True)

    def __add__(self, other):
        other = RatFun.coerce(other)
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        if other.den.is_constant():
            return RatFun(self.num + other.num * self.den, self.den, _normal=True)
        if self.den.is_constant():
            return RatFun(self.num * other.den + other.num, other.den, _normal=True)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-RatFun.coerce(other))

    def __rsub__(self, other):
        return RatFun.coerce(other) - self

    def __mul__(self, other):
        other = RatFun.coerce(other)
        if self.is_zero() or other.is_zero():
            return RatFun(ZERO, ONE, _normal=True)
        if self.den.is_constant() and other.den.is_constant():
            return RatFun(self.num * other.num, ONE, _normal=True)
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1, d2 = exact_div(self.num, g1), exact_div(other.den, g1)
        n2, d1 = exact_div(other.num, g2), exact_div(self.den, g2)
        num, den = n1 * n2, d1 * d2
        unit, den = den.primitive()
        return RatFun(num * (1 / unit), den, _normal=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RatFun.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return self * RatFun(other.den, other.num)

    def __rtruediv__(self, other):
        return RatFun.coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFun(self.den, self.num) ** (-n)
        return RatFun(self.num ** n, self.den ** n, _normal=True)

    def __eq__(self, other):
        try:
            other = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.den == ONE:
            return hash(self.num)
        return hash((self.num, self.den))

    def subs(self, mapping) -> "RatFun":
        return RatFun(self.num.subs(mapping), self.den.subs(mapping))

    def __call__(self, **values) -> Fraction:
        d = self.den(**values)
        if d == 0:
            raise ZeroDivisionError(f"pole of {self} at {values}")
        return self.num(**values) / d

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFun({self})"


def _normalise(num: MPoly, den: MPoly):
    if num.is_zero():
        return ZERO, ONE
    if not den.is_constant():
        g = poly_gcd(num, den)
        if not g.is_constant():
            num = exact_div(num, g)
            den = exact_div(den, g)
    unit, den = den.primitive()
    if unit != 1:
        num = num * (1 / unit)
    return num, den


def parse_ratfun(text: str) -> RatFun:
    text = text.strip()
    if text.startswith("(") and ")/(" in text:
        a, b = text[1:-1].split(")/(")
        return RatFun(parse_poly(a), parse_poly(b))
    return RatFun(parse_poly(text))


def as_ratfun(x) -> RatFun:
    return RatFun.coerce(x)


def product(items: Iterable, start=None):
    out = start if start is not None else RatFun.coerce(1)
    for x in items:
        out = out * x
    return out
