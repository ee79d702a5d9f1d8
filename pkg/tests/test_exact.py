from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from theta_slope.exact import (
    INF,
    MPoly,
    PolyMatrix,
    RatFun,
    UsageError,
    binom,
    det_fraction_free,
    divides,
    exact_div,
    falling,
    fmt_rational,
    gbinom,
    is_prime,
    kernel_basis,
    padic_valuation,
    parse_poly,
    poly_gcd,
    r,
    rational_roots,
    rising,
    s,
    t,
)

small = st.integers(min_value=-6, max_value=6)
polys = st.lists(st.tuples(small, st.integers(0, 3), st.integers(0, 2)), max_size=5).map(
    lambda terms: sum((c * r ** i * s ** j for c, i, j in terms), MPoly.const(0))
)


def test_extended_binomial_conventions():
    assert binom(5, 2) == 10
    assert binom(5, -1) == 0
    assert binom(3, 5) == 0
    assert binom(-1, 2) == 1
    assert binom(-2, 2) == 3


def test_falling_and_rising():
    assert falling(5, 3) == 60
    assert rising(3, 3) == 60
    assert rising(7, 0) == 1
    assert rising(r, 2) == r * r + r


def test_valuation_and_formatting():
    assert padic_valuation(Fraction(243, 2), 3) == 5
    assert padic_valuation(Fraction(2, 9), 3) == -2
    assert padic_valuation(0, 5) == INF
    assert fmt_rational(Fraction(243, 2)) == "243/2"
    assert fmt_rational(-3) == "-3"
    with pytest.raises(UsageError):
        padic_valuation(3, 4)


def test_primes():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_canonical_text_round_trips():
    f = parse_poly("-1/2*r^2*s + 3")
    assert str(f) == "-1/2*r^2*s + 3"
    assert parse_poly(str(f)) == f


def test_symbolic_binomial_matches_integers():
    g = gbinom(r, 3)
    for n in range(-4, 9):
        assert g(r=n) == binom(n, 3)
    assert gbinom(r, -1).is_zero()


def test_gcd_and_exact_division():
    assert poly_gcd((r - 1) * (r - 2), (r - 2) * (r + 5)) == r - 2
    assert exact_div(r * r - 1, r - 1) == r + 1
    assert exact_div(r * r + 1, r - 1) is None
    assert divides(r - 1, r * r - 1)


def test_rational_roots_of_numerator():
    assert rational_roots((r - 1) * (2 * r + 1)) == [Fraction(-1, 2), Fraction(1)]
    assert rational_roots(RatFun(r - 3) / RatFun(r + 1)) == [Fraction(3)]
    assert rational_roots(r * r + 1) == []


def test_determinant_and_kernel():
    M = PolyMatrix.from_rows([[1, r], [r, r * r]])
    assert det_fraction_free(M).is_zero()
    (k,) = kernel_basis(M)
    assert k[0] == RatFun.coerce(1)
    assert all(e.is_zero() for e in M.apply(k))
    N = PolyMatrix.from_rows([[r, 1, 0], [0, r, 1], [1, 0, r]])
    assert det_fraction_free(N) == RatFun(r ** 3 + 1)


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_ring_laws(f, g):
    assert f * g == g * f
    assert (f + g) - g == f
    assert parse_poly(str(f)) == f
    if not g.is_zero():
        assert exact_div(f * g, g) == f


@settings(max_examples=40, deadline=None)
@given(polys, polys, st.integers(-5, 5), st.integers(-5, 5))
def test_evaluation_is_a_homomorphism(f, g, a, b):
    assert (f * g)(r=a, s=b) == f(r=a, s=b) * g(r=a, s=b)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4))
def test_roots_of_product_of_linear_factors(rs):
    f = MPoly.const(1)
    for a in rs:
        f = f * (r - a)
    assert rational_roots(f) == sorted({Fraction(a) for a in rs})


def test_ratfun_normalises():
    x = RatFun((r - 1) * (r + 2)) / RatFun((r + 2) * t)
    assert x == RatFun(r - 1) / RatFun(t)
    assert x(r=3, t=2) == 1
