import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from theta_slope.exact import UsageError
from theta_slope.oracle import (
    FpHomPoly,
    ThetaDivisionFailure,
    explicit_spanning_list,
    gl2_det,
    gl2_generators,
    low_monomials,
    primitive_root,
    psi_apply,
    psi_matrix_entry,
    psi_twisted_apply,
    span,
    span_closure,
    theta_divide,
    theta_form,
    verify_psi,
)


def form(p, r, terms):
    """terms: {x-exponent: coefficient}."""
    coeffs = [0] * (r + 1)
    for i, c in terms.items():
        coeffs[i] = c
    return FpHomPoly(p, r, tuple(coeffs))


def test_form_reduces_and_checks_length():
    assert form(5, 2, {0: 7}).coeffs == (2, 0, 0)
    with pytest.raises(UsageError):
        FpHomPoly(5, 2, (1, 2))


def test_psi_examples():
    assert psi_apply(form(3, 6, {2: 1})) == form(3, 0, {0: 1})
    assert psi_apply(form(3, 6, {0: 1})).is_zero()
    assert psi_apply(form(5, 9, {4: 1})) == form(5, 3, {3: 1})
    with pytest.raises(UsageError):
        psi_apply(form(5, 9, {4: 1}), s=2)


def test_psi_matrix_entry_examples():
    assert all(psi_matrix_entry(3, 6, 0, j) == 0 for j in range(1))
    assert psi_matrix_entry(3, 6, 2, 0) == 1
    assert psi_matrix_entry(5, 9, 3, 2) == 2
    with pytest.raises(UsageError):
        psi_matrix_entry(5, 9, 10, 0)


def test_psi_matrix_entries_match_direct_loop_for_all_small_weights():
    for p in (3, 5):
        for r in range(1, 4 * (p + 1) + 1):
            s = (r - 1) % (p - 1) + 1
            for i in range(r + 1):
                image = psi_apply(FpHomPoly.monomial(p, r, i))
                for j in range(p - s):
                    assert image.coeffs[j] == psi_matrix_entry(p, r, i, j), (p, r, i, j)


def test_psi_value_claims_and_equivariance():
    for p, r in [(3, 5), (5, 9), (5, 14), (7, 20)]:
        assert verify_psi(p, r, samples=25).passed
    with pytest.raises(UsageError):
        verify_psi(5, 6)  # t = 1


def test_kernel_contains_theta_multiples_and_low_monomials():
    rng = np.random.default_rng(3)
    for p in (3, 5, 7):
        for r in range(2 * (p - 1) + 1, 3 * (p + 1)):
            s = (r - 1) % (p - 1) + 1
            for i in range(s):
                assert psi_apply(FpHomPoly.monomial(p, r, i)).is_zero()
            g = FpHomPoly(p, r - p - 1, tuple(int(x) for x in rng.integers(0, p, r - p)))
            assert psi_apply(theta_form(p) * g).is_zero()


def test_theta_division_examples():
    p = 3
    theta = theta_form(p)
    assert theta_divide(form(3, 4, {1: 1, 3: -1}), 1) == form(3, 0, {0: 1})
    f = form(3, 8, {2: 1, 6: -1})
    q = theta_divide(f, 1)
    assert not isinstance(q, ThetaDivisionFailure)
    assert q * theta == f
    fail = theta_divide(form(3, 4, {4: 1}), 1)
    assert isinstance(fail, ThetaDivisionFailure) and fail.max_power == 0


def test_small_weight_theta_identities():
    # settled-by-hand cases: theta x^4 at p = 3 and theta (4y^6 + 3x^4y^2) at p = 5
    assert theta_form(3) * form(3, 4, {4: 1}) == form(3, 8, {5: 1, 7: -1})
    lhs = theta_form(5) * form(5, 6, {0: 4, 4: 3})
    assert lhs == form(5, 12, {1: -1, 5: -1, 9: 2})


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(0, 6), st.integers(0, 3), st.randoms(use_true_random=False))
def test_theta_division_round_trip(p, deg, k, rnd):
    g = FpHomPoly(p, deg, tuple(rnd.randrange(p) for _ in range(deg + 1)))
    f = g * theta_form(p) ** k if k else g
    q = theta_divide(f, k)
    assert not isinstance(q, ThetaDivisionFailure)
    assert (q * theta_form(p) ** k if k else q) == f


def test_twisted_psi_on_theta_multiple():
    p = 5
    g = form(5, 9, {4: 1})
    out = psi_twisted_apply(g * theta_form(p), 1)
    assert out == psi_apply(g) * theta_form(p)


def test_generators():
    assert primitive_root(7) == 3
    for p in (3, 5, 7):
        assert all(gl2_det(g, p) for g in gl2_generators(p))


def test_action_is_a_right_action():
    rng = np.random.default_rng(5)
    p, r = 5, 7
    f = FpHomPoly(p, r, tuple(int(x) for x in rng.integers(0, p, r + 1)))
    g, h = (1, 2, 3, 2), (2, 0, 1, 3)
    gh = (g[0] * h[0] + g[1] * h[2], g[0] * h[1] + g[1] * h[3], g[2] * h[0] + g[3] * h[2], g[2] * h[1] + g[3] * h[3])
    gh = tuple(x % p for x in gh)
    assert f.act(g).act(h) == f.act(gh)


def test_span_closure_examples():
    whole = span([FpHomPoly.monomial(3, 6, i) for i in range(7)])
    assert span_closure([FpHomPoly.monomial(3, 6, i) for i in range(7)]).dim == 7 == whole.dim
    assert span_closure(low_monomials(3, 6, 0)) == span(explicit_spanning_list(3, 6, 0))
    assert span_closure(low_monomials(5, 28, 1)) == span(explicit_spanning_list(5, 28, 1))
    with pytest.raises(UsageError):
        span([FpHomPoly.monomial(3, 6, 0), FpHomPoly.monomial(3, 5, 0)])


def test_span_closure_matches_explicit_list_on_grid():
    for p in (3, 5, 7):
        for m in range(3):
            if p <= m + 1:
                continue
            for r in range(2 * m + 2, 8 * (p + 1) + 1):
                assert span_closure(low_monomials(p, r, m)) == span(explicit_spanning_list(p, r, m)), (p, m, r)
