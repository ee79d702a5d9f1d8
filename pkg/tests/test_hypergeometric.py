import pytest

from theta_slope import hypergeometric as hg
from theta_slope.exact import RatFun, UsageError, r, s


def test_first_kernel_coefficient():
    num, den = hg.kernel_coefficient(1, 0)
    assert RatFun(num) / RatFun(den) == RatFun(s + 1 + r) / RatFun(s)


def test_all_families_hold_up_to_twelve():
    results = hg.verify_hypergeometric(12)
    assert [h.alpha for h in results] == list(range(1, 13))
    for h in results:
        assert h.passed, h.first_failure()
        assert set(h.xi_w_ok) == set(range(1, h.alpha + 1))


def test_code_path_reaches_thirty_six():
    assert hg.check_xi(36)
    assert hg.check_h(36)
    for w in (1, 18, 36):
        assert hg.check_xi_w(36, w)


def test_perturbed_coefficient_is_detected(monkeypatch):
    original = hg.kernel_coefficient

    def perturbed(alpha, j):
        num, den = original(alpha, j)
        return (num * 2, den) if j == 1 else (num, den)

    monkeypatch.setattr(hg, "kernel_coefficient", perturbed)
    assert not hg.check_xi(3)
    assert not hg.check_xi_w(3, 2)
    res = hg.verify_alpha(3)
    assert not res.passed and res.first_failure() == (3, "xi")


def test_shifted_right_side_is_detected():
    lhs, rhs = hg.xi_w_sides(4, 2)
    assert lhs == rhs
    assert lhs != rhs + s


def test_bad_alpha_rejected():
    with pytest.raises(UsageError):
        hg.verify_alpha(0)
    with pytest.raises(UsageError):
        hg.verify_hypergeometric(0)
