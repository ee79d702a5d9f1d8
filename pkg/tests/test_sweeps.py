import random

from theta_slope.identities import theta_multiplicity
from theta_slope.sweeps import (
    SweepSummary,
    random_theta_case,
    sample_weights,
    sum_congruence_points,
    sweep_inversion,
    sweep_kappa,
    vector_with_multiplicity,
)


def test_summary_records_first_failure_only():
    s = SweepSummary("x")
    s.record(True, (1,))
    s.record(False, (2,))
    s.record(False, (3,))
    assert (s.checked, s.passed, s.first_failure, s.ok) == (3, 1, (2,), False)


def test_sample_weights_satisfy_grid_conditions():
    for p in (5, 7, 11):
        for m in (1, 2, 3):
            for L in range(1, m + 1):
                ws = sample_weights(p, m, L)
                assert len(ws) == 3
                assert all(w > (m + 1) * (p + 1) and (w - 2 * L) % (p - 1) == 0 for w in ws)


def test_grid_points_respect_preconditions():
    assert all(r >= 5 for r, _ in sum_congruence_points(1, 5, 30))
    pts = list(sum_congruence_points(4, 5, 200))
    assert pts and all(((r - 1) // 4) % 5 == 0 and (r - 1) % 4 + 1 != 1 for r, _ in pts)


def test_multiplicity_of_constructed_vectors():
    rng = random.Random(1)
    for k in range(5):
        q = [rng.randint(1, 5) for _ in range(3)]
        assert theta_multiplicity(vector_with_multiplicity(k, q)) == k
    C, alpha, expected = random_theta_case(rng, False)
    assert theta_multiplicity(C) == expected < alpha


def test_inversion_and_kappa_sweeps_pass():
    assert all(s.ok for s in sweep_inversion())
    for variant in ("binom-ip", "binom-i"):
        s = sweep_kappa(variant=variant)
        assert s.ok and s.checked > 0 and s.skipped > 0
