"""Walk through the binomial-sum congruences with exact big integers.

Run: python3 demos/01_binomial_congruences.py
"""

from theta_slope.exact import fmt_rational
from theta_slope.identities import eta, theta_factor, verify_binomial_sum_congruence
from theta_slope.sweeps import sweep_alternating, sweep_sum_congruence

# %% one point of the power-sum congruence: C(8,2)+C(8,4)+C(8,6) against (t/s)p at p = 3
rep = verify_binomial_sum_congruence(1, 3, 8)
print("value", rep.value, "target", fmt_rational(rep.target))
print("difference", fmt_rational(rep.value - rep.target), "has 3-adic valuation", rep.achieved_valuation)

# %% the quadratic refinement solves for its two constants from three weights
rep = verify_binomial_sum_congruence(2, 7, 40)
print("A_s =", fmt_rational(rep.extra["A_s"]), " B_s =", fmt_rational(rep.extra["B_s"]), " passed:", rep.passed)

# %% sweep the first part over a modest grid, one summary per prime
for summary in sweep_sum_congruence(1, (3, 5, 7), r_max=400):
    print(f"{summary.label:12s} {summary.passed}/{summary.checked}")

# %% alternating differences vanish below degree L and give N^L at L
print("alternating:", sweep_alternating(L_max=3, b_max=2, N_max=4, span=10).ok)

# %% the boundary-corrected binomial: note the doubling at the origin
print([eta(x, 0) for x in range(-3, 4)])

# %% a vector with two vanishing moments factors through theta twice
res = theta_factor([1, -2, 1], 2, 3)
print("cofactor", res.output_coeffs, "sign", res.sign)
print("one moment nonzero:", theta_factor([1, 1], 1, 3))
