"""Brute-force F_p computations: the character-sum map and GL2 span closures.

Run: python3 demos/02_character_sums_over_fp.py
"""

import numpy as np

from theta_slope.oracle import (
    FpHomPoly,
    explicit_spanning_list,
    gl2_det,
    low_monomials,
    psi_apply,
    random_gl2,
    span,
    span_closure,
    theta_divide,
    theta_form,
    verify_psi,
)

p, r = 5, 14  # r = 3(p-1) + 2, so s = 2 and the image has degree p-1-s = 2

# %% monomials below degree s die, multiples of p-1 go to the top monomial
for i in (0, 1, 4, 8, 12):
    print(f"x^{i} y^{r - i}  ->  {psi_apply(FpHomPoly.monomial(p, r, i))}")

# %% equivariance up to det^s, checked on one random element
rng = np.random.default_rng(0)
f = FpHomPoly(p, r, tuple(int(c) for c in rng.integers(0, p, r + 1)))
g = random_gl2(p, rng)
lhs = psi_apply(f.act(g))
rhs = psi_apply(f).act(g).scale(pow(gl2_det(g, p), 2, p))
print("equivariant:", lhs == rhs)
print("full check at (5, 14):", verify_psi(p, r, samples=20).passed)

# %% theta divides anything of the form theta * h
h = FpHomPoly(p, 3, (1, 0, 2, 4))
q = theta_divide(theta_form(p) * h, 1)
print("quotient recovers h:", q == h)

# %% the submodule generated by y^r, x y^(r-1) against the explicit spanning list
for rr in (20, 28, 36):
    closure = span_closure(low_monomials(p, rr, 1))
    listed = span(explicit_spanning_list(p, rr, 1))
    print(f"r={rr}: closure dim {closure.dim}, list dim {listed.dim}, equal {closure == listed}")
