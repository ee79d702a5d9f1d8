"""Turning (p, r, slope) into an irreducibility verdict or a candidate list.

Run: python3 demos/04_verdicts.py
"""

from theta_slope.classify import (
    check_rising_factorial_clauses,
    check_slope_three_congruences,
    classify_slope_one,
    declined_residues,
    irreducibility_summary,
)


def show(v):
    print(f"  {v.status}  [{v.theorem_tag}]  {v.candidates or ''}  {v.note or ''}")


# %% slope one: a split candidate with lambda = a/p * s/(s-r), or two induced ones
show(classify_slope_one(7, 30, 1))
show(classify_slope_one(5, 22, 3))
show(classify_slope_one(5, 11, 1))

# %% slope in (3, 4): nine excluded classes mod p(p-1)
show(check_slope_three_congruences(7, 22))
show(check_slope_three_congruences(11, 40))

# %% rising-factorial clauses for larger slopes
show(check_rising_factorial_clauses(11, 46, 2))
show(check_rising_factorial_clauses(5, 6, 1))

# %% first applicable clause, including a hand-settled small weight
show(irreducibility_summary(3, 8, 2))
show(irreducibility_summary(7, 44, 3))

# %% which residues of r mod 11 are left open at slope floor 3
for s in (2, 4, 6):
    print(f"s={s}: open residues {declined_residues(11, s, 3)}")
