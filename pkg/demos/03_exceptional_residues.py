"""From symbolic matrices over Q(r) to the residues of r mod p where the
kernel argument breaks down.

Run: python3 demos/03_exceptional_residues.py
"""

from theta_slope.exact import RatFun, r
from theta_slope.matrices import (
    construct_matrix,
    exceptional_cases,
    find_m_w,
    gcd_for_the_matrix,
    roots_for_all_matrices,
    the_roots_for_all_big_matrices,
    verify_exceptional_bounds,
)

# %% the smallest range matrix, and the linear relation among three of its columns
A = construct_matrix(1, 1, 1)
print(A)
print("relation:", all(((r - 1) * A[i, 1] + (r - 1) * A[i, 0] + A[i, 3]).is_zero() for i in range(2)))

# %% constants from the kernel of the top rows, and the values they leave
mw = find_m_w(1, 0, 1)
print("constants", [str(c) for c in mw.constants], "values", [str(v) for v in mw.values])

# %% exceptional residues for each L
for m in (1, 2, 3):
    for rep in roots_for_all_matrices(m):
        print(f"m={m} L={rep.L}: r = {[int(x) for x in rep.roots]} mod p")

# %% the gcd of maximal minors for (2, 2, 2) and the kernel entry it is divided by
print("gcd:", gcd_for_the_matrix(2, 2, 2))
case = exceptional_cases(2, 2, 2)
print("kernel entry:", RatFun.coerce(1) / case.divided_by)

# %% large-s polynomials in t, and the bounds check for small slopes
print("large-s product for m=3:", the_roots_for_all_big_matrices(3))
for m in (1, 2, 3, 4):
    check = verify_exceptional_bounds(m)
    print(f"m={m}: roots in bounds {check.roots_ok}, divisibility {check.divisibility_ok}")
