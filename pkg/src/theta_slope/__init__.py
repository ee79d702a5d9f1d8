"""Exact verification toolkit for mod-p reductions of two-dimensional
crystalline representations of non-integral slope.

Submodules:
  exact           rationals, multivariate polynomials, matrices over Q(r)
  identities      binomial-sum congruences and the theta factorisation
  oracle          brute-force F_p computations with homogeneous forms
  matrices        symbolic matrices, exceptional residues, bounds driver
  hypergeometric  identities behind the large-s kernel vector
  classify        irreducibility verdicts and candidate reductions
  sweeps          parameter-grid runners with per-prime summaries
  report, cli     serialisation and the command-line front end
"""

from .classify import Verdict, classify_slope_one, irreducibility_summary
from .hypergeometric import verify_hypergeometric
from .identities import eta, theta_factor, verify_binomial_sum_congruence
from .matrices import (
    construct_matrix,
    exceptional_cases,
    find_m_w,
    gcd_for_the_matrix,
    roots_for_all_matrices,
    verify_exceptional_bounds,
)
from .report import Report, parse_report, serialize_report

__version__ = "0.1.0"

__all__ = [
    "Verdict", "classify_slope_one", "irreducibility_summary", "verify_hypergeometric", "eta", "theta_factor",
    "verify_binomial_sum_congruence", "construct_matrix", "exceptional_cases", "find_m_w", "gcd_for_the_matrix",
    "roots_for_all_matrices", "verify_exceptional_bounds", "Report", "parse_report", "serialize_report",
]
