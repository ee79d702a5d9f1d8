"""Verdict engine: from (p, r) and slope data to either a guaranteed-irreducible
verdict or a short list of candidate reductions, citing the clause used.

Reduction labels are plain strings:
  "Ind(w2^{k})"                         induced from the niveau-2 character
  "mu_{l} w^{a} + mu_{l'} w^{b}"        sum of two unramified twists, l' = 1/l mod p
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .exact.rational import UsageError, require_prime
from .identities import decompose_weight

IRREDUCIBLE_GUARANTEED = "IRREDUCIBLE_GUARANTEED"
CANDIDATE_SET = "CANDIDATE_SET"
OUT_OF_THEOREM_RANGE = "OUT_OF_THEOREM_RANGE"

# largest slope floor covered by each proven clause (slope strictly below floor + 1)
SMALL_SLOPE_MAX = 2
SMALL_S_MAX = 5
LARGE_S_MAX = 37

# weights below the range of the kernel construction, settled by hand for
# 2 < v < 3; value is the resulting quotient module
SMALL_WEIGHT_CASES = {
    (3, 6): "trivial",
    (3, 8): "pi(0,0,1)",
    (5, 12): "pi(2,0,w)",
}


@dataclass(frozen=True)
class WeightDecomposition:
    p: int
    r: int
    t: int
    s: int


@dataclass
class Verdict:
    status: str
    candidates: List[str]
    theorem_tag: str
    # (condition, value) pairs in the order they were evaluated
    conditions_checked: List[Tuple[str, object]] = field(default_factory=list)
    note: Optional[str] = None

    def __post_init__(self):
        if self.status == CANDIDATE_SET and not self.candidates:
            raise ValueError("a candidate verdict needs at least one candidate")


def decompose(p: int, r: int) -> WeightDecomposition:
    """r = t(p-1) + s with s in 1..p-1."""
    require_prime(p)
    if r < 1:
        raise UsageError(f"r must be >= 1, got {r}")
    t, s = decompose_weight(p, r)
    return WeightDecomposition(p, r, t, s)


def induced_label(k: int) -> str:
    return f"Ind(w2^{{{k}}})"


def split_label(lam: int, p: int, a: int, b: int) -> str:
    return f"mu_{{{lam}}} w^{{{a}}} + mu_{{{pow(lam, -1, p)}}} w^{{{b}}}"


def rising_divisible(p: int, x: int, n: int) -> bool:
    """p | x(x+1)...(x+n-1), read off from the residue of x alone."""
    if n <= 0:
        return False
    if n >= p:
        return True
    return (-x) % p < n


def rising_divisible_direct(p: int, x: int, n: int) -> bool:
    """Same predicate by multiplying out mod p (reference for the residue rule)."""
    acc = 1
    for i in range(n):
        acc = acc * (x + i) % p
    return acc == 0


def classify_slope_one(p: int, r: int, a_unit: int) -> Verdict:
    """Candidates when v(a) = 1; ``a_unit`` is the residue of a/p."""
    w = decompose(p, r)
    if a_unit % p == 0:
        raise UsageError("a/p must be a unit mod p")
    conds: List[Tuple[str, object]] = [("s", w.s), ("t", w.t)]
    tag = "slope-one classification"
    if w.s in (1, 3):
        conds.append(("s not in {1,3}", False))
        return Verdict(OUT_OF_THEOREM_RANGE, [], tag, conds, "no statement for s in {1, 3}")
    if r < 2 * p:
        conds.append(("r >= 2p", False))
        return Verdict(OUT_OF_THEOREM_RANGE, [], tag, conds, "small weight: covered by earlier classifications")
    divisible = (r - w.s) % p == 0
    conds.append(("p | r - s", divisible))
    if divisible:
        cands = [induced_label(w.s + 1), induced_label(w.s + p)]
    else:
        lam = a_unit * w.s * pow(w.s - r, -1, p) % p
        conds.append(("lambda", lam))
        cands = [split_label(lam, p, w.s, 1), induced_label(w.s + p)]
    return Verdict(CANDIDATE_SET, cands, tag, conds)


def _require_even(r: int) -> None:
    if r % 2:
        raise UsageError(f"r must be even, got {r}")


def excluded_classes(p: int, s: int) -> List[Tuple[str, int]]:
    """The nine residues mod p(p-1) excluded for 3 < v < 4, labelled."""
    n = p * (p - 1)
    raw = [
        ("3p+1", 3 * p + 1), ("3p+3", 3 * p + 3), ("4p", 4 * p), ("4p+2", 4 * p + 2),
        ("5p+1", 5 * p + 1), ("6p", 6 * p), ("s", s), ("s+p-1", s + p - 1), ("s+2p-2", s + 2 * p - 2),
    ]
    return [(label, value % n) for label, value in raw]


def check_slope_three_congruences(p: int, r: int) -> Verdict:
    """Slope in (3, 4): guaranteed unless r hits one of the nine excluded classes."""
    _require_even(r)
    w = decompose(p, r)
    residue = r % (p * (p - 1))
    matched = [label for label, c in excluded_classes(p, w.s) if c == residue]
    conds: List[Tuple[str, object]] = [("s", w.s), ("r mod p(p-1)", residue), ("matched classes", matched)]
    tag = "slope in (3,4) congruence list"
    if matched:
        return Verdict(OUT_OF_THEOREM_RANGE, [], tag, conds, f"r matches excluded class {matched[0]}")
    return Verdict(IRREDUCIBLE_GUARANTEED, [], tag, conds)


def _small_s(s: int, v_floor: int) -> bool:
    return 2 <= s <= 2 * v_floor


def check_rising_factorial_clauses(p: int, r: int, v_floor: int) -> Verdict:
    """The three rising-factorial clauses for non-integral slope with floor v_floor."""
    _require_even(r)
    if v_floor < 1:
        raise UsageError(f"v_floor must be >= 1, got {v_floor}")
    w = decompose(p, r)
    x = r - w.s
    conds: List[Tuple[str, object]] = [("s", w.s)]
    if _small_s(w.s, v_floor):
        blocked = rising_divisible(p, x, 2 * v_floor + 1)
        conds += [("s in {2..2v}", True), (f"p | (r-s)^({2 * v_floor + 1})", blocked),
                  (f"v_floor <= {SMALL_S_MAX}", v_floor <= SMALL_S_MAX)]
        tag = "small-s rising factorial clause"
        if not blocked and v_floor <= SMALL_S_MAX:
            return Verdict(IRREDUCIBLE_GUARANTEED, [], tag, conds)
        return Verdict(OUT_OF_THEOREM_RANGE, [], tag, conds)
    conds.append(("s in {2..2v}", False))
    blocked = rising_divisible(p, x, v_floor)
    conds += [(f"p | (r-s)^({v_floor})", blocked), (f"v_floor <= {LARGE_S_MAX}", v_floor <= LARGE_S_MAX)]
    if not blocked and v_floor <= LARGE_S_MAX:
        k = w.s + (p - 1) * v_floor + 1
        return Verdict(IRREDUCIBLE_GUARANTEED, [induced_label(k)], "large-s closed form clause", conds)
    conds.append((f"v_floor <= {SMALL_SLOPE_MAX}", v_floor <= SMALL_SLOPE_MAX))
    if v_floor <= SMALL_SLOPE_MAX:
        return Verdict(IRREDUCIBLE_GUARANTEED, [], "large-s unconditional clause", conds)
    return Verdict(OUT_OF_THEOREM_RANGE, [], "large-s closed form clause", conds)


def irreducibility_summary(p: int, r: int, v_floor: int) -> Verdict:
    """First applicable clause among the proven statements for non-integral slope."""
    _require_even(r)
    if v_floor < 1:
        raise UsageError(f"v_floor must be >= 1, got {v_floor}")
    w = decompose(p, r)
    conds: List[Tuple[str, object]] = [("s", w.s), ("v_floor", v_floor)]
    if v_floor <= SMALL_SLOPE_MAX:
        conds.append(("1 < v < 3", True))
        note = None
        if v_floor == 2 and (p, r) in SMALL_WEIGHT_CASES:
            note = f"small weight settled by hand: quotient {SMALL_WEIGHT_CASES[(p, r)]}"
        return Verdict(IRREDUCIBLE_GUARANTEED, [], "slope in (1,3)", conds, note)
    if v_floor == 3:
        listed = check_slope_three_congruences(p, r)
        conds.append(("slope in (3,4) list avoided", listed.status == IRREDUCIBLE_GUARANTEED))
        if listed.status == IRREDUCIBLE_GUARANTEED:
            return Verdict(IRREDUCIBLE_GUARANTEED, [], listed.theorem_tag, conds)
    clauses = check_rising_factorial_clauses(p, r, v_floor)
    conds.extend(clauses.conditions_checked)
    if clauses.status == IRREDUCIBLE_GUARANTEED:
        return Verdict(IRREDUCIBLE_GUARANTEED, clauses.candidates, clauses.theorem_tag, conds)
    return Verdict(OUT_OF_THEOREM_RANGE, [], "no clause applies", conds)


def declined_residues(p: int, s: int, v_floor: int) -> List[int]:
    """Residues of r mod p (with r = s mod p-1, r even) where irreducibility_summary
    does not guarantee irreducibility."""
    out = set()
    for r in range(s, s + p * (p - 1) * 2, p - 1):
        if r % 2 == 0 and r > 0 and irreducibility_summary(p, r, v_floor).status != IRREDUCIBLE_GUARANTEED:
            out.add(r % p)
    return sorted(out)


__all__ = [
    "IRREDUCIBLE_GUARANTEED", "CANDIDATE_SET", "OUT_OF_THEOREM_RANGE", "SMALL_WEIGHT_CASES",
    "WeightDecomposition", "Verdict", "decompose", "induced_label", "split_label",
    "rising_divisible", "rising_divisible_direct", "classify_slope_one", "excluded_classes",
    "check_slope_three_congruences", "check_rising_factorial_clauses", "irreducibility_summary", "declined_residues",
]
