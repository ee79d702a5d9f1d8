"""Command-line front end.

Exit codes: 0 all checks passed or a verdict/value was produced; 1 a
mathematical check failed (the witness is in the report); 2 usage error or
unwritable output; 3 internal arithmetic inconsistency.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, Sequence

from . import classify as cls
from .exact.rational import UsageError, require_prime
from .hypergeometric import verify_alpha
from .identities import ThetaFailure, theta_factor, verify_binomial_sum_congruence
from .matrices import (
    KernelEmpty,
    construct_big_matrix,
    construct_matrix,
    construct_small_matrix,
    exceptional_cases,
    find_m_w,
    polynomial_from_the_big_matrix,
    roots_for_L,
    the_roots_for_all_big_matrices,
    verify_exceptional_bounds,
)
from .oracle import explicit_spanning_list, low_monomials, span, span_closure, verify_psi
from .report import FAIL, INFO, PASS, Report, serialize_report
from .sweeps import (
    DEFAULT_R_MAX,
    SweepSummary,
    sweep_alternating,
    sweep_inversion,
    sweep_kappa,
    sweep_small_matrix,
    sweep_sum_congruence,
    theta_property_check,
)

JOBS_ENV = "THETA_SLOPE_JOBS"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class ArgumentError(UsageError):
    pass


class _Parser(argparse.ArgumentParser):
    # raise instead of exiting so run() owns every exit code
    def error(self, message):
        raise ArgumentError(message)


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _prime_list(text: str) -> List[int]:
    out = _int_list(text)
    for q in out:
        require_prime(q)
    return out


def _default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{JOBS_ENV} must be an integer, got {raw!r}")


def run_tasks(fn: Callable, items: Sequence, jobs: int) -> list:
    """Map fn over items, in item order, on up to ``jobs`` worker processes."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        return list(pool.map(fn, items))


def _status(oks: Iterable[bool]) -> str:
    oks = list(oks)
    if not oks:
        return INFO
    return PASS if all(oks) else FAIL


def _summary_record(summary: SweepSummary, **extra) -> dict:
    rec = dict(extra)
    rec.update(check=summary.label, checked=summary.checked, passed=summary.passed,
               ok=summary.ok, first_failure=summary.first_failure)
    if summary.skipped:
        rec["skipped"] = summary.skipped
    return rec


# -- worker tasks (top level so they pickle) ---------------------------------------


def _sum_task(args):
    part, p, r_max = args
    (summary,) = sweep_sum_congruence(part, (p,), r_max)
    return _summary_record(summary, part=part, p=p)


def _psi_task(args):
    p, r, samples = args
    return verify_psi(p, r, samples)


def _span_task(args):
    p, m, r_max = args
    summary = SweepSummary(f"span closure p={p} m={m}")
    for r in range(2 * m + 2, r_max + 1):
        a = span_closure(low_monomials(p, r, m))
        b = span(explicit_spanning_list(p, r, m))
        summary.record(a == b, (p, m, r, a.dim, b.dim))
    return _summary_record(summary, p=p, m=m)


def _roots_task(args):
    m, L = args
    return roots_for_L(m, L)


def _bounds_task(m):
    return verify_exceptional_bounds(m)


def _hyper_task(alpha):
    return verify_alpha(alpha)


# -- subcommands -------------------------------------------------------------------


def cmd_lemmas(a) -> Report:
    params = {"check": a.check}
    if a.check == "sums":
        parts = a.part or [1, 2, 3, 4, 5, 6]
        for part in parts:
            if not 1 <= part <= 6:
                raise UsageError(f"part must be 1..6, got {part}")
        if a.r is not None:
            if len(parts) != 1 or a.p is None:
                raise UsageError("a single-point check needs exactly one --part and --p")
            rep = verify_binomial_sum_congruence(parts[0], a.p, a.r, a.A)
            rec = {"part": parts[0], "p": a.p, "r": a.r, "value": rep.value, "target": rep.target,
                   "difference": rep.value - rep.target, "required_valuation": rep.required_valuation,
                   "achieved_valuation": rep.achieved_valuation, "passed": rep.passed}
            params.update(part=parts[0], p=a.p, r=a.r, A=a.A)
            return Report("lemmas", params, _status([rep.passed]), [rec])
        tasks = []
        for part in parts:
            primes = a.p_set or ([3, 5, 7, 11, 13] if part == 1 else [3, 5, 7, 11])
            r_max = a.r_max if a.r_max is not None else DEFAULT_R_MAX[part]
            tasks += [(part, p, r_max) for p in primes]
        params.update(parts=parts, p_set=a.p_set, r_max=a.r_max)
        records = run_tasks(_sum_task, tasks, a.jobs)
        return Report("lemmas", params, _status(r["ok"] for r in records), records)
    if a.check == "alternating":
        summaries = [sweep_alternating()]
    elif a.check == "inversion":
        summaries = sweep_inversion()
    elif a.check == "kappa":
        primes = a.p_set or [5, 7, 11]
        summaries = [sweep_kappa(primes, variant=v) for v in ("binom-ip", "binom-i")]
        params["p_set"] = primes
    else:
        raise UsageError(f"unknown check {a.check!r}")
    records = [_summary_record(s) for s in summaries]
    return Report("lemmas", params, _status(s.ok for s in summaries), records)


def cmd_psi(a) -> Report:
    primes = a.p_set or [3, 5, 7]
    tasks = []
    for p in primes:
        r_max = a.r_max if a.r_max is not None else 4 * (p + 1)
        tasks += [(p, r, a.samples) for r in range(2 * (p - 1) + 1, r_max + 1)]
    checks = run_tasks(_psi_task, tasks, a.jobs)
    records = []
    for p in primes:
        summary = SweepSummary(f"psi p={p}")
        for c in checks:
            if c.p == p:
                summary.record(c.passed, (c.p, c.r, c.vanishing_ok, c.top_value_ok, c.entries_ok, c.equivariance_ok))
        records.append(_summary_record(summary, p=p, samples=a.samples))
    return Report("psi", {"p_set": primes, "r_max": a.r_max, "samples": a.samples},
                  _status(r["ok"] for r in records), records)


def cmd_span(a) -> Report:
    primes = a.p_set or [3, 5, 7]
    tasks = []
    for p in primes:
        r_max = a.r_max if a.r_max is not None else 8 * (p + 1)
        tasks += [(p, m, r_max) for m in range(a.m_max + 1) if p > m + 1]
    records = run_tasks(_span_task, tasks, a.jobs)
    return Report("span", {"p_set": primes, "m_max": a.m_max, "r_max": a.r_max},
                  _status(r["ok"] for r in records), records)


def cmd_theta(a) -> Report:
    if a.random is not None:
        summaries = theta_property_check(a.random, a.seed)
        return Report("theta", {"random": a.random, "seed": a.seed},
                      _status(s.ok for s in summaries), [_summary_record(s) for s in summaries])
    if a.coeffs is None or a.alpha is None or a.p is None:
        raise UsageError("theta needs --coeffs, --alpha and --p (or --random N)")
    res = theta_factor(a.coeffs, a.alpha, a.p, a.gamma, a.r)
    params = {"coeffs": a.coeffs, "alpha": a.alpha, "p": a.p, "gamma": a.gamma, "r": a.r}
    if isinstance(res, ThetaFailure):
        return Report("theta", params, FAIL, [{"factored": False, "first_violated_w": res.first_violated_w,
                                                "moment": res.moment}])
    return Report("theta", params, PASS, [{"factored": True, "r": res.r, "sign": res.sign,
                                           "output_coeffs": res.output_coeffs,
                                           "display_coeffs": res.display_coeffs}])


def _matrix_rows(M) -> List[List[str]]:
    return [[str(e) for e in M.row(i)] for i in range(M.rows)]


def cmd_matrix(a) -> Report:
    if a.consistency:
        sweep = sweep_small_matrix(a.m_set or [1, 2, 3], a.p_set or [5, 7, 11], a.samples)
        records = [_summary_record(sweep.in_domain, claimed=True), _summary_record(sweep.outside_domain, claimed=False)]
        return Report("matrix", {"consistency": True, "m_set": a.m_set, "p_set": a.p_set, "samples": a.samples},
                      _status([sweep.ok]), records)
    if a.m is None or a.alpha is None:
        raise UsageError("matrix needs --m and --alpha")
    params = {"m": a.m, "alpha": a.alpha, "L": a.L, "kind": a.kind}
    if a.kind == "big":
        return Report("matrix", params, INFO, [{"row": i, "entries": row}
                                                for i, row in enumerate(_matrix_rows(construct_big_matrix(a.m, a.alpha)))])
    if a.L is None:
        raise UsageError("matrix needs --L for the range and small matrices")
    M = construct_matrix(a.m, a.alpha, a.L) if a.kind == "range" else construct_small_matrix(a.m, a.alpha, a.L)
    records = [{"row": i, "entries": row} for i, row in enumerate(_matrix_rows(M))]
    if a.kind == "range" and a.diagnostics:
        case = exceptional_cases(a.m, a.alpha, a.L)
        records.append({"row": "diagnostics", "entries": {
            "value": case.value, "kernel_vector": case.kernel_vector, "kernel_dimension": case.kernel_dimension,
            "divided_by": case.divided_by, "gcd_factor": case.gcd_factor}})
    return Report("matrix", params, INFO, records)


def cmd_roots(a) -> Report:
    if a.m < 1:
        raise UsageError("m must be >= 1")
    reps = run_tasks(_roots_task, [(a.m, L) for L in range(1, a.m + 1)], a.jobs)
    records = [{"L": rep.L, "roots": rep.roots, "by_alpha": {str(k): v for k, v in rep.provenance.items()}}
               for rep in reps]
    return Report("roots", {"m": a.m}, INFO, records)


def cmd_m_w(a) -> Report:
    res = find_m_w(a.m, a.alpha, a.L)
    rec = {"constants": res.constants, "values": res.values, "kernel_dimension": res.kernel_dimension}
    return Report("m-w", {"m": a.m, "alpha": a.alpha, "L": a.L}, INFO, [rec])


def cmd_big_poly(a) -> Report:
    if a.m < 1:
        raise UsageError("m must be >= 1")
    alphas = [a.alpha] if a.alpha is not None else list(range(a.m))
    records = []
    for alpha in alphas:
        res = polynomial_from_the_big_matrix(a.m, alpha)
        records.append({"alpha": alpha, "value": res.value, "sentinel": res.sentinel})
    if a.alpha is None:
        records.append({"alpha": "product", "value": the_roots_for_all_big_matrices(a.m), "sentinel": False})
    return Report("big-poly", {"m": a.m, "alpha": a.alpha}, INFO, records)


def cmd_conjecture(a) -> Report:
    ms = a.m if a.m else [1, 2, 3]
    checks = run_tasks(_bounds_task, ms, a.jobs)
    records = [{"m": c.m, "passed": c.passed, "roots_in_bounds": c.roots_ok, "large_s_divides": c.divisibility_ok,
                "roots_by_L": {str(k): v for k, v in c.roots_by_L.items()}, "large_s_product": c.big_product}
               for c in checks]
    return Report("conjecture", {"m": ms}, _status(c.passed for c in checks), records)


def cmd_hyper(a) -> Report:
    if a.alpha_max < 1:
        raise UsageError("alpha-max must be >= 1")
    results = run_tasks(_hyper_task, range(1, a.alpha_max + 1), a.jobs)
    records = [{"alpha": h.alpha, "xi": h.xi_ok, "h": h.h_ok, "xi_w": all(h.xi_w_ok.values()),
                "passed": h.passed, "first_failure": h.first_failure()} for h in results]
    return Report("hyper", {"alpha_max": a.alpha_max}, _status(h.passed for h in results), records)


def cmd_classify(a) -> Report:
    params = {"p": a.p, "r": a.r, "mode": a.mode, "a_unit": a.a_unit, "v_floor": a.v_floor}
    if a.mode == "slope-one":
        if a.a_unit is None:
            raise UsageError("slope-one classification needs --a-unit")
        verdict = cls.classify_slope_one(a.p, a.r, a.a_unit)
    else:
        if a.v_floor is None:
            raise UsageError(f"{a.mode} needs --v-floor")
        if a.mode == "summary":
            verdict = cls.irreducibility_summary(a.p, a.r, a.v_floor)
        elif a.mode == "slope-three":
            verdict = cls.check_slope_three_congruences(a.p, a.r)
        else:
            verdict = cls.check_rising_factorial_clauses(a.p, a.r, a.v_floor)
    rec = {"status": verdict.status, "candidates": verdict.candidates, "clause": verdict.theorem_tag,
           "conditions": [[name, value] for name, value in verdict.conditions_checked], "note": verdict.note}
    return Report("classify", params, INFO, [rec])


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--jobs", type=int, default=None,
                        help=f"worker processes (default: ${JOBS_ENV} or 1); output does not depend on it")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--timing", action="store_true", help="include wall-clock timing_ms (makes output nondeterministic)")

    parser = _Parser(prog="theta-slope", description="Exact checks for mod-p reductions of crystalline representations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("lemmas", parents=[common], help="binomial-sum congruence sweeps")
    q.add_argument("--check", choices=["sums", "alternating", "inversion", "kappa"], default="sums")
    q.add_argument("--part", type=_int_list, default=None, help="sum congruence parts, e.g. 1,3 (default 1..6)")
    q.add_argument("--p-set", type=_prime_list, default=None,
                   help="primes (default 3,5,7,11,13 for part 1, 3,5,7,11 otherwise)")
    q.add_argument("--r-max", type=int, default=None,
                   help="largest r (defaults per part: " + ", ".join(f"{k}:{v}" for k, v in DEFAULT_R_MAX.items()) + ")")
    q.add_argument("--p", type=int, default=None, help="single-point mode: prime")
    q.add_argument("--r", type=int, default=None, help="single-point mode: weight")
    q.add_argument("--A", type=int, default=None, help="residue offset for parts 5 and 6")
    q.set_defaults(func=cmd_lemmas)

    q = sub.add_parser("psi", parents=[common], help="character-sum map checks over F_p")
    q.add_argument("--p-set", type=_prime_list, default=None, help="primes (default 3,5,7)")
    q.add_argument("--r-max", type=int, default=None, help="largest r (default 4(p+1))")
    q.add_argument("--samples", type=int, default=100, help="random group elements per (p, r)")
    q.set_defaults(func=cmd_psi)

    q = sub.add_parser("span", parents=[common], help="GL2 span closure against the explicit spanning list")
    q.add_argument("--p-set", type=_prime_list, default=None, help="primes (default 3,5,7)")
    q.add_argument("--m-max", type=int, default=2)
    q.add_argument("--r-max", type=int, default=None, help="largest r (default 8(p+1))")
    q.set_defaults(func=cmd_span)

    q = sub.add_parser("theta", parents=[common], help="factor a coefficient vector through theta^alpha")
    q.add_argument("--coeffs", type=_int_list, default=None)
    q.add_argument("--alpha", type=int, default=None)
    q.add_argument("--p", type=int, default=None)
    q.add_argument("--gamma", type=int, default=0)
    q.add_argument("--r", type=int, default=None)
    q.add_argument("--random", type=int, default=None, help="run the property check on N random vectors of each kind")
    q.add_argument("--seed", type=int, default=20240601)
    q.set_defaults(func=cmd_theta)

    q = sub.add_parser("matrix", parents=[common], help="print a symbolic matrix or run the mod-p consistency sweep")
    q.add_argument("--m", type=int, default=None)
    q.add_argument("--alpha", type=int, default=None)
    q.add_argument("--L", type=int, default=None)
    q.add_argument("--kind", choices=["range", "small", "big"], default="range")
    q.add_argument("--diagnostics", action="store_true", help="append kernel and gcd data (range matrix)")
    q.add_argument("--consistency", action="store_true", help="small-matrix entries against exact restricted sums")
    q.add_argument("--m-set", type=_int_list, default=None, help="consistency sweep slopes (default 1,2,3)")
    q.add_argument("--p-set", type=_prime_list, default=None, help="consistency sweep primes (default 5,7,11)")
    q.add_argument("--samples", type=int, default=3, help="weights sampled per (m, p, L)")
    q.set_defaults(func=cmd_matrix)

    q = sub.add_parser("roots", parents=[common], help="exceptional residues for every L")
    q.add_argument("--m", type=int, required=True)
    q.set_defaults(func=cmd_roots)

    q = sub.add_parser("m-w", parents=[common], help="kernel constants and the values they produce")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--alpha", type=int, required=True)
    q.add_argument("--L", type=int, required=True)
    q.set_defaults(func=cmd_m_w)

    q = sub.add_parser("big-poly", parents=[common], help="large-s polynomials in t")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--alpha", type=int, default=None)
    q.set_defaults(func=cmd_big_poly)

    q = sub.add_parser("conjecture", parents=[common], help="root bounds and large-s divisibility")
    q.add_argument("--m", type=_int_list, default=None, help="slopes to check, e.g. 1,2,3 (default 1,2,3)")
    q.set_defaults(func=cmd_conjecture)

    q = sub.add_parser("hyper", parents=[common], help="hypergeometric identities behind the large-s kernel")
    q.add_argument("--alpha-max", type=int, default=12)
    q.set_defaults(func=cmd_hyper)

    q = sub.add_parser("classify", parents=[common], help="irreducibility verdict or candidate reductions")
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--mode", choices=["summary", "slope-one", "slope-three", "rising"], default="summary")
    q.add_argument("--v-floor", type=int, default=None)
    q.add_argument("--a-unit", type=int, default=None, help="residue of a/p (slope-one mode)")
    q.set_defaults(func=cmd_classify)
    return parser


def _check_out_path(path: str) -> None:
    parent = os.path.dirname(os.path.abspath(path)) or "."
    if not os.path.isdir(parent) or not os.access(parent, os.W_OK):
        raise UsageError(f"cannot write to {path}")
    if os.path.isdir(path):
        raise UsageError(f"{path} is a directory")


def _write_atomic(path: str, data: bytes) -> None:
    """Write through a temporary file so a failed write leaves nothing behind."""
    parent = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=parent, prefix=".theta-slope-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout.buffer
    stderr = stderr if stderr is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.jobs is None:
            args.jobs = _default_jobs()
        if args.jobs < 1:
            raise UsageError(f"--jobs must be >= 1, got {args.jobs}")
        if args.out is not None:
            _check_out_path(args.out)
        start = time.perf_counter()
        rep = args.func(args)
        if args.timing:
            rep.timing_ms = int((time.perf_counter() - start) * 1000)
        data = serialize_report(rep, args.format)
        if args.out is not None:
            try:
                _write_atomic(args.out, data)
            except OSError as exc:
                raise UsageError(f"cannot write to {args.out}: {exc}")
        else:
            stdout.write(data)
            stdout.flush()
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except (ArithmeticError, KernelEmpty) as exc:
        print(f"internal inconsistency: {exc}", file=stderr)
        return EXIT_INTERNAL
    return EXIT_FAIL if rep.status == FAIL else EXIT_OK


def main() -> None:
    sys.exit(run())


__all__ = ["run", "main", "build_parser", "run_tasks", "JOBS_ENV"]
