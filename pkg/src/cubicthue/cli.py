"""Command-line orchestration for the verification pipeline.

Exit codes: 0 all checks pass, 1 a verification failed, 2 inconclusive
(precision/Q exhausted), 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from decimal import Decimal
from typing import List, Optional

from . import bounds, exponents, forms, reduction, roots, search

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3

DEFAULT_SEED = 20140213
SWEEP_SLICE_HI = 2000
SWEEP_SAMPLE_COUNT = 100


def _int_from_sci(text: str) -> int:
    """Accept 1e60 / 3e18 style notation but keep exact integers."""
    v = Decimal(text)
    if v != v.to_integral_value():
        raise argparse.ArgumentTypeError("%r is not an integer" % text)
    return int(v)


def _env_workers(requested: Optional[int]) -> int:
    if requested is not None:
        return requested
    return int(os.environ.get("CUBICTHUE_WORKERS", "1"))


def _precision_cap(precision: Optional[int]) -> Optional[int]:
    cap = os.environ.get("CUBICTHUE_PRECISION_CAP")
    if cap is not None and precision is not None:
        return min(precision, int(cap))
    return precision


class _Output:
    def __init__(self, path: Optional[str]):
        self.path = path
        self.records: List[dict] = []

    def emit(self, record: dict):
        record.setdefault("schema", 1)
        self.records.append(record)

    def close(self):
        text = "\n".join(json.dumps(r, sort_keys=True) for r in self.records)
        if self.path:
            with open(self.path, "w") as fh:
                fh.write(text + "\n")
        elif text:
            print(text)


def _sample_ts(seed: int, count: int, lo: int, hi: int) -> List[int]:
    rng = random.Random(seed)
    return sorted(rng.sample(range(lo, hi + 1), count))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cubicthue",
        description="Certified verification pipeline for the cubic Thue "
                    "family F_3,t(x,y)=1.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, t=False, trange=False):
        p.add_argument("--precision", type=int, default=None)
        p.add_argument("--workers", type=int, default=None)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--output", default=None)
        if t:
            p.add_argument("--t", type=int, required=True)
        if trange:
            p.add_argument("--t-lo", type=int, default=10)
            p.add_argument("--t-hi", type=int, default=SWEEP_SLICE_HI)

    p = sub.add_parser("roots", help="certified root enclosures")
    common(p, t=True)

    p = sub.add_parser("kappas", help="kappa-interval certification")
    common(p, trange=True)
    p.add_argument("--extra-t", type=int, nargs="*", default=[])

    p = sub.add_parser("exponents", help="unit-exponent recovery for known solutions")
    common(p, t=True)

    p = sub.add_parser("matveev", help="Matveev constant reproduction")
    common(p)
    p.add_argument("--t", type=int, default=10)

    p = sub.add_parser("tmax", help="absolute bound on t")
    common(p)

    p = sub.add_parser("reduce", help="Baker-Davenport reduction at one t")
    common(p, t=True)
    p.add_argument("--which", type=int, default=2, choices=(1, 2, 3))
    p.add_argument("--Q", type=_int_from_sci, default=reduction.DEFAULT_Q)
    p.add_argument("--A", type=_int_from_sci, default=reduction.DEFAULT_A)

    p = sub.add_parser("sweep", help="reduction sweep over a t range")
    common(p, trange=True)
    p.add_argument("--which", type=int, default=2, choices=(1, 2, 3))
    p.add_argument("--Q", type=_int_from_sci, default=reduction.DEFAULT_Q)
    p.add_argument("--A", type=_int_from_sci, default=reduction.DEFAULT_A)
    p.add_argument("--checkpoint", default=None)
    p.add_argument("--samples", type=int, default=0,
                   help="seeded extra samples up to t_max")
    p.add_argument("--full", action="store_true",
                   help="sweep every t up to the absolute bound")
    p.add_argument("--csv", default=None)

    p = sub.add_parser("search", help="bounded brute-force search for one form")
    common(p)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--coeffs", type=int, nargs=4, default=None,
                   metavar=("A", "B", "C", "D"))
    p.add_argument("--y-bound", type=int, default=1000)

    p = sub.add_parser("verify-theorem", help="bounded verification of the solution list")
    common(p, t=True)
    p.add_argument("--y-bound", type=int, default=5000)

    p = sub.add_parser("verify-tables", help="sporadic table verification")
    common(p)
    p.add_argument("--y-bound", type=int, default=10 ** 4)

    p = sub.add_parser("certify-all", help="full desk-scale certification chain")
    common(p, trange=True)
    p.add_argument("--Q", type=_int_from_sci, default=reduction.DEFAULT_Q)
    p.add_argument("--A", type=_int_from_sci, default=reduction.DEFAULT_A)
    p.add_argument("--y-bound", type=int, default=5000)
    p.add_argument("--checkpoint", default=None)
    p.add_argument("--full", action="store_true")

    return ap


def _cmd_roots(args, out: _Output) -> int:
    triple = roots.isolate_roots(args.t, _precision_cap(args.precision))
    for i, th in enumerate(triple.thetas, start=1):
        out.emit({"t": args.t, "root": i,
                  "enclosure": th.as_decimal_string(40),
                  "lower": float(th.lower), "upper": float(th.upper)})
    print("t=%d: three separated certified roots at %d bits" %
          (args.t, triple.precision))
    return EXIT_OK


def _cmd_kappas(args, out: _Output) -> int:
    ts = list(range(args.t_lo, args.t_hi + 1)) + list(args.extra_t)
    workers = _env_workers(args.workers)
    failures = 0
    reports = _map_parallel(_kappa_report_row, [(t, _precision_cap(args.precision))
                                                for t in ts], workers)
    for rep_rows, t, all_pass in reports:
        for row in rep_rows:
            out.emit(row)
        if not all_pass:
            failures += 1
            print("kappa FAILURE at t=%d" % t)
    print("kappas: %d/%d parameter values fully certified" %
          (len(ts) - failures, len(ts)))
    return EXIT_OK if failures == 0 else EXIT_VERIFICATION_FAILED


def _kappa_report_row(job):
    t, precision = job
    rep = roots.verify_kappas(t, precision)
    return [r.to_json(t) for r in rep.rows], t, rep.all_pass


def _map_parallel(fn, jobs, workers):
    if workers <= 1:
        return [fn(j) for j in jobs]
    import multiprocessing as mp_pool
    with mp_pool.Pool(workers) as pool:
        return list(pool.map(fn, jobs, chunksize=16))


def _cmd_exponents(args, out: _Output) -> int:
    t = args.t
    ok = True
    for (x, y) in forms.known_solutions(t).solutions:
        pair = exponents.recover_exponents(t, x, y)
        sol_type = (exponents.classify(t, x, y).value if t >= 10 else "n/a")
        out.emit({"t": t, "x": x, "y": y, "delta": pair.delta,
                  "n": pair.n, "m": pair.m, "type": sol_type,
                  "residual_upper": float(pair.residual.upper)})
    print("t=%d: exponents recovered for all %d known solutions"
          % (t, len(forms.known_solutions(t))))
    return EXIT_OK if ok else EXIT_VERIFICATION_FAILED


def _cmd_matveev(args, out: _Output) -> int:
    res = bounds.matveev_for_family(2, max(args.t, 10),
                                    precision=_precision_cap(args.precision))
    ok = 8.30e15 <= res.coefficient <= 8.40e15
    out.emit({"which": 2, "coefficient": res.coefficient,
              "height_checks": list(res.height_checks),
              "w0_prefactor": bounds.w0_prefactor(),
              "in_target_window": ok})
    print("Matveev coefficient: %.6g (%s)" %
          (res.coefficient, "within target window" if ok else "OUT OF WINDOW"))
    return EXIT_OK if ok else EXIT_VERIFICATION_FAILED


def _cmd_tmax(args, out: _Output) -> int:
    t_max, n_max = bounds.derive_t_max()
    out.emit({"t_max": t_max, "n_max": n_max})
    print("t_max = %d  (n < %.4g)" % (t_max, n_max))
    return EXIT_OK if t_max == 576241 else EXIT_VERIFICATION_FAILED


def _cmd_reduce(args, out: _Output) -> int:
    outcome = reduction.reduce_single(args.which, args.t, args.A, args.Q,
                                      _precision_cap(args.precision))
    out.emit(outcome.to_json())
    if outcome.status == "success" and outcome.contradiction:
        print("t=%d: reduction success, q=%s, margin %.4g" %
              (args.t, outcome.q, outcome.margin))
        return EXIT_OK
    if outcome.status == "success":
        print("t=%d: reduction success but no contradiction" % args.t)
        return EXIT_VERIFICATION_FAILED
    print("t=%d: reduction inconclusive after escalation" % args.t)
    return EXIT_INCONCLUSIVE


def _sweep_extra(args, t_max: int) -> List[int]:
    if args.samples:
        return _sample_ts(args.seed, args.samples, SWEEP_SLICE_HI + 1, t_max)
    return []


def _cmd_sweep(args, out: _Output) -> int:
    workers = _env_workers(args.workers)
    t_hi = args.t_hi
    extra: List[int] = []
    if args.full:
        t_hi = bounds.derive_t_max()[0]
    else:
        extra = _sweep_extra(args, bounds.derive_t_max()[0])
    report = reduction.verify_range(args.which, args.t_lo, t_hi,
                                    args.A, args.Q, workers=workers,
                                    extra_ts=extra,
                                    precision=_precision_cap(args.precision),
                                    checkpoint_path=args.checkpoint)
    for o in report.outcomes:
        out.emit(o.to_json())
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(report.to_csv_summary())
    n_ok = sum(1 for o in report.outcomes
               if o.status == "success" and o.contradiction)
    print("sweep which=%d: %d/%d success+contradiction" %
          (args.which, n_ok, len(report.outcomes)))
    if n_ok == len(report.outcomes):
        return EXIT_OK
    if any(o.status == "failed" for o in report.outcomes):
        return EXIT_INCONCLUSIVE
    return EXIT_VERIFICATION_FAILED


def _cmd_search(args, out: _Output) -> int:
    if (args.t is None) == (args.coeffs is None):
        print("search: give exactly one of --t or --coeffs", file=sys.stderr)
        return EXIT_USAGE
    F = forms.family_form(3, args.t) if args.t is not None \
        else forms.BinaryCubicForm(*args.coeffs)
    rep = search.thue_solutions_bruteforce(F, args.y_bound,
                                           _env_workers(args.workers))
    out.emit(rep.to_json())
    print("%s: %d solutions with |y| <= %d" % (F, rep.count, args.y_bound))
    return EXIT_OK


def _cmd_verify_theorem(args, out: _Output) -> int:
    ok = search.verify_theorem(args.t, args.y_bound, _env_workers(args.workers))
    found = search.thue_solutions_bruteforce(forms.family_form(3, args.t),
                                             args.y_bound,
                                             _env_workers(args.workers))
    out.emit({"t": args.t, "y_bound": args.y_bound, "count": found.count,
              "solutions": [list(s) for s in found.solutions], "pass": ok})
    print("t=%d: %d solutions, %s" %
          (args.t, found.count, "matches published list" if ok else "MISMATCH"))
    return EXIT_OK if ok else EXIT_VERIFICATION_FAILED


def _cmd_verify_tables(args, out: _Output) -> int:
    reports = search.verify_sporadic_tables(args.y_bound, _env_workers(args.workers))
    ok = all(r.matches_expected for r in reports)
    for r in reports:
        out.emit(r.to_json())
    print("tables: %d/%d forms at or above their published counts" %
          (sum(r.matches_expected for r in reports), len(reports)))
    return EXIT_OK if ok else EXIT_VERIFICATION_FAILED


def _cmd_certify_all(args, out: _Output) -> int:
    """Chains the proof order: kappa certification, Matveev constant,
    absolute bound, reduction sweep slice, bounded search."""
    workers = _env_workers(args.workers)
    rc = EXIT_OK

    args_k = argparse.Namespace(t_lo=args.t_lo, t_hi=min(args.t_hi, 2000),
                                extra_t=[10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6, 576241],
                                precision=args.precision, workers=workers,
                                seed=args.seed)
    rc = max(rc, _cmd_kappas(args_k, out))

    args_m = argparse.Namespace(t=10, precision=args.precision)
    rc = max(rc, _cmd_matveev(args_m, out))
    rc = max(rc, _cmd_tmax(args, out))

    args_s = argparse.Namespace(t_lo=args.t_lo, t_hi=args.t_hi, which=2,
                                A=args.A, Q=args.Q, workers=workers,
                                seed=args.seed, full=args.full,
                                samples=0 if args.full else SWEEP_SAMPLE_COUNT,
                                precision=args.precision,
                                checkpoint=args.checkpoint, csv=None)
    rc = max(rc, _cmd_sweep(args_s, out))

    fails = 0
    for t in range(-30, 31):
        if t in (0, 1):
            continue
        if not search.verify_theorem(t, args.y_bound, workers):
            fails += 1
            print("theorem verification FAILED at t=%d" % t)
    out.emit({"stage": "theorem-range", "t_range": [-30, 30],
              "y_bound": args.y_bound, "failures": fails})
    print("theorem range [-30,30]: %d failures" % fails)
    if fails:
        rc = max(rc, EXIT_VERIFICATION_FAILED)

    args_t = argparse.Namespace(y_bound=10 ** 4, workers=workers)
    rc = max(rc, _cmd_verify_tables(args_t, out))
    return rc


_COMMANDS = {
    "roots": _cmd_roots,
    "kappas": _cmd_kappas,
    "exponents": _cmd_exponents,
    "matveev": _cmd_matveev,
    "tmax": _cmd_tmax,
    "reduce": _cmd_reduce,
    "sweep": _cmd_sweep,
    "search": _cmd_search,
    "verify-theorem": _cmd_verify_theorem,
    "verify-tables": _cmd_verify_tables,
    "certify-all": _cmd_certify_all,
}


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    out = _Output(getattr(args, "output", None))
    try:
        rc = _COMMANDS[args.command](args, out)
    finally:
        out.close()
    return rc


if __name__ == "__main__":
    sys.exit(main())
