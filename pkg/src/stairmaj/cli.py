"""Command-line interface: generating functions, identity sweeps, benchmarks.

Exit status: 0 success, 1 verification failure or disagreement, 2 invalid
input, 3 resource limit exceeded.  The default seed is read from the
environment variable STAIRMAJ_SEED (0 when unset).
"""

import argparse
import json
import multiprocessing
import os
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import __version__, elliptic, genfun, hypergeom, kernels
from .errors import InvariantError, ResourceLimitError, StairmajError, ValidationError
from .tableaux import DEFAULT_CELL_LIMIT, SkewShape, StaircaseSpec, count_syt

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3
IDENTITY_KEYS = {
    "cor3": ["cor3"],
    "eq33": ["eq33"],
    "eq34": ["eq34"],
    "cor4": ["cor4_c", "cor4_b"],
    "eq37": ["eq37"],
    "eq38": ["eq38_c", "eq38_b"],
}
IDENTITIES = list(IDENTITY_KEYS) + ["thm2", "all"]
DEFAULT_BENCH = ["N=40,n=40,m=2,r=2", "N=41,n=40,m=2,r=2", "N=42,n=40,m=2,r=2"]


def default_seed():
    raw = os.environ.get("STAIRMAJ_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"STAIRMAJ_SEED must be an integer, got {raw!r}") from None


def _emit(obj):
    print(json.dumps(obj, sort_keys=True, indent=2))


# -- majgf -------------------------------------------------------------------------


def _target(args):
    given = [x for x in (args.lam, args.shape, args.staircase) if x is not None]
    if len(given) != 1:
        raise ValidationError("give exactly one of --lambda, --shape, --staircase")
    if args.staircase is not None:
        return StaircaseSpec.parse(args.staircase)
    if args.shape is not None:
        return SkewShape.parse(args.shape)
    return SkewShape.parse(args.lam + ("/" + args.mu if args.mu else ""))


def _applicable(target, limit):
    methods = ["det"]
    shape = genfun.as_skew(target)
    if shape.cell_count <= limit:
        methods.insert(0, "oracle")
    if isinstance(target, StaircaseSpec):
        methods += ["thm1", "laplace"]
        if target.s in (0, 1):
            methods.append("closed")
    return methods


def _coeff_list(poly):
    lo = poly.min_exponent if poly.coefficients else 0
    return [0] * max(lo, 0) + list(poly.coefficients)


def _poly_json(poly):
    return {"min_exponent": 0, "coefficients": [str(c) for c in _coeff_list(poly)]}


def cmd_majgf(args):
    target = _target(args)
    limit = args.limit if args.limit is not None else DEFAULT_CELL_LIMIT
    shape = genfun.as_skew(target)
    methods = _applicable(target, limit) if args.method == "all" else [args.method]
    values = {}
    timing = {}
    for method in methods:
        t0 = time.perf_counter()
        values[method] = genfun.majgf(target, method, limit)
        timing[method] = time.perf_counter() - t0
    first = values[methods[0]]
    disagree = [m for m in methods if values[m] != first]
    status = EXIT_FAIL if disagree else EXIT_OK

    if args.format == "json":
        obj = {
            "schema_version": SCHEMA_VERSION,
            "shape": str(shape),
            "cells": shape.cell_count,
            "methods": methods,
            "agree": not disagree,
            "polynomial": _poly_json(first),
            "syt_count": str(first.at_one()),
            "timing_seconds": timing,
        }
        if isinstance(target, StaircaseSpec):
            obj["staircase"] = {"N": target.N, "n": target.n, "m": target.m, "r": target.r}
        if disagree:
            obj["disagreeing"] = {m: _poly_json(values[m]) for m in disagree}
        _emit(obj)
        return status

    if disagree:
        print(f"methods disagree: {methods[0]} vs {', '.join(disagree)}", file=sys.stderr)
        for m in [methods[0]] + disagree:
            print(f"{m}: {values[m]}")
        return status
    if args.method == "all":
        print(f"all methods agree ({', '.join(methods)})")
    if args.format == "coeffs":
        print(json.dumps([str(c) if abs(c) >= 2**53 else c for c in _coeff_list(first)]))
    elif args.format == "latex":
        if "closed" in methods and isinstance(target, StaircaseSpec) and target.s in (0, 1):
            print(genfun.closed_latex(target) + " \\\\")
            print("= " + first.to_latex())
        else:
            print(first.to_latex())
    else:
        print(first)
    return status


# -- verify -------------------------------------------------------------------------


def _sweep_task(task):
    key, m, r, s, trials, seed = task
    return hypergeom.sweep(key, m, r, s, trials, seed).to_json_obj()


def _grid(key, size):
    uses_s = hypergeom.IDENTITIES[key][3]
    for m in range(size + 1):
        for r in range(size + 1):
            for s in range(size + 1) if uses_s else [0]:
                yield m, r, s


def run_sweeps(keys, trials, seed, size=3, workers=1):
    """Sweep results for each identity key, in grid order."""
    tasks = [(k, m, r, s, trials, seed) for k in keys for (m, r, s) in _grid(k, size)]
    if workers > 1:
        with ProcessPoolExecutor(workers, mp_context=multiprocessing.get_context("spawn")) as ex:
            results = list(ex.map(_sweep_task, tasks, chunksize=4))
    else:
        results = [_sweep_task(t) for t in tasks]
    out = {k: [] for k in keys}
    for res in results:
        out[res["identity"]].append(res)
    return out


def summarize(key, results):
    passed = sum(x["passed"] for x in results)
    failed = [f for x in results for f in x["failed"]]
    exhausted = [(x["m"], x["r"], x["s"]) for x in results if x["no_admissible_sample"]]
    return {"identity": key, "passed": passed, "failed": failed, "no_admissible_sample": exhausted}


def cmd_verify(args):
    seed = args.seed if args.seed is not None else default_seed()
    if args.trials < 1:
        raise ValidationError("--trials must be positive")
    names = list(IDENTITY_KEYS) + ["thm2"] if args.identity == "all" else [args.identity]
    keys = [k for n in names if n != "thm2" for k in IDENTITY_KEYS[n]]
    t0 = time.perf_counter()
    sweeps = run_sweeps(keys, args.trials, seed, args.grid, args.workers)
    summaries = [summarize(k, sweeps[k]) for k in keys]
    ok = all(not s["failed"] for s in summaries)
    thm2 = None
    if "thm2" in names:
        reports, rejections = elliptic.sweep_thm2(args.trials, seed)
        p0 = _p0_checks(seed, args.p0_checks)
        thm2 = {
            "passed": sum(r.passed for r in reports),
            "samples": len(reports),
            "max_rel_error": max((r.rel_error for r in reports), default=0.0),
            "failed": [r.to_json_obj() for r in reports if not r.passed],
            "rejections": rejections,
            "p0_crosscheck": p0,
        }
        ok = ok and not thm2["failed"] and len(reports) == args.trials and p0["max_rel_error"] <= 1e-10
    elapsed = time.perf_counter() - t0

    if args.format == "json":
        obj = {
            "schema_version": SCHEMA_VERSION,
            "seed": seed,
            "trials": args.trials,
            "grid": args.grid,
            "ok": ok,
            "identities": summaries,
            "timing_seconds": {"total": elapsed},
        }
        if thm2 is not None:
            obj["thm2"] = thm2
        _emit(obj)
    else:
        for s in summaries:
            line = f"{s['identity']}: {s['passed']} passed, {len(s['failed'])} failed"
            if s["no_admissible_sample"]:
                line += ", no admissible specialization for (m,r,s) in " + " ".join(
                    f"({m},{r},{t})" for m, r, t in s["no_admissible_sample"]
                )
            print(line)
            for f in s["failed"]:
                print(f"  FAIL {f['params']}: {f.get('reason', '')}")
                print(f"    lhs = {f['lhs']}")
                print(f"    rhs = {f['rhs']}")
        if thm2 is not None:
            print(
                f"thm2: {thm2['passed']}/{thm2['samples']} passed, "
                f"max relative error {thm2['max_rel_error']:.3g}"
            )
            for f in thm2["failed"]:
                print(f"  FAIL sample {f['index']}: rel_error {f.get('rel_error')}")
            print(f"thm2 p=0 cross-check: {thm2['p0_crosscheck']['samples']} samples, "
                  f"max relative error {thm2['p0_crosscheck']['max_rel_error']:.3g}")
        print("OK" if ok else "FAILED")
    return EXIT_OK if ok else EXIT_FAIL


def _p0_checks(seed, count):
    import cmath
    import math
    import random

    rng = random.Random(f"{seed}:p0")
    errors = []
    attempts = 0
    while len(errors) < count and attempts < 50 * count:
        attempts += 1
        m = rng.randint(0, 3)
        r = rng.randint(1, m + 1)
        qp = hypergeom.sample_params("eq33", m, r, 0, rng)
        z = cmath.rect(rng.uniform(0.3, 0.6), rng.uniform(0, 2 * math.pi))
        try:
            errors.append(elliptic.p0_crosscheck(qp, z))
        except StairmajError:
            continue
    return {"samples": len(errors), "max_rel_error": max(errors, default=0.0)}


# -- bench --------------------------------------------------------------------------


def _timed(fn, spec, repeats):
    times = []
    value = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        value = fn(spec)
        times.append(time.perf_counter() - t0)
    return times, value


def _det_child(spec, repeats, conn):
    try:
        times, value = _timed(genfun.det_majgf, spec, repeats)
        conn.send(("ok", times, value.min_exponent, value.coefficients))
    except Exception as exc:  # reported to the parent
        conn.send(("error", repr(exc)))
    finally:
        conn.close()


def _det_with_budget(spec, repeats, budget):
    """Run det in a child process; None if it exceeds ``budget`` seconds."""
    ctx = multiprocessing.get_context("fork" if hasattr(os, "fork") else "spawn")
    parent, child = ctx.Pipe(duplex=False)
    proc = ctx.Process(target=_det_child, args=(spec, repeats, child))
    proc.start()
    child.close()
    ready = parent.poll(budget)
    if not ready:
        proc.kill()
        proc.join()
        return None
    msg = parent.recv()
    proc.join()
    if msg[0] != "ok":
        raise InvariantError(f"det evaluator raised {msg[1]}")
    return msg[1], (msg[2], msg[3])


def bench(specs, repeats=5, budget=None):
    """Rows comparing det and thm1 on each spec.

    ``budget`` bounds the total wall time; det runs that would exceed the
    remaining share are stopped and reported as timeouts with the speedup
    lower bound budget/thm1.  Raises InvariantError on a mismatch.
    """
    start = time.perf_counter()
    rows = []
    for i, spec in enumerate(specs):
        t_thm1, v_thm1 = _timed(genfun.staircase_gf, spec, repeats)
        row = {
            "spec": str(spec),
            "cells": spec.cell_count,
            "repeats": repeats,
            "thm1_median": statistics.median(t_thm1),
        }
        share = None
        if budget is not None:
            left = budget - (time.perf_counter() - start)
            share = max(left / (len(specs) - i), 0.0)
        res = _det_with_budget(spec, repeats, share) if share is None or share > 0 else None
        if res is None:
            row.update(det_median=None, det_timeout=share, speedup=None,
                       speedup_lower_bound=(share / row["thm1_median"]) if row["thm1_median"] else None,
                       match=None)
        else:
            t_det, (lo, coeffs) = res
            if (lo, coeffs) != (v_thm1.min_exponent, v_thm1.coefficients):
                raise InvariantError(f"det and thm1 disagree on {spec}")
            row.update(det_median=statistics.median(t_det), match=True)
            row["speedup"] = row["det_median"] / row["thm1_median"] if row["thm1_median"] else None
        rows.append(row)
    return rows


def cmd_bench(args):
    specs = [StaircaseSpec.parse(s) for s in (args.staircase or DEFAULT_BENCH)]
    if args.repeats < 1:
        raise ValidationError("--repeats must be positive")
    rows = bench(specs, args.repeats, args.budget)
    timeouts = any(r["det_median"] is None for r in rows)
    if args.format == "json":
        _emit({
            "schema_version": SCHEMA_VERSION,
            "backend": kernels.BACKEND,
            "rows": [{k: r[k] for k in ("spec", "cells", "repeats", "match")} for r in rows],
            "timing_seconds": rows,
        })
    else:
        print(f"{'spec':<22} {'cells':>6} {'det [s]':>10} {'thm1 [s]':>10} {'speedup':>10}  match")
        for r in rows:
            det = f"{r['det_median']:.4f}" if r["det_median"] is not None else f">{r['det_timeout']:.1f}"
            sp = f"{r['speedup']:.1f}" if r["speedup"] is not None else f">{r['speedup_lower_bound']:.1f}"
            match = "yes" if r["match"] else "not checked (det timed out)"
            print(f"{r['spec']:<22} {r['cells']:>6} {det:>10} {r['thm1_median']:>10.4f} {sp:>10}  {match}")
    return EXIT_LIMIT if timeouts else EXIT_OK


# -- selftest -------------------------------------------------------------------------


def cmd_selftest(args):
    from .tableaux import iter_specs, maj_gf_oracle, to_skew_shape

    checks = []

    def check(name, cond):
        checks.append((name, bool(cond)))
        print(f"{'ok  ' if cond else 'FAIL'} {name}")

    specs = list(iter_specs(4))
    check("oracle = det for N <= 4",
          all(maj_gf_oracle(to_skew_shape(s)) == genfun.det_majgf(s) for s in specs))
    check("thm1 = det for N <= 5",
          all(genfun.staircase_gf(s) == genfun.det_majgf(s) for s in iter_specs(5)))
    check("laplace = det for N <= 4",
          all(genfun.laplace_sum(s) == genfun.det_majgf(s) for s in specs))
    check("q = 1 value counts tableaux",
          all(genfun.det_majgf(s).at_one() == count_syt(to_skew_shape(s)) for s in specs))
    sweeps = run_sweeps([k for ks in IDENTITY_KEYS.values() for k in ks], 2, 0, size=2)
    check("identity sweeps (2 samples, m, r, s <= 2)",
          all(not summarize(k, v)["failed"] for k, v in sweeps.items()))
    reports, _ = elliptic.sweep_thm2(10, 0)
    check("elliptic transformation (10 samples)", all(r.passed for r in reports))
    check(f"kernel backend {kernels.BACKEND} available", True)
    return EXIT_OK if all(ok for _, ok in checks) else EXIT_FAIL


# -- entry point ------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="stairmaj",
        description="Major-index generating functions of skew standard tableaux and "
        "verification of the associated q-series transformations.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("majgf", help="generating function sum_T q^maj(T) of a shape")
    p.add_argument("--lambda", dest="lam", help="outer partition, e.g. 3,2,1")
    p.add_argument("--mu", help="inner partition used with --lambda, e.g. 1")
    p.add_argument("--shape", help="skew shape lambda/mu, e.g. 6,5,4/3,3")
    p.add_argument("--staircase", help="staircase minus rectangle, e.g. N=6,n=6,m=3,r=2")
    p.add_argument("--method", default="det", choices=list(genfun.METHODS) + ["all"])
    p.add_argument("--limit", type=int, help=f"cell limit for the oracle (default {DEFAULT_CELL_LIMIT})")
    p.add_argument("--format", default="text", choices=["text", "json", "latex", "coeffs"])
    p.set_defaults(func=cmd_majgf)

    p = sub.add_parser("verify", help="random sweeps of the q-series identities")
    p.add_argument("--identity", default="all", choices=IDENTITIES)
    p.add_argument("--seed", type=int, help="random seed (default: $STAIRMAJ_SEED or 0)")
    p.add_argument("--trials", type=int, default=25, help="samples per (m, r, s) triple (default 25)")
    p.add_argument("--grid", type=int, default=3, help="largest m, r, s (default 3)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--p0-checks", type=int, default=20, help="p = 0 cross-checks for thm2")
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time det against thm1 on staircase specs")
    p.add_argument("--staircase", action="append", help="spec to time (repeatable)")
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--budget", type=float, help="wall-time budget in seconds for the whole table")
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("selftest", help="quick consistency checks")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except InvariantError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except StairmajError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
