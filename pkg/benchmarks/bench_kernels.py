"""Compare the compiled and pure-Python kernel backends.

Times each kernel on identical inputs with both backends, checks that the
results agree, and then times two end-to-end evaluations in subprocesses
(one with STAIRMAJ_PURE_PYTHON=1).

    python3 benchmarks/bench_kernels.py [--repeats 5] [--json]
"""

import argparse
import json
import os
import random
import statistics
import subprocess
import sys
import time

from stairmaj.kernels import backends


def _median_time(fn, repeats):
    times = []
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), out


def kernel_cases(rng):
    small = [rng.randint(-9, 9) for _ in range(400)]
    small2 = [rng.randint(-9, 9) for _ in range(300)]
    big = [rng.getrandbits(200) - (1 << 199) for _ in range(300)]
    short = [rng.randint(-9, 9) for _ in range(16)]
    return [
        ("poly_mul small ints 400x16", "poly_mul", (small, short)),
        ("poly_mul small ints 400x300", "poly_mul", (small, small2)),
        ("poly_mul 200-bit 300x300", "poly_mul", (big, big)),
        ("poly_mul_binomial k=7 len 400", "poly_mul_binomial", (small, 7)),
        ("poly_div_binomial k=7 len 407", "poly_div_binomial", ("mulbin", 7)),
        ("poly_divexact 700 by 300", "poly_divexact", ("prod", small2)),
        ("theta x=0.3+0.2i p=0.45", "theta", (0.3 + 0.2j, 0.45)),
    ]


def run_kernels(repeats, seed=0):
    rng = random.Random(seed)
    cases = kernel_cases(rng)
    mods = backends()
    py = mods[0]
    rows = []
    for label, name, args in cases:
        # inputs whose exact division is known to succeed
        if args[0] == "mulbin":
            args = (py.poly_mul_binomial([rng.randint(-9, 9) for _ in range(400)], 7), args[1])
        elif args[0] == "prod":
            args = (py.poly_mul([rng.randint(-9, 9) for _ in range(400)], args[1]), args[1])
        row = {"kernel": label}
        results = []
        for mod in mods:
            fn = getattr(mod, name)
            # theta is cheap; repeat it so the timing is measurable
            reps = 2000 if name == "theta" else 1
            t, out = _median_time(lambda: [fn(*args) for _ in range(reps)][-1], repeats)
            row[mod.BACKEND] = t
            results.append(out)
        if name == "theta":
            agree = all(abs(r - results[0]) <= 1e-14 * abs(results[0]) for r in results)
        else:
            agree = all(list(r) == list(results[0]) for r in results)
        row["agree"] = agree
        if len(mods) > 1:
            row["speedup"] = row["python"] / row[mods[1].BACKEND]
        rows.append(row)
    return rows


END_TO_END = [
    ("det N=12,n=12,m=2,r=2", "from stairmaj.genfun import det_majgf as f; from stairmaj.tableaux import StaircaseSpec as S; x=S(12,12,2,2)"),
    ("thm1 N=24,n=22,m=3,r=2", "from stairmaj.genfun import staircase_gf as f; from stairmaj.tableaux import StaircaseSpec as S; x=S(24,22,3,2)"),
]


def run_end_to_end(repeats):
    rows = []
    for label, setup in END_TO_END:
        code = (
            "import time, statistics\n" + setup.replace("; ", "\n") + "\n"
            "from stairmaj.kernels import BACKEND\n"
            f"ts=[]\nfor _ in range({repeats}):\n t=time.perf_counter(); v=f(x); ts.append(time.perf_counter()-t)\n"
            "print(BACKEND, statistics.median(ts), hash(v.coefficients))\n"
        )
        row = {"task": label}
        digests = []
        for pure in ("1", "0"):
            env = dict(os.environ, STAIRMAJ_PURE_PYTHON=pure)
            out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
            backend, t, digest = out.stdout.split()
            row[backend] = float(t)
            digests.append(digest)
        row["agree"] = len(set(digests)) == 1
        if "cython" in row:
            row["speedup"] = row["python"] / row["cython"]
        rows.append(row)
    return rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args(argv)
    kern = run_kernels(args.repeats)
    e2e = run_end_to_end(max(1, args.repeats // 2))
    if args.json:
        print(json.dumps({"schema_version": 1, "kernels": kern, "end_to_end": e2e}, indent=2))
        return 0 if all(r["agree"] for r in kern + e2e) else 1
    print(f"{'kernel':<34} {'python [s]':>11} {'cython [s]':>11} {'speedup':>8}  agree")
    for r in kern:
        print(f"{r['kernel']:<34} {r['python']:>11.5f} {r.get('cython', float('nan')):>11.5f} "
              f"{r.get('speedup', float('nan')):>8.1f}  {r['agree']}")
    print()
    print(f"{'end to end':<34} {'python [s]':>11} {'cython [s]':>11} {'speedup':>8}  agree")
    for r in e2e:
        print(f"{r['task']:<34} {r['python']:>11.4f} {r.get('cython', float('nan')):>11.4f} "
              f"{r.get('speedup', float('nan')):>8.2f}  {r['agree']}")
    return 0 if all(r["agree"] for r in kern + e2e) else 1


if __name__ == "__main__":
    sys.exit(main())
