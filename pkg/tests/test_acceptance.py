"""Acceptance criteria 1-9.

Each test prints one line ``CRITERION k: PASS`` or ``CRITERION k: FAIL``
with a short measurement summary, then asserts the outcome.  Run with

    pytest -s tests/test_acceptance.py

The criteria run at their stated sizes and tolerances; the whole file
takes about eight minutes, most of it in criterion 9.
"""

import cmath
import math
import random
import time
from math import comb

import pytest

from stairmaj import cli, elliptic, genfun, hypergeom
from stairmaj.errors import DomainError, InadmissibleError
from stairmaj.tableaux import count_syt, iter_specs, maj_gf_oracle, to_skew_shape

_DET = {}


def det(spec):
    if spec not in _DET:
        _DET[spec] = genfun.det_majgf(to_skew_shape(spec))
    return _DET[spec]


def report(capsys, k, ok, detail):
    with capsys.disabled():
        print(f"\nCRITERION {k}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


@pytest.mark.slow
class TestAcceptance:
    def test_criterion_1_oracle(self, capsys):
        t0 = time.perf_counter()
        specs = list(iter_specs(6))
        bad = [str(s) for s in specs if maj_gf_oracle(to_skew_shape(s), limit=21) != det(s)]
        elapsed = time.perf_counter() - t0
        ok = not bad and elapsed <= 120
        report(capsys, 1, ok, f"oracle = det on {len(specs) - len(bad)}/{len(specs)} specs with N <= 6 "
               f"in {elapsed:.1f} s; mismatches: {bad[:5]}")

    def test_criterion_2_multisum(self, capsys):
        t0 = time.perf_counter()
        specs = list(iter_specs(9))
        bad = [str(s) for s in specs if genfun.staircase_gf(s) != det(s)]
        elapsed = time.perf_counter() - t0
        depth = max((s.s + 1) // 2 for s in specs)
        ok = not bad and elapsed <= 300
        report(capsys, 2, ok, f"thm1 = det on {len(specs) - len(bad)}/{len(specs)} specs with N <= 9 "
               f"(sum depth up to {depth}) in {elapsed:.1f} s; mismatches: {bad[:5]}")

    def test_criterion_3_closed_forms(self, capsys):
        checked = 0
        bad = []
        for spec in iter_specs(9):
            if spec.n > 8 or spec.s > 1:
                continue
            if spec.s == 0:
                same = genfun.closed_staircase(spec.n, spec.m, spec.r) == genfun.thm1_even(spec)
            else:
                same = genfun.closed_staircase_plus1(spec.n, spec.m, spec.r) == genfun.thm1_odd(spec)
            checked += 1
            if not same:
                bad.append(str(spec))
        report(capsys, 3, not bad, f"closed forms = thm1 on {checked - len(bad)}/{checked} (n, m, r) with n <= 8; "
               f"mismatches: {bad[:5]}")

    def test_criterion_4_laplace(self, capsys):
        specs = list(iter_specs(8))
        bad = []
        edge = 0
        for spec in specs:
            short = genfun.laplace_sum(spec)
            extended = genfun.laplace_sum(spec, extended=True)
            if short != extended or short != det(spec):
                bad.append(str(spec))
            if spec.m == 0 and spec.n == spec.r:
                edge += 1
        report(capsys, 4, not bad, f"laplace = det and range extension hold on {len(specs) - len(bad)}/{len(specs)} "
               f"specs with N <= 8 ({edge} with m = 0, n = r); mismatches: {bad[:5]}")

    def test_criterion_5_lemma(self, capsys):
        rng = random.Random(5)
        bad = []
        for _ in range(200):
            s = rng.randint(1, 4)
            X = [rng.randint(-3, 8) for _ in range(s)]
            if genfun.lemma_det_rhs(X) != genfun.lemma_det_direct(X):
                bad.append(X)
        report(capsys, 5, not bad, f"lemma closed form = direct determinant on {200 - len(bad)}/200 instances; "
               f"mismatches: {bad[:5]}")

    def test_criterion_6_identity_sweeps(self, capsys):
        keys = [k for ks in cli.IDENTITY_KEYS.values() for k in ks]
        t0 = time.perf_counter()
        sweeps = cli.run_sweeps(keys, 25, seed=0, size=3)
        elapsed = time.perf_counter() - t0
        failures = []
        short = []
        excluded = []
        total = 0
        for key in keys:
            for res in sweeps[key]:
                triple = (res["m"], res["r"], res["s"])
                total += res["passed"]
                failures += [(key, f["params"]) for f in res["failed"]]
                if res["no_admissible_sample"]:
                    excluded.append((key, triple))
                elif res["passed"] < 25:
                    short.append((key, triple, res["passed"]))
        # Only triples where no specialization at all is admissible may be
        # skipped: r = s = 0 puts the pole (q; q)_{-1} in the prefactor.
        structural = all(key in ("cor3", "cor4_c", "cor4_b") and t[1:] == (0, 0) for key, t in excluded)
        ok = not failures and not short and structural and elapsed <= 300
        names = ", ".join(f"{k}{t}" for k, t in excluded) or "none"
        report(capsys, 6, ok, f"{total} exact verifications passed, {len(failures)} failed, "
               f"{len(short)} triples short of 25 samples, in {elapsed:.1f} s; "
               f"no admissible specialization exists for: {names}")

    def test_criterion_7_elliptic(self, capsys):
        reports, rejections = elliptic.sweep_thm2(100, seed=0, m_max=3, r_max=3, tolerance=1e-8)
        worst = max((r.rel_error for r in reports), default=float("inf"))
        passed = sum(r.passed for r in reports)
        rng = random.Random("acceptance:p0")
        errors = []
        while len(errors) < 20:
            m = rng.randint(0, 3)
            qp = hypergeom.sample_params("eq33", m, rng.randint(1, m + 1), 0, rng)
            z = cmath.rect(rng.uniform(0.3, 0.6), rng.uniform(0, 2 * math.pi))
            try:
                errors.append(elliptic.p0_crosscheck(qp, z))
            except (InadmissibleError, DomainError):
                continue
        p0_worst = max(errors)
        ok = passed == 100 and len(reports) == 100 and p0_worst <= 1e-10
        report(capsys, 7, ok, f"thm2 {passed}/{len(reports)} samples within 1e-8 (max rel error {worst:.2e}, "
               f"rejected draws {sum(rejections.values())}); p = 0 cross-check max rel error {p0_worst:.2e} "
               f"on {len(errors)} samples")

    def test_criterion_8_sanity(self, capsys):
        bad = []
        with_oracle = 0
        specs = list(iter_specs(9))
        for spec in specs:
            gf = genfun.staircase_gf(spec)
            cells = spec.cell_count
            if not gf.nonnegative() or (gf.degree or 0) > comb(cells, 2) or gf.min_exponent < 0:
                bad.append(str(spec))
            if spec.N <= 6:
                with_oracle += 1
                if gf.at_one() != count_syt(to_skew_shape(spec), limit=21):
                    bad.append(str(spec))
        rng = random.Random(8)
        for _ in range(50):
            lam = sorted((rng.randint(0, 6) for _ in range(5)), reverse=True)
            mu = sorted((rng.randint(0, x) for x in lam), reverse=True)
            mu = [min(a, b) for a, b in zip(mu, lam)]
            shape = type(to_skew_shape(specs[0]))(tuple(lam), tuple(mu))
            gf = genfun.det_majgf(shape)
            if not gf.nonnegative() or (gf.degree or 0) > comb(shape.cell_count, 2):
                bad.append(str(shape))
            if shape.cell_count <= 16 and gf.at_one() != count_syt(shape):
                bad.append(str(shape))
        report(capsys, 8, not bad, f"{len(specs)} staircase specs and 50 random skew shapes checked, "
               f"{with_oracle} against tableau counts; violations: {bad[:5]}")

    def test_criterion_9_performance(self, capsys):
        specs = [genfun.StaircaseSpec.parse(s) for s in cli.DEFAULT_BENCH]
        t0 = time.perf_counter()
        rows = cli.bench(specs, repeats=1, budget=170)
        elapsed = time.perf_counter() - t0
        parts = []
        for r in rows:
            if r["det_median"] is None:
                parts.append(f"{r['spec']}: thm1 {r['thm1_median']:.1f} s, det unfinished after "
                             f"{r['det_timeout']:.1f} s (ratio > {r['speedup_lower_bound']:.2f}, outputs not compared)")
            else:
                parts.append(f"{r['spec']}: thm1 {r['thm1_median']:.2f} s, det {r['det_median']:.2f} s, "
                             f"ratio {r['speedup']:.2f}, outputs match")
        measured = all(r["det_median"] is not None and r["match"] for r in rows)
        ok = measured and all(r["speedup"] > 1 for r in rows) and elapsed <= 180
        report(capsys, 9, ok, f"benchmark took {elapsed:.0f} s; " + "; ".join(parts))
