"""Theta functions, elliptic shifted factorials and the elliptic multiple
transformation, evaluated in double-precision complex arithmetic.

theta(x; p)       = prod_{j>=0} (1 - p^j x)(1 - p^{j+1}/x)
(a; q, p)_m       = theta(a) theta(aq) ... theta(aq^{m-1})

The transformation relates two r-fold sums over 0 <= k_1 < ... < k_r <= m
with lambda = a^2 q^{2-r} / (bcd).  At p = 0 the theta functions collapse
to 1 - x and, as a -> 0 with d -> aq/d and f -> aq/f, the identity becomes
the basic multiple Whipple transformation checked exactly in
:mod:`stairmaj.hypergeom`; :func:`p0_crosscheck` compares the two.

Error budget: each side is a sum of products of at most a few hundred
factors, so rounding gives relative errors near 1e-12.  Parameter sets
where a denominator factor is below ``DEGENERACY`` in modulus, or where
either sum cancels by more than ``MAX_CANCELLATION``, are rejected rather
than reported as failures.
"""

import cmath
import json
import math
import random
from dataclasses import dataclass
from itertools import combinations

from . import kernels
from .errors import DomainError, InadmissibleError, ValidationError

__all__ = [
    "theta",
    "epoch",
    "EllipticParams",
    "EllipticReport",
    "thm2_sides",
    "verify_thm2",
    "sample_params",
    "sweep_thm2",
    "p0_crosscheck",
]

SCHEMA_VERSION = 1
THETA_TOL = 1e-17
THETA_CAP = 300
DEGENERACY = 1e-6
MAX_CANCELLATION = 1e4
DEFAULT_TOL = 1e-8
MAG_RANGE = (0.15, 0.85)
NOME_MAX = 0.5


def theta(x, p, tol=THETA_TOL, cap=THETA_CAP):
    """theta(x; p), truncated once |p|^j max(|x|, 1/|x|, 1) < tol."""
    if x == 0:
        raise DomainError("theta is undefined at x = 0")
    if abs(p) >= 1:
        raise DomainError(f"theta needs |p| < 1, got |p| = {abs(p):.3g}")
    return kernels.theta(complex(x), complex(p), tol, cap)


def epoch(a, q, p, m):
    """Elliptic shifted factorial (a; q, p)_m; 1 for m = 0.

    Negative lengths follow (a; q, p)_{-n} = 1 / (aq^{-n}; q, p)_n.
    """
    if m < 0:
        v = epoch(a * q**m, q, p, -m)
        if v == 0:
            raise DomainError("elliptic shifted factorial of negative length has a pole")
        return 1 / v
    v = 1 + 0j
    x = complex(a)
    for _ in range(m):
        v *= theta(x, p)
        x *= q
    return v


@dataclass(frozen=True)
class EllipticParams:
    a: complex
    b: complex
    c: complex
    d: complex
    e: complex
    f: complex
    q: complex
    p: complex
    m: int
    r: int

    def __post_init__(self):
        if abs(self.p) >= 1:
            raise ValidationError("violated |p| < 1")
        if abs(self.q) >= 1:
            raise ValidationError("violated |q| < 1")
        if self.r < 1:
            raise ValidationError("violated r >= 1")
        if self.m < 0:
            raise ValidationError("violated m >= 0")
        for name in "abcdefq":
            if getattr(self, name) == 0:
                raise ValidationError(f"parameter {name} must be nonzero")

    @property
    def lambda_ell(self):
        return self.a**2 * self.q ** (2 - self.r) / (self.b * self.c * self.d)

    def to_json_obj(self):
        out = {}
        for name in "abcdefqp":
            z = complex(getattr(self, name))
            out[name] = [z.real, z.imag]
        out["m"] = self.m
        out["r"] = self.r
        return out


class _Den:
    """Multiplies denominator factors, rejecting near-zero ones."""

    def __init__(self, threshold):
        self.threshold = threshold

    def check(self, v, what):
        if abs(v) < self.threshold:
            raise InadmissibleError(f"degenerate denominator {what}: |value| = {abs(v):.3g}")
        return v


def _eps(args, q, p, k, den=None):
    """Product of (a; q, p)_k over args; negative lengths put the factor in
    a denominator, which is then checked for degeneracy."""
    v = 1 + 0j
    for a in args:
        if k < 0:
            v /= den.check(epoch(a * q**k, q, p, -k), "elliptic Pochhammer")
        else:
            v *= epoch(a, q, p, k)
    return v


def _inv_eps(den, args, q, p, k):
    """Reciprocal of the product of (a; q, p)_k over args; factors that
    land in a denominator are checked for degeneracy."""
    v = 1 + 0j
    for a in args:
        if k < 0:
            v *= epoch(a * q**k, q, p, -k)
        else:
            v /= den.check(epoch(a, q, p, k), "elliptic Pochhammer")
    return v


def _side(P, A, nums, dens, den):
    q, p, m, r = P.q, P.p, P.m, P.r
    thA = den.check(theta(A, p), "theta(A)")
    terms = []
    for ks in combinations(range(m + 1), r):
        t = q ** sum((2 * i + 1) * k for i, k in enumerate(ks))
        for i in range(r):
            for j in range(i + 1, r):
                t *= theta(q ** (ks[i] - ks[j]), p) ** 2 * theta(A * q ** (ks[i] + ks[j]), p) ** 2
        for k in ks:
            t *= theta(A * q ** (2 * k), p) * _eps(nums, q, p, k, den)
            t *= _inv_eps(den, dens, q, p, k) / thA
        terms.append(t)
    total = sum(terms, 0j)
    mass = sum(abs(t) for t in terms)
    if mass and (total == 0 or mass / abs(total) > MAX_CANCELLATION):
        raise InadmissibleError("ill-conditioned sum: terms cancel by more than a factor 1e4")
    return total


def thm2_sides(P, threshold=DEGENERACY):
    """(LHS, RHS) of the elliptic transformation by direct summation."""
    a, b, c, d, e, f, q, p = P.a, P.b, P.c, P.d, P.e, P.f, P.q, P.p
    m, r = P.m, P.r
    lam = P.lambda_ell
    den = _Den(threshold)
    top = lam * a * q ** (2 - r + m) / (e * f)
    lhs = _side(
        P,
        a,
        [a, b, c, d, e, f, top, q ** (-m)],
        [q, a * q / b, a * q / c, a * q / d, a * q / e, a * q / f, e * f * q ** (r - 1 - m) / lam, a * q ** (1 + m)],
        den,
    )
    pre = 1 + 0j
    for i in range(1, r + 1):
        pre *= _eps([b, c, d, e * f / a], q, p, i - 1, den)
        pre *= _inv_eps(den, [lam * b / a, lam * c / a, lam * d / a, e * f / lam], q, p, i - 1)
        pre *= _eps([a * q], q, p, m, den) * _eps([a * q / (e * f)], q, p, m + 1 - r, den)
        pre *= _eps([lam * q / e, lam * q / f], q, p, m - i + 1, den)
        pre *= _inv_eps(den, [lam * q], q, p, m)
        pre *= _inv_eps(den, [lam * q / (e * f)], q, p, m + 1 - r)
        pre *= _inv_eps(den, [a * q / e, a * q / f], q, p, m - i + 1)
    rhs = pre * _side(
        P,
        lam,
        [lam, lam * b / a, lam * c / a, lam * d / a, e, f, top, q ** (-m)],
        [q, a * q / b, a * q / c, a * q / d, lam * q / e, lam * q / f, e * f * q ** (r - 1 - m) / a, lam * q ** (1 + m)],
        den,
    )
    return lhs, rhs


@dataclass
class EllipticReport:
    index: int
    params: EllipticParams
    status: str  # "pass", "fail" or "inadmissible"
    lhs: complex = None
    rhs: complex = None
    rel_error: float = None
    tolerance: float = DEFAULT_TOL
    reason: str = ""

    @property
    def passed(self):
        return self.status == "pass"

    def to_json_obj(self):
        obj = {
            "schema_version": SCHEMA_VERSION,
            "identity": "thm2",
            "index": self.index,
            "params": self.params.to_json_obj(),
            "status": self.status,
            "pass": self.passed,
        }
        if self.lhs is not None:
            obj["lhs"] = [self.lhs.real, self.lhs.imag]
            obj["rhs"] = [self.rhs.real, self.rhs.imag]
            obj["rel_error"] = self.rel_error
        if self.reason:
            obj["reason"] = self.reason
        return obj

    def to_json(self):
        return json.dumps(self.to_json_obj(), sort_keys=True)


def verify_thm2(P, tolerance=DEFAULT_TOL, index=0, threshold=DEGENERACY):
    try:
        lhs, rhs = thm2_sides(P, threshold)
    except InadmissibleError as exc:
        return EllipticReport(index, P, "inadmissible", tolerance=tolerance, reason=str(exc))
    scale = max(abs(lhs), abs(rhs))
    err = abs(lhs - rhs) / scale if scale else 0.0
    status = "pass" if err <= tolerance else "fail"
    return EllipticReport(index, P, status, lhs, rhs, err, tolerance)


def _rand_complex(rng, lo, hi):
    return cmath.rect(rng.uniform(lo, hi), rng.uniform(0.0, 2 * math.pi))


def sample_params(rng, m, r):
    """Magnitudes uniform in [0.15, 0.85] with uniform phases; |q|, |p| <= 0.5."""
    lo, hi = MAG_RANGE
    a, b, c, d, e, f = (_rand_complex(rng, lo, hi) for _ in range(6))
    q = _rand_complex(rng, lo, NOME_MAX)
    p = _rand_complex(rng, lo, NOME_MAX)
    return EllipticParams(a, b, c, d, e, f, q, p, m, r)


def sweep_thm2(trials, seed, m_max=3, r_max=3, tolerance=DEFAULT_TOL, max_attempts=None):
    """Verify ``trials`` admissible random parameter sets.

    Returns (reports for admissible samples, rejection-reason counts).
    """
    rng = random.Random(f"{seed}:thm2")
    max_attempts = max_attempts or 20 * trials
    reports = []
    rejections = {}
    attempts = 0
    while len(reports) < trials and attempts < max_attempts:
        attempts += 1
        m = rng.randint(0, m_max)
        # r > m + 1 leaves both sums empty (0 = 0), which tests nothing
        r = rng.randint(1, min(r_max, m + 1))
        rep = verify_thm2(sample_params(rng, m, r), tolerance, index=len(reports))
        if rep.status == "inadmissible":
            key = rep.reason.split(":")[0]
            rejections[key] = rejections.get(key, 0) + 1
            continue
        reports.append(rep)
    return reports, rejections


def p0_crosscheck(qp, z, a=1e-30):
    """Relative difference between the elliptic sides at p = 0 and the exact
    basic transformation evaluated at q = z.

    ``qp`` is a :class:`stairmaj.hypergeom.QPowerParams` with r >= 1; the
    elliptic parameters are b = z^B, c = z^C, e = z^E, d = a z / z^D,
    f = a z / z^F with a small a.
    """
    from .hypergeom import sides

    z = complex(z)
    P = EllipticParams(
        a,
        z**qp.B,
        z**qp.C,
        a * z / z**qp.D,
        z**qp.E,
        a * z / z**qp.F,
        z,
        0j,
        qp.m,
        qp.r,
    )
    lhs, rhs = thm2_sides(P)
    L, R = sides("eq33", qp)
    exact_l = L.eval_complex(z)
    exact_r = R.eval_complex(z)
    scale = max(abs(exact_l), abs(exact_r))
    if scale == 0:
        raise InadmissibleError("both sides vanish; relative error undefined")
    return max(abs(lhs - exact_l), abs(rhs - exact_r)) / scale
