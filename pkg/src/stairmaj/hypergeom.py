"""Exact verification of the basic hypergeometric transformation chain.

Every parameter is specialized to a power of q (b = q^B, c = q^C, ...), so
each side of an identity becomes a univariate rational function that is
compared exactly.

Identities
----------
cor3   the dimension-changing transformation (r-fold sum = s-fold sum)
eq33   the multiple Whipple transformation in b, c, d, e, f
eq34   its e -> infinity limit with q -> 1/q
cor4   the symmetric form where b or c terminates, with infinite products
eq37   the s = 0 case of cor4 (closed product)
eq38   the s = 1 case of cor4 (single sum)

Limits at terminating points
----------------------------
When the terminating parameter x = q^-m meets a summation index above m,
the displayed right-hand sides contain 0/0 between a prefactor and the
summands.  Pochhammer symbols whose base is exactly the terminating
parameter are evaluated as limits x -> x*t, t -> 1 (see
:mod:`stairmaj.qproduct`); all other factors are taken literally, and a
vanishing literal denominator makes the specialization inadmissible.
Shifted factorials of negative length follow (a;q)_{-n} = 1/(aq^{-n};q)_n.
"""

import cmath
import json
import math
import random
from dataclasses import asdict, dataclass, field, replace
from itertools import combinations
from math import comb

from .errors import DomainError, InadmissibleError, ValidationError
from .qproduct import QProduct, qproduct_sum
from .qseries import RationalQ

__all__ = [
    "QPowerParams",
    "VerificationReport",
    "multisum",
    "finite_poch_ratio",
    "verify_cor3",
    "verify_eq33",
    "verify_eq34",
    "verify_cor4",
    "verify_eq37",
    "verify_eq38",
    "IDENTITIES",
    "sample_params",
    "sweep",
]

SCHEMA_VERSION = 1
EXPONENT_BOUND = 10
NUMERIC_TOL = 1e-10
# deformation weights of b, c, d, e, f for limits at 0/0 points
GENERIC_WEIGHTS = {"b": 3, "c": 11, "d": 29, "e": 71, "f": 163}


@dataclass(frozen=True)
class QPowerParams:
    """Exponents of b, c, d, e, f as powers of q, and the sizes m, r, s."""

    m: int = 0
    r: int = 0
    s: int = 0
    B: int = 0
    C: int = 0
    D: int = 0
    E: int = 0
    F: int = 0

    def __post_init__(self):
        for name in ("m", "r", "s"):
            if getattr(self, name) < 0:
                raise ValidationError(f"{name} must be nonnegative")

    def as_dict(self):
        return asdict(self)


@dataclass
class VerificationReport:
    identity: str
    params: dict
    status: str  # "pass", "fail" or "inadmissible"
    equal: bool = None
    reason: str = ""
    lhs: str = None
    rhs: str = None
    numeric_max_rel_error: float = None
    numeric_points: list = field(default_factory=list)

    @property
    def passed(self):
        return self.status == "pass"

    def to_json_obj(self):
        obj = {
            "schema_version": SCHEMA_VERSION,
            "identity": self.identity,
            "params": self.params,
            "status": self.status,
            "equal": self.equal,
        }
        if self.reason:
            obj["reason"] = self.reason
        if self.status == "fail":
            obj["lhs"] = self.lhs
            obj["rhs"] = self.rhs
        if self.numeric_max_rel_error is not None:
            obj["numeric_max_rel_error"] = self.numeric_max_rel_error
        return obj

    def to_json(self):
        return json.dumps(self.to_json_obj(), sort_keys=True)


# -- shared kernels --------------------------------------------------------


def multisum(r, bound, term):
    """Sum of term(k) over 0 <= k_1 < ... < k_r <= bound (exact).

    ``term`` returns a RationalQ, LaurentPoly, int or QProduct.  r = 0 gives
    the single empty tuple.
    """
    products = []
    total = RationalQ(0)
    for ks in combinations(range(bound + 1), r):
        t = term(ks)
        if isinstance(t, QProduct):
            products.append(t)
        else:
            total = total + t
    if products:
        total = total + qproduct_sum(products)
    return total


def _ratio_into(t, num_exps, den_exps, power=1):
    if len(num_exps) != len(den_exps):
        raise InadmissibleError("infinite product does not reduce")
    for a, b in zip(num_exps, den_exps):
        # (q^a;q)_inf / (q^b;q)_inf = (q^a;q)_{b-a}, also for b < a
        t.mul_poch(a, 1, b - a, power)
    return t


def finite_poch_ratio(numerator_exponents, denominator_exponents):
    """prod (q^a_i;q)_inf / prod (q^b_i;q)_inf with a_i paired to b_i.

    Each pair telescopes to a finite shifted factorial; unequal counts do
    not reduce and raise InadmissibleError.
    """
    t = _ratio_into(QProduct(), list(numerator_exponents), list(denominator_exponents))
    return t.to_rational()


class _Spec:
    """Exponent arithmetic for monomials in q and the parameters.

    By default only Pochhammer symbols whose base is exactly the
    terminating parameter (``deformed``, or the explicit x = q^-m) are
    taken as limits.  With ``weights`` the free parameters instead move
    along a generic direction y -> y*t**w[y] while q^-m stays exact.
    """

    def __init__(self, p, deformed=None, weights=None):
        self.p = p
        # x is the explicit terminating parameter q^-m
        self.val = {"b": p.B, "c": p.C, "d": p.D, "e": p.E, "f": p.F, "x": -p.m}
        self.deformed = deformed
        self.weights = weights

    def ex(self, q=0, **powers):
        return q + sum(self.val[k] * v for k, v in powers.items())

    def kappa(self, q, powers):
        if self.weights:
            return sum(self.weights[k] * v for k, v in powers.items() if k != "x")
        if not q and powers in ({"x": 1}, {self.deformed: 1}):
            return 1
        return 0

    def poch(self, t, k, power=1, q=0, **powers):
        """Multiply t by (q^q0 b^.. c^..;q)_k ** power."""
        t.mul_poch(self.ex(q, **powers), 1, k, power, self.kappa(q, powers))
        return t

    def term_x(self, t, k, power=1):
        """(q^-m;q)_k with q^-m the terminating parameter."""
        return self.poch(t, k, power, x=1)


def _weight(ks):
    t = QProduct(1, sum((2 * i + 1) * k for i, k in enumerate(ks)))
    for i in range(len(ks)):
        for j in range(i + 1, len(ks)):
            t.mul_binomial(ks[i] - ks[j], 2)
    return t


# -- the identities -------------------------------------------------------------


def _cor3_sides(p, weights=None):
    S = _Spec(p, weights=weights)
    m, r, s = p.m, p.r, p.s

    def lhs_term(ks):
        t = _weight(ks)
        for k in ks:
            S.poch(t, s, q=k, d=1)
            S.poch(t, k, b=1)
            S.term_x(t, k)
            t.mul_poch(1, 1, k, -1)
            S.poch(t, k, -1, f=1)
        return t

    lhs = [lhs_term(ks) for ks in combinations(range(m + 1), r)]

    e = comb(r + s, 3) + comb(r + 1, 3) + s * comb(r, 2) - m * comb(r + s, 2)
    pre = QProduct(1, e - p.F * comb(r, 2))
    pre.mul_poch(1, 1, r + s - 1, -(s - 1))
    for i in range(1, r + 1):
        S.poch(pre, i - 1, b=1)
        S.poch(pre, m - r + 1, q=s + r + i - 1, x=1, b=1, f=-1)
        S.poch(pre, m - i + 1, -1, q=i, x=1, f=-1)
    for i in range(1, r + s):
        pre.mul_poch(1, 1, i - 1)
        # (q;q)_m/(q;q)_{m-i} = (-1)^i q^{im - C(i,2)} (q^-m;q)_i
        pre.mul_const((-1) ** i).mul_qpow(i * m - comb(i, 2))
        S.term_x(pre, i)
    for i in range(r, r + s):
        S.poch(pre, i, q=1 - r, d=1, b=-1)
        pre.mul_poch(1, 1, r + s - i - 1, -1)
        S.poch(pre, i - r, -1, d=1)
        S.poch(pre, i, -1, q=1 - r - s, f=1, b=-1)

    def rhs_term(ls):
        t = _weight(ls)
        for l in ls:
            S.poch(t, l, d=1)
            S.poch(t, l, q=1 - r - s, f=1, b=-1)
            t.mul_poch(1 - r - s, 1, l)
            t.mul_poch(1, 1, l, -1)
            S.poch(t, l, -1, q=1 - r, d=1, b=-1)
            S.term_x(t, l, -1)
        return pre * t

    rhs = [rhs_term(ls) for ls in combinations(range(r + s), s)]
    return lhs, rhs


def _eq33_sides(p, weights=None):
    S = _Spec(p, weights=weights)
    m, r = p.m, p.r

    def lhs_term(ks):
        t = _weight(ks)
        for k in ks:
            S.poch(t, k, b=1)
            S.poch(t, k, c=1)
            S.poch(t, k, e=1)
            S.term_x(t, k)
            t.mul_poch(1, 1, k, -1)
            S.poch(t, k, -1, d=1)
            S.poch(t, k, -1, f=1)
            S.poch(t, k, -1, q=2 * r - m - 1, b=1, c=1, e=1, d=-1, f=-1)
        return t

    lhs = [lhs_term(ks) for ks in combinations(range(m + 1), r)]
    pre = QProduct()
    for i in range(1, r + 1):
        S.poch(pre, i - 1, b=1)
        S.poch(pre, i - 1, c=1)
        S.poch(pre, i - 1, q=1, e=1, f=-1)
        S.poch(pre, i - 1, -1, q=1 - r, d=1, c=-1)
        S.poch(pre, i - 1, -1, q=1 - r, d=1, b=-1)
        S.poch(pre, i - 1, -1, q=r, b=1, c=1, e=1, d=-1, f=-1)
        S.poch(pre, m + 1 - r, f=1, e=-1)
        S.poch(pre, m - i + 1, q=1 - r, d=1, f=1, b=-1, c=-1)
        S.poch(pre, m + 1 - r, -1, q=1 - r, d=1, f=1, b=-1, c=-1, e=-1)
        S.poch(pre, m - i + 1, -1, f=1)

    def rhs_term(ks):
        t = _weight(ks)
        for k in ks:
            S.poch(t, k, q=1 - r, d=1, c=-1)
            S.poch(t, k, q=1 - r, d=1, b=-1)
            S.poch(t, k, e=1)
            S.term_x(t, k)
            t.mul_poch(1, 1, k, -1)
            S.poch(t, k, -1, d=1)
            S.poch(t, k, -1, q=1 - r, d=1, f=1, b=-1, c=-1)
            S.poch(t, k, -1, q=r - m, e=1, f=-1)
        return pre * t

    rhs = [rhs_term(ks) for ks in combinations(range(m + 1), r)]
    return lhs, rhs


def _eq34_sides(p, weights=None):
    S = _Spec(p, weights=weights)
    m, r = p.m, p.r

    def lhs_term(ks):
        t = _weight(ks)
        for k in ks:
            S.poch(t, k, b=1)
            S.poch(t, k, c=1)
            S.term_x(t, k)
            t.mul_poch(1, 1, k, -1)
            S.poch(t, k, -1, d=1)
            S.poch(t, k, -1, f=1)
        return t

    lhs = [lhs_term(ks) for ks in combinations(range(m + 1), r)]
    pre = QProduct(1, S.ex(q=r - 1, b=1, c=1, d=-1) * r * (m - r + 1))
    for i in range(1, r + 1):
        S.poch(pre, i - 1, b=1)
        S.poch(pre, i - 1, c=1)
        S.poch(pre, i - 1, -1, q=1 - r, d=1, c=-1)
        S.poch(pre, i - 1, -1, q=1 - r, d=1, b=-1)
        S.poch(pre, m - i + 1, q=1 - r, d=1, f=1, b=-1, c=-1)
        S.poch(pre, m - i + 1, -1, f=1)

    def rhs_term(ks):
        t = _weight(ks)
        for k in ks:
            S.poch(t, k, q=1 - r, d=1, c=-1)
            S.poch(t, k, q=1 - r, d=1, b=-1)
            S.term_x(t, k)
            t.mul_poch(1, 1, k, -1)
            S.poch(t, k, -1, d=1)
            S.poch(t, k, -1, q=1 - r, d=1, f=1, b=-1, c=-1)
        return pre * t

    rhs = [rhs_term(ks) for ks in combinations(range(m + 1), r)]
    return lhs, rhs


def _terminating_exponents(p, terminating):
    if terminating not in ("b", "c"):
        raise ValidationError("terminating parameter must be 'b' or 'c'")
    x = p.B if terminating == "b" else p.C
    if x > 0:
        raise ValidationError(f"terminating exponent must be nonpositive, got {terminating} = q^{x}")
    return -x


def _infinite_block(S, t, i, s, terminating):
    """(q/f, bcq^{s+r+i-1}/f)_inf / (cq^i/f, bq^{s+i}/f)_inf, paired so that
    q/f meets the product containing the terminating parameter."""
    r = S.p.r
    nums = [S.ex(q=1, f=-1), S.ex(q=s + r + i - 1, b=1, c=1, f=-1)]
    if terminating == "c":
        dens = [S.ex(q=i, c=1, f=-1), S.ex(q=s + i, b=1, f=-1)]
    else:
        dens = [S.ex(q=s + i, b=1, f=-1), S.ex(q=i, c=1, f=-1)]
    return _ratio_into(t, nums, dens)


def _lhs_cor4_factor(S, t, k, s):
    S.poch(t, s, q=k, d=1)
    S.poch(t, k, b=1)
    S.poch(t, k, c=1)
    t.mul_poch(1, 1, k, -1)
    S.poch(t, k, -1, f=1)


def _cor4_lhs(S, s, M):
    r = S.p.r
    # Terms beyond the terminating bound vanish: check one extra index.
    if r:
        probe = QProduct()
        _lhs_cor4_factor(S, probe, M + 1, s)
        if not probe.vanishes():
            raise InadmissibleError("terminating bound check failed: index m+1 does not vanish")
    out = []
    for ks in combinations(range(M + 1), r):
        t = _weight(ks)
        for k in ks:
            _lhs_cor4_factor(S, t, k, s)
        out.append(t)
    return out


def _cor4_sides(p, terminating):
    M = _terminating_exponents(p, terminating)
    S = _Spec(p, deformed=terminating)
    r, s = p.r, p.s
    lhs = _cor4_lhs(S, s, M)
    pre = QProduct((-1) ** comb(r + s, 2), comb(r + 1, 3) + s * comb(r, 2) - p.F * comb(r, 2))
    pre.mul_poch(1, 1, r + s - 1, -(s - 1))
    for i in range(1, r + 1):
        S.poch(pre, i - 1, b=1)
        _infinite_block(S, pre, i, s, terminating)
    for i in range(1, r + s):
        pre.mul_poch(1, 1, i - 1)
        S.poch(pre, i, c=1)
    for i in range(r, r + s):
        S.poch(pre, i, q=1 - r, d=1, b=-1)
        pre.mul_poch(1, 1, r + s - i - 1, -1)
        S.poch(pre, i - r, -1, d=1)
        S.poch(pre, i, -1, q=1 - r - s, f=1, b=-1)

    def rhs_term(ls):
        t = _weight(ls)
        for l in ls:
            S.poch(t, l, d=1)
            S.poch(t, l, q=1 - r - s, f=1, b=-1)
            t.mul_poch(1 - r - s, 1, l)
            t.mul_poch(1, 1, l, -1)
            S.poch(t, l, -1, q=1 - r, d=1, b=-1)
            S.poch(t, l, -1, c=1)
        return pre * t

    rhs = [rhs_term(ls) for ls in combinations(range(r + s), s)]
    return lhs, rhs


def _eq37_sides(p, weights=None):
    S = _Spec(p, weights=weights)
    m, r = p.m, p.r

    def lhs_term(ks):
        t = _weight(ks)
        for k in ks:
            S.poch(t, k, b=1)
            S.term_x(t, k)
            t.mul_poch(1, 1, k, -1)
            S.poch(t, k, -1, f=1)
        return t

    lhs = [lhs_term(ks) for ks in combinations(range(m + 1), r)]
    rhs = QProduct((-1) ** comb(r, 2), comb(r, 2) * (m - r + 1) + p.B * r * (m - r + 1))
    for i in range(1, r + 1):
        S.poch(rhs, i - 1, b=1)
        rhs.mul_poch(1, 1, m)
        S.poch(rhs, m - r + 1, q=1 - i, f=1, b=-1)
        rhs.mul_poch(1, 1, i - 1)
        S.poch(rhs, m - i + 1, -1, f=1)
        rhs.mul_poch(1, 1, m - i + 1, -1)
    return lhs, [rhs]


def _eq38_sides(p, terminating):
    M = _terminating_exponents(p, terminating)
    S = _Spec(p, deformed=terminating)
    r = p.r
    lhs = _cor4_lhs(S, 1, M)
    pre = QProduct((-1) ** comb(r + 1, 2), comb(r + 1, 3) + comb(r, 2) - p.F * comb(r, 2))
    for i in range(1, r + 1):
        pre.mul_poch(1, 1, i - 1)
        S.poch(pre, i - 1, b=1)
        S.poch(pre, i, c=1)
        _infinite_block(S, pre, i, 1, terminating)
    rhs = []
    for l in range(r + 1):
        t = QProduct(1, l)
        S.poch(t, l, d=1)
        S.poch(t, r - l, q=1 - r + l, d=1, b=-1)
        t.mul_poch(-r, 1, l)
        t.mul_poch(1, 1, l, -1)
        S.poch(t, r - l, -1, q=-r + l, f=1, b=-1)
        S.poch(t, l, -1, c=1)
        rhs.append(pre * t)
    return lhs, rhs


# -- reports ---------------------------------------------------------------------------


def _numeric_check(lhs_terms, rhs_terms, L, R, rng):
    """Evaluate at three random complex q: exact values against each other
    and against direct floating summation of the factored terms."""
    worst = 0.0
    points = []
    for _ in range(3):
        z = cmath.rect(rng.uniform(0.3, 0.8), rng.uniform(0.0, 2 * math.pi))
        lv = L.eval_complex(z)
        rv = R.eval_complex(z)
        lt = [t.eval_complex(z) for t in lhs_terms]
        rt = [t.eval_complex(z) for t in rhs_terms]
        ln, rn = sum(lt, 0j), sum(rt, 0j)
        # relative to the absolute term mass, so cancellation is not
        # mistaken for disagreement
        mass = max(sum(map(abs, lt)), sum(map(abs, rt)))
        scale = max(abs(lv), abs(rv), mass, 1e-300)
        err = max(abs(lv - rv), abs(lv - ln), abs(rv - rn)) / scale
        worst = max(worst, err)
        points.append([z.real, z.imag])
    return worst, points


def _evaluate(builder, weights=None):
    lhs_terms, rhs_terms = builder(weights)
    return lhs_terms, rhs_terms, qproduct_sum(lhs_terms), qproduct_sum(rhs_terms)


def _run(name, p, builder, numeric=True, rng=None, extra=None, generic=False):
    """Evaluate both sides and compare.

    With ``generic`` a literal specialization that hits 0/0 between
    factors is retried as the limit along a generic direction of the free
    parameters (q^-m kept exact).  For fixed m these identities are
    rational in the free parameters, so such a limit is the value of the
    continuous left-hand side.
    """
    params = p.as_dict()
    if extra:
        params.update(extra)
    note = ""
    try:
        lhs_terms, rhs_terms, L, R = _evaluate(builder)
    except InadmissibleError as exc:
        reason = f"inadmissible specialization: {exc}"
        if not generic:
            return VerificationReport(name, params, "inadmissible", reason=reason)
        try:
            lhs_terms, rhs_terms, L, R = _evaluate(builder, GENERIC_WEIGHTS)
        except (InadmissibleError, DomainError) as exc2:
            return VerificationReport(name, params, "inadmissible", reason=f"{reason}; generic limit: {exc2}")
        note = "evaluated as a limit along a generic parameter direction"
    except DomainError as exc:
        return VerificationReport(name, params, "fail", equal=False, reason=f"limit does not exist: {exc}")
    equal = L == R
    rep = VerificationReport(name, params, "pass" if equal else "fail", equal=equal, reason=note)
    if not equal:
        rep.lhs = str(L)
        rep.rhs = str(R)
    if numeric:
        rng = rng or random.Random(repr(sorted(params.items())))
        live_l = [t for t in lhs_terms if not t.vanishes()]
        live_r = [t for t in rhs_terms if not t.vanishes()]
        err, pts = _numeric_check(live_l, live_r, L, R, rng)
        rep.numeric_max_rel_error = err
        rep.numeric_points = pts
        if err > NUMERIC_TOL and rep.status == "pass":
            rep.status = "fail"
            rep.reason = f"numeric cross-check disagreement {err:.3g}"
            rep.lhs, rep.rhs = str(L), str(R)
    return rep


def verify_cor3(p, numeric=True, rng=None):
    return _run("cor3", p, lambda w: _cor3_sides(p, w), numeric, rng, generic=True)


def verify_eq33(p, numeric=True, rng=None):
    return _run("eq33", p, lambda w: _eq33_sides(p, w), numeric, rng, generic=True)


def verify_eq34(p, numeric=True, rng=None):
    return _run("eq34", p, lambda w: _eq34_sides(p, w), numeric, rng, generic=True)


def _with_terminating_m(p, terminating):
    """Set m from the terminating exponent (b = q^-m or c = q^-m)."""
    return replace(p, m=_terminating_exponents(p, terminating))


def verify_cor4(p, terminating="c", numeric=True, rng=None):
    p = _with_terminating_m(p, terminating)
    return _run("cor4", p, lambda w: _cor4_sides(p, terminating), numeric, rng, {"terminating": terminating})


def verify_eq37(p, numeric=True, rng=None):
    return _run("eq37", p, lambda w: _eq37_sides(p, w), numeric, rng, generic=True)


def verify_eq38(p, terminating="c", numeric=True, rng=None):
    p = _with_terminating_m(p, terminating)
    return _run("eq38", p, lambda w: _eq38_sides(p, terminating), numeric, rng, {"terminating": terminating})


def sides(name, p, terminating="c"):
    """Exact (LHS, RHS) RationalQ values of an identity."""
    builders = {
        "cor3": lambda: _cor3_sides(p),
        "eq33": lambda: _eq33_sides(p),
        "eq34": lambda: _eq34_sides(p),
        "cor4": lambda: _cor4_sides(p, terminating),
        "eq37": lambda: _eq37_sides(p),
        "eq38": lambda: _eq38_sides(p, terminating),
    }
    lhs, rhs = builders[name]()
    return qproduct_sum(lhs), qproduct_sum(rhs)


# -- sampling and sweeps --------------------------------------------------------------

# identity key -> (verifier, free exponents, terminating parameter or None,
#                  whether s matters)
IDENTITIES = {
    "cor3": (verify_cor3, ("B", "D", "F"), None, True),
    "eq33": (verify_eq33, ("B", "C", "D", "E", "F"), None, False),
    "eq34": (verify_eq34, ("B", "C", "D", "F"), None, False),
    "cor4_c": (verify_cor4, ("B", "D", "F"), "c", True),
    "cor4_b": (verify_cor4, ("C", "D", "F"), "b", True),
    "eq37": (verify_eq37, ("B", "F"), None, False),
    "eq38_c": (verify_eq38, ("B", "D", "F"), "c", False),
    "eq38_b": (verify_eq38, ("C", "D", "F"), "b", False),
}


def sample_params(key, m, r, s, rng, bound=EXPONENT_BOUND):
    """Random exponents for an identity; the terminating one is -m."""
    _, free, term, _ = IDENTITIES[key]
    vals = {k: rng.randint(-bound, bound) for k in free}
    if term == "c":
        vals["C"] = -m
    elif term == "b":
        vals["B"] = -m
    return QPowerParams(m=m, r=r, s=s, **vals)


def _call(key, p, numeric, rng):
    fn, _, term, _ = IDENTITIES[key]
    if term:
        return fn(p, term, numeric=numeric, rng=rng)
    return fn(p, numeric=numeric, rng=rng)


@dataclass
class SweepResult:
    key: str
    m: int
    r: int
    s: int
    reports: list
    rejections: dict
    exhausted: bool = False

    @property
    def passed(self):
        return sum(1 for x in self.reports if x.passed)

    @property
    def failed(self):
        return [x for x in self.reports if x.status == "fail"]

    def to_json_obj(self):
        return {
            "identity": self.key,
            "m": self.m,
            "r": self.r,
            "s": self.s,
            "passed": self.passed,
            "failed": [x.to_json_obj() for x in self.failed],
            "rejections": self.rejections,
            "no_admissible_sample": self.exhausted,
        }


def sweep(key, m, r, s, trials, seed, numeric=True, max_attempts=400):
    """Verify ``trials`` admissible random specializations of one identity.

    Inadmissible draws are rejected and their reasons tallied.  When
    ``max_attempts`` draws produce no admissible sample at all, the triple
    is flagged as exhausted.
    """
    rng = random.Random(f"{seed}:{key}:{m}:{r}:{s}")
    reports = []
    rejections = {}
    attempts = 0
    while len(reports) < trials and attempts < max_attempts:
        attempts += 1
        p = sample_params(key, m, r, s, rng)
        rep = _call(key, p, numeric, rng)
        if rep.status == "inadmissible":
            rejections[rep.reason] = rejections.get(rep.reason, 0) + 1
            continue
        reports.append(rep)
    return SweepResult(key, m, r, s, reports, rejections, exhausted=not reports)
