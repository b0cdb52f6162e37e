"""Major-index generating functions of staircase-minus-rectangle shapes.

Evaluators
----------
det_majgf        [cells]! * det(1/[lam_i - i - mu_j + j]!) for any skew shape.
laplace_sum      Laplace expansion of that determinant along the first r
                 columns, written as an r-fold sum with base q^-2 factorials.
thm1_even/odd    (N-n)/2-fold (resp. (N-n+1)/2-fold) sums.
closed_*         product formulas for N = n and N = n + 1.

Every summand is built as a :class:`QProduct`, so sums come out reduced
without polynomial gcds.  Final generating functions are checked to be
polynomials with nonnegative coefficients.
"""

from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import InvariantError, NotPolynomialError, ValidationError
from .kernels import poly_divexact, poly_mul
from .qproduct import QProduct, expand_cyclotomic, qproduct_sum
from .qseries import LaurentPoly, RationalQ
from .tableaux import SkewShape, StaircaseSpec, to_skew_shape

__all__ = [
    "det_majgf",
    "lemma_det_rhs",
    "lemma_det_direct",
    "rational_det",
    "laplace_sum",
    "thm1_even",
    "thm1_odd",
    "staircase_gf",
    "closed_staircase",
    "closed_staircase_plus1",
    "METHODS",
    "majgf",
]


def _final(value, label):
    """Gate: the value must be a polynomial with nonnegative coefficients."""
    if isinstance(value, RationalQ):
        try:
            value = value.as_ordinary_polynomial()
        except NotPolynomialError as exc:
            raise InvariantError(f"{label}: result is not a polynomial ({exc})") from exc
    if value.coefficients and value.min_exponent < 0:
        raise InvariantError(f"{label}: negative power q^{value.min_exponent} in {value}")
    if not value.nonnegative():
        raise InvariantError(f"{label}: negative coefficient in {value}")
    return value


# -- determinant -----------------------------------------------------------


def _sub(a, b):
    if len(a) < len(b):
        out = [-x for x in b]
        for i, x in enumerate(a):
            out[i] += x
    else:
        out = list(a)
        for i, x in enumerate(b):
            out[i] -= x
    while out and not out[-1]:
        out.pop()
    return out


def bareiss(M):
    """Determinant of a square matrix of integer coefficient lists,
    by fraction-free elimination.  M is consumed."""
    n = len(M)
    if n == 0:
        return [1]
    sign = 1
    prev = [1]
    for k in range(n - 1):
        if not M[k][k]:
            for p in range(k + 1, n):
                if M[p][k]:
                    M[k], M[p] = M[p], M[k]
                    sign = -sign
                    break
            else:
                return []
        piv = M[k][k]
        for i in range(k + 1, n):
            row = M[i]
            lead = row[k]
            for j in range(k + 1, n):
                a = poly_mul(row[j], piv) if row[j] else []
                if lead and M[k][j]:
                    a = _sub(a, poly_mul(lead, M[k][j]))
                row[j] = poly_divexact(a, prev) if a else []
            row[k] = []
        prev = piv
    det = M[n - 1][n - 1]
    return [-c for c in det] if sign < 0 else list(det)


def det_majgf(shape):
    """The determinant formula for the maj generating function of a skew shape."""
    if isinstance(shape, StaircaseSpec):
        shape = to_skew_shape(shape)
    lam, mu = shape.lam, shape.mu
    n = len(lam)
    cells = shape.cell_count
    if n == 0:
        return LaurentPoly.constant(1)
    d = [[lam[i] - i - mu[j] + j for j in range(n)] for i in range(n)]
    D = [max(row) for row in d]
    # Row i scaled by [D_i]!: entry becomes [d_ij + 1] ... [D_i] (or 0).
    scale = QProduct().mul_qfact(cells)
    M = []
    for i in range(n):
        scale.mul_qfact(D[i], power=-1)
        row = []
        for j in range(n):
            if d[i][j] < 0:
                row.append([])
            else:
                p = QProduct()
                for t in range(d[i][j] + 1, D[i] + 1):
                    p.mul_qint(t)
                row.append(expand_cyclotomic(p.cyclotomic_exponents()))
        M.append(row)
    det = bareiss(M)
    if not det:
        raise InvariantError(f"det_majgf: vanishing determinant for {shape}")
    cyc = scale.cyclotomic_exponents()
    num = poly_mul(det, expand_cyclotomic({k: e for k, e in cyc.items() if e > 0}))
    den = expand_cyclotomic({k: -e for k, e in cyc.items() if e < 0})
    try:
        res = poly_divexact(num, den)
    except ArithmeticError as exc:
        raise InvariantError(f"det_majgf: row scaling does not divide out for {shape}") from exc
    return _final(LaurentPoly._make(res, 0), "det_majgf")


def rational_det(M):
    """Determinant of a small matrix of RationalQ values by elimination."""
    M = [[RationalQ(x) if not isinstance(x, RationalQ) else x for x in row] for row in M]
    n = len(M)
    det = RationalQ(1)
    for k in range(n):
        p = next((i for i in range(k, n) if not M[i][k].is_zero()), None)
        if p is None:
            return RationalQ(0)
        if p != k:
            M[k], M[p] = M[p], M[k]
            det = -det
        piv = M[k][k]
        det = det * piv
        for i in range(k + 1, n):
            if M[i][k].is_zero():
                continue
            f = M[i][k] / piv
            for j in range(k + 1, n):
                M[i][j] = M[i][j] - f * M[k][j]
    return det


def lemma_det_direct(X):
    """det_{1<=i,j<=s} (1/[X_i + j]!) computed entry by entry."""
    from .qcombinat import q_factorial_recip

    s = len(X)
    return rational_det([[q_factorial_recip(X[i] + j) for j in range(1, s + 1)] for i in range(s)])


def lemma_det_rhs(X):
    """Closed form of det(1/[X_i + j]!):
    q^(2 C(s+1,3) + sum (i-1) X_i) prod 1/[X_i + s]! prod_{i<j} [X_i - X_j]."""
    s = len(X)
    p = QProduct(1, 2 * comb(s + 1, 3) + sum(i * x for i, x in enumerate(X)))
    for x in X:
        if x + s < 0:
            return RationalQ(0)
        p.mul_qfact(x + s, power=-1)
    for i in range(s):
        for j in range(i + 1, s):
            p.mul_qint(X[i] - X[j])
    return p.to_rational()


# -- Laplace expansion -----------------------------------------------------


def _check_spec(spec):
    if not isinstance(spec, StaircaseSpec):
        raise ValidationError("expected a StaircaseSpec")
    return spec.N, spec.n, spec.m, spec.r


def laplace_prefactor(spec):
    N, n, m, r = _check_spec(spec)
    cells = spec.cell_count
    e = (
        2 * comb(r + 1, 3)
        + 2 * comb(n - r + 1, 3)
        + (N + 1 - m) * comb(r, 2)
        + (N + 1 + r) * comb(n - r, 2)
        - 4 * comb(n + 1, 3)
        + 2 * r * comb(n + 1, 2)
        - 2 * r * r
    )
    p = QProduct((-1) ** comb(r, 2), e)
    k = comb(n, 2) - (n - 1) * r
    p.mul_binomial(2, k).mul_binomial(1, -k)  # (1+q)^k
    p.mul_binomial(1, -r * (r - 1))
    p.mul_qfact(cells)
    for i in range(1, n + 1):
        p.mul_qfact(i - 1, base=2)
        p.mul_qfact(N + n + 1 - 2 * i, power=-1)
    if r:
        p.mul_qfact(N + n - 1, power=r)
        p.mul_qfact(n - 1, base=2, power=-r)
        p.mul_qfact(N - m + r - 1, power=-r)
    return p


def laplace_bound(spec, extended=False):
    if extended:
        return (spec.N - spec.m + spec.r - 1) // 2
    return spec.n - 1


def laplace_terms(spec, bound=None):
    """Summands of the r-fold sum over 0 <= k_1 < ... < k_r <= bound."""
    N, n, m, r = _check_spec(spec)
    if bound is None:
        bound = n - 1
    # With m = 0 and n = r the first two numerator factorials coincide with
    # the first two denominator ones and cancel.
    cancel = m == 0 and n == r
    for ks in combinations(range(bound + 1), r):
        t = QProduct(1, -2 * sum((2 * i + 1) * k for i, k in enumerate(ks)))
        for i in range(r):
            for j in range(i + 1, r):
                t.mul_binomial(-2 * (ks[i] - ks[j]), 2)
        for k in ks:
            if not cancel:
                t.mul_poch(N - m + r - 1, -2, k)
                t.mul_poch(N - m + r - 2, -2, k)
                t.mul_poch(N + n - 1, -2, k, power=-1)
                t.mul_poch(N + n - 2, -2, k, power=-1)
            t.mul_poch(2 * n - 2, -2, k)
            t.mul_poch(-2, -2, k, power=-1)
        yield t


def laplace_sum(spec, bound=None, extended=False):
    """The r-fold sum obtained from the Laplace expansion, as a RationalQ.

    ``bound`` overrides the upper summation limit; ``extended=True`` uses
    floor((N - m + r - 1)/2) instead of n - 1.
    """
    if bound is None:
        bound = laplace_bound(spec, extended)
    pref = laplace_prefactor(spec)
    return qproduct_sum(pref * t for t in laplace_terms(spec, bound))


# -- multi-sum formulas ------------------------------------------------------


def _half_integer(x, label):
    if x.denominator != 1:
        raise InvariantError(f"{label}: non-integral exponent {x}")
    return int(x)


def _thm1_even_parts(spec):
    N, n, m, r = _check_spec(spec)
    s = N - n
    if s % 2:
        raise ValidationError(f"thm1_even needs N - n even, got N - n = {s}")
    h = s // 2
    cells = spec.cell_count
    e = (
        Fraction(m * r * (r + m - 2 * n), 2)
        + Fraction(r * s, 2) * (Fraction(N - 3 * n, 2) - m + 1)
        + comb(n + 1, 3)
        + s * (comb(n, 2) + comb(h, 2))
    )
    p = QProduct((-1) ** (comb(h, 2) + r * s // 2), _half_integer(e, "thm1_even"))
    k = comb(n, 2) - comb(h, 2) - m * r
    p.mul_binomial(2, k).mul_binomial(1, -k)
    p.mul_binomial(1, -comb(h, 2) - r * s)
    p.mul_qfact(cells)
    if h:
        p.mul_qfact(r + (s - 2) // 2, base=2, power=-h)
        p.mul_qfact((N + n - 2) // 2, base=2, power=-h)
    for i in range(1, (N + n) // 2 + 1):
        p.mul_qfact(i - 1, base=2)
    for i in range(1, n + 1):
        p.mul_qfact(N - n + 2 * i - 1, power=-1)
    for i in range(1, r + 1):
        p.mul_qfact(h + i - 1, base=2)
        p.mul_qfact(n + m - r + 2 * i - 1)
        p.mul_poch(n + m - r + 2 * i, 2, h)
        p.mul_qfact(m + i - 1, base=2, power=-1)
        p.mul_qfact(N - m - r + 2 * i - 1, power=-1)

    def terms():
        for L in combinations(range(r + h), h):
            t = QProduct(1, sum((N + n - 2 * (2 * i - 1)) * L[i - 1] for i in range(1, h + 1)))
            for i in range(h):
                for j in range(i + 1, h):
                    t.mul_qint(L[j] - L[i], base=2, power=2)
            for i in range(1, h + 1):
                l = L[i - 1]
                k = r + i - l - 1
                t.mul_gauss(h - 1 + r, l, base=2)
                t.mul_poch(2 - N - n, 2, l)
                t.mul_poch(n + m - r - 2 * i + 1, 2, k)
                t.mul_poch(N - m - r - 2 * i + 2, 2, k)
                t.mul_poch(N + m - r - 2 * i + 2, 2, k, power=-1)
            yield t

    return p, terms()


def _thm1_odd_parts(spec):
    N, n, m, r = _check_spec(spec)
    s = N - n
    if s % 2 == 0:
        raise ValidationError(f"thm1_odd needs N - n odd, got N - n = {s}")
    h = (s + 1) // 2
    g = (s - 1) // 2
    cells = spec.cell_count
    e = (
        Fraction(m * r * (r + m - 2 * n + 2), 2)
        + Fraction(r * (s + 1), 2) * (Fraction(N - 3 * n + 1, 2) - m)
        + comb(n + 1, 3)
        + s * comb(n, 2)
        + (s + 1) * comb(h, 2)
    )
    p = QProduct((-1) ** (comb(h, 2) + r * (s + 1) // 2), _half_integer(e, "thm1_odd"))
    k = comb(n, 2) - comb(h, 2) - m * r
    p.mul_binomial(2, k).mul_binomial(1, -k)
    p.mul_binomial(1, -comb(h, 2) - r * s)
    p.mul_qfact(cells)
    p.mul_qfact(r + g, base=2, power=-h)
    p.mul_qfact((N + n - 1) // 2, base=2, power=-h)
    for i in range(1, (N + n + 1) // 2 + 1):
        p.mul_qfact(i - 1, base=2)
    for i in range(1, n + 1):
        p.mul_qfact(N - n + 2 * i - 1, power=-1)
    for i in range(1, r + 1):
        p.mul_qfact(h + i - 1, base=2)
        p.mul_qfact(n + m - r + 2 * i - 1)
        p.mul_poch(n + m - r + 2 * i + 1, 2, g)
        p.mul_qfact(m + i - 1, base=2, power=-1)
        p.mul_qfact(N - m - r + 2 * i - 1, power=-1)

    def terms():
        for L in combinations(range(r + g + 1), h):
            t = QProduct(1, sum((N + n + 1 - 2 * (2 * i - 1)) * L[i - 1] for i in range(1, h + 1)))
            for i in range(h):
                for j in range(i + 1, h):
                    t.mul_qint(L[j] - L[i], base=2, power=2)
            for i in range(1, h + 1):
                l = L[i - 1]
                k = r + i - l - 1
                t.mul_gauss(g + r, l, base=2)
                t.mul_poch(1 - N - n, 2, l)
                t.mul_poch(n + m - r - 2 * i + 2, 2, k)
                t.mul_poch(N - m - r - 2 * i + 2, 2, k)
                t.mul_poch(N + m - r - 2 * i + 2, 2, k, power=-1)
            yield t

    return p, terms()


def thm1_even(spec):
    """The (N-n)/2-fold sum formula, for N - n even."""
    p, terms = _thm1_even_parts(spec)
    return _final(qproduct_sum(p * t for t in terms), "thm1_even")


def thm1_odd(spec):
    """The (N-n+1)/2-fold sum formula, for N - n odd."""
    p, terms = _thm1_odd_parts(spec)
    return _final(qproduct_sum(p * t for t in terms), "thm1_odd")


def staircase_gf(spec):
    """Dispatch to thm1_even or thm1_odd by the parity of N - n."""
    _check_spec(spec)
    return thm1_odd(spec) if spec.s % 2 else thm1_even(spec)


# -- closed forms ------------------------------------------------------------


def closed_staircase(n, m, r):
    """Product formula for the shape (n, n-1, ..., 1)/(m^r)."""
    spec = StaircaseSpec(n, n, m, r)
    e = Fraction(m * r * (r + m - 2 * n), 2) + comb(n + 1, 3)
    p = QProduct(1, _half_integer(e, "closed_staircase"))
    k = comb(n, 2) - m * r
    p.mul_binomial(2, k).mul_binomial(1, -k)
    p.mul_qfact(spec.cell_count)
    for i in range(1, n + 1):
        p.mul_qfact(i - 1, base=2)
        p.mul_qfact(2 * i - 1, power=-1)
    for i in range(1, r + 1):
        p.mul_qfact(i - 1, base=2)
        p.mul_qfact(n + m - r + 2 * i - 1)
        p.mul_qfact(m + i - 1, base=2, power=-1)
        p.mul_qfact(n - m - r + 2 * i - 1, power=-1)
    return _final(p.to_rational(), "closed_staircase")


def closed_staircase_plus1(n, m, r):
    """Single-sum formula for the shape (n+1, n, ..., 2)/(m^r)."""
    spec = StaircaseSpec(n + 1, n, m, r)
    e = Fraction(m * r * (r + m - 2 * n + 2), 2) + r * (1 - n - m) + comb(n + 1, 3) + comb(n, 2)
    p = QProduct(1, _half_integer(e, "closed_staircase_plus1"))
    k = comb(n, 2) - (m - 1) * r
    p.mul_binomial(2, k).mul_binomial(1, -k)
    p.mul_qfact(spec.cell_count)
    for i in range(1, n + 1):
        p.mul_qfact(i - 1, base=2)
        p.mul_qfact(2 * i, power=-1)
    for i in range(1, r + 1):
        p.mul_qfact(i - 1, base=2)
        p.mul_qfact(n + m - r + 2 * i - 1)
        p.mul_qfact(m + i - 1, base=2, power=-1)
        p.mul_qfact(n - m - r + 2 * i, power=-1)
    terms = []
    for l in range(r + 1):
        # (-1)^r q^(2 n l) / (1 - q^2)^r, reading the exponent's l_1 as l
        t = QProduct((-1) ** r, 2 * n * l)
        t.mul_binomial(2, -r)
        t.mul_gauss(r, l, base=2)
        t.mul_poch(-2 * n, 2, l)
        t.mul_poch(n + m - r, 2, r - l)
        t.mul_poch(n - m - r + 1, 2, r - l)
        t.mul_poch(n + m - r + 1, 2, r - l, power=-1)
        terms.append(p * t)
    return _final(qproduct_sum(terms), "closed_staircase_plus1")


# -- dispatch ------------------------------------------------------------------

METHODS = ("oracle", "det", "thm1", "laplace", "closed")


def majgf(target, method="det", limit=None):
    """Generating function of a SkewShape or StaircaseSpec by one method.

    ``laplace`` returns the RationalQ value passed through the polynomial
    gate; ``thm1``, ``laplace`` and ``closed`` need a StaircaseSpec (closed
    additionally needs N - n in {0, 1}).
    """
    from .tableaux import maj_gf_oracle

    if method not in METHODS:
        raise ValidationError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    shape = to_skew_shape(target) if isinstance(target, StaircaseSpec) else target
    if method == "oracle":
        return maj_gf_oracle(shape, limit)
    if method == "det":
        return det_majgf(shape)
    if not isinstance(target, StaircaseSpec):
        raise ValidationError(f"method {method!r} needs a staircase spec (N, n, m, r)")
    if method == "thm1":
        return staircase_gf(target)
    if method == "laplace":
        return _final(laplace_sum(target), "laplace_sum")
    if target.s == 0:
        return closed_staircase(target.n, target.m, target.r)
    if target.s == 1:
        return closed_staircase_plus1(target.n, target.m, target.r)
    raise ValidationError("method 'closed' needs N - n in {0, 1}")


def as_skew(target):
    if isinstance(target, SkewShape):
        return target
    return to_skew_shape(target)


# -- LaTeX in bracket notation -------------------------------------------------


def _fact_tex(a, base=1):
    sub = "q" if base == 1 else f"q^{{{base}}}"
    return f"[{a}]_{{{sub}}}!"


def closed_latex(spec):
    """The closed form of a staircase spec with N - n in {0, 1}, written
    with q-factorials [a]_q! and Gaussian binomials, numbers substituted."""
    n, m, r, s = spec.n, spec.m, spec.r, spec.s
    if s not in (0, 1):
        raise ValidationError("closed forms exist only for N - n in {0, 1}")
    if s == 0:
        e = Fraction(m * r * (r + m - 2 * n), 2) + comb(n + 1, 3)
        k = comb(n, 2) - m * r
    else:
        e = Fraction(m * r * (r + m - 2 * n + 2), 2) + r * (1 - n - m) + comb(n + 1, 3) + comb(n, 2)
        k = comb(n, 2) - (m - 1) * r
    num = [f"q^{{{_half_integer(e, 'closed_latex')}}}", f"(1+q)^{{{k}}}", _fact_tex(spec.cell_count)]
    den = []
    for i in range(1, n + 1):
        num.append(_fact_tex(i - 1, 2))
        den.append(_fact_tex(2 * i - 1 + s))
    for i in range(1, r + 1):
        num.append(_fact_tex(i - 1, 2))
        num.append(_fact_tex(n + m - r + 2 * i - 1))
        den.append(_fact_tex(m + i - 1, 2))
        den.append(_fact_tex(n - m - r + 2 * i - 1 + s))
    out = r"\frac{%s}{%s}" % (" ".join(num), " ".join(den) or "1")
    if s == 1:
        out += (
            r" \cdot \frac{(-1)^{%d}}{(1-q^2)^{%d}} \sum_{l=0}^{%d} q^{%d l}"
            r" \begin{bmatrix} %d \\ l \end{bmatrix}_{q^2}"
            r" \frac{(q^{-%d};q^2)_l\, (q^{%d};q^2)_{%d-l}\, (q^{%d};q^2)_{%d-l}}{(q^{%d};q^2)_{%d-l}}"
        ) % (r, r, r, 2 * n, r, 2 * n, n + m - r, r, n - m - r + 1, r, n + m - r + 1, r)
    return out
