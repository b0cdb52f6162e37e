"""q-integers, q-factorials, Gaussian binomials and shifted q-factorials."""

import threading

from .errors import DomainError
from .kernels import poly_div_binomial, poly_mul_binomial
from .qseries import LaurentPoly, RationalQ

__all__ = [
    "q_int",
    "q_bracket",
    "q_factorial",
    "q_factorial_recip",
    "q_double_factorial",
    "gaussian_binomial",
    "q_pochhammer_power",
    "q_pochhammer_rat",
]

_ONE = LaurentPoly.constant(1)
_fact_lock = threading.Lock()
_fact_memo = [[1]]  # coefficient lists of [0]!, [1]!, ...


def q_int(a):
    """[a]_q = 1 + q + ... + q^(a-1); [0]_q = 0."""
    if a < 0:
        raise DomainError("q_int needs a nonnegative argument; see q_bracket")
    return LaurentPoly([1] * a)


def q_bracket(a):
    """[a]_q = (1 - q^a)/(1 - q) for any integer a, so [-a] = -q^(-a) [a]."""
    if a >= 0:
        return q_int(a)
    return -q_int(-a).shift(a)


def _fact_coeffs(m):
    memo = _fact_memo
    if m < len(memo):
        return memo[m]
    with _fact_lock:
        while len(memo) <= m:
            i = len(memo)
            nxt = poly_div_binomial(poly_mul_binomial(memo[-1], i), 1)
            memo.append(nxt)
    return memo[m]


def q_factorial(m):
    """[m]_q! = [m]_q [m-1]_q ... [1]_q, with [0]_q! = 1."""
    if m < 0:
        raise DomainError("q_factorial needs m >= 0")
    return LaurentPoly._make(tuple(_fact_coeffs(m)), 0)


def q_factorial_recip(m):
    """1/[m]_q! as a RationalQ; zero for negative m."""
    if m < 0:
        return RationalQ(0)
    return RationalQ._trusted(_ONE, q_factorial(m))


def q_double_factorial(a):
    """[a]_q [a-2]_q ... [2]_q for even a >= 0."""
    if a < 0 or a % 2:
        raise DomainError(f"q_double_factorial needs a nonnegative even integer, got {a}")
    coeffs = [1]
    for i in range(2, a + 1, 2):
        coeffs = poly_div_binomial(poly_mul_binomial(coeffs, i), 1)
    return LaurentPoly._make(coeffs, 0)


def gaussian_binomial(n, k):
    """[n choose k]_q; zero outside 0 <= k <= n."""
    if k < 0 or k > n or n < 0:
        return LaurentPoly()
    k = min(k, n - k)
    coeffs = [1]
    for j in range(k):
        coeffs = poly_mul_binomial(coeffs, n - j)
    # Each partial quotient is a polynomial, so every division is exact;
    # a failure here is an arithmetic bug.
    for j in range(1, k + 1):
        coeffs = poly_div_binomial(coeffs, j)
    return LaurentPoly._make(coeffs, 0)


def q_pochhammer_power(A, step, k):
    """(q^A; q^step)_k = prod_{j<k} (1 - q^(A + j*step))."""
    if step == 0:
        raise DomainError("q_pochhammer_power needs a nonzero step")
    if k < 0:
        raise DomainError("q_pochhammer_power needs k >= 0")
    coeffs = [1]
    shift = 0
    sign = 1
    for j in range(k):
        e = A + j * step
        if e == 0:
            return LaurentPoly()
        if e < 0:
            sign = -sign
            shift += e
            e = -e
        coeffs = poly_mul_binomial(coeffs, e)
    if sign < 0:
        coeffs = [-c for c in coeffs]
    return LaurentPoly._make(coeffs, shift)


def q_pochhammer_rat(base, step, k):
    """prod_{j<k} (1 - base * q^(j*step)) for a RationalQ (or LaurentPoly) base."""
    if k < 0:
        raise DomainError("q_pochhammer_rat needs k >= 0")
    if isinstance(base, (int, LaurentPoly)):
        base = RationalQ(base)
    result = RationalQ(1)
    for j in range(k):
        factor = RationalQ(1) - base * LaurentPoly.monomial(j * step)
        if factor.is_zero():
            return RationalQ(0)
        result = result * factor
    return result
