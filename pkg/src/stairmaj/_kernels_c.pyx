# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled polynomial and theta kernels.

Same contracts as :mod:`stairmaj._kernels_py`.  Multiplication takes a
machine-integer path when the coefficient bounds guarantee no int64
overflow, and defers to Kronecker substitution for long operands.
"""

from libc.stdlib cimport malloc, free

from . import _kronecker

KRONECKER_MIN_LEN = 24

BACKEND = "cython"

cdef long long _LIMIT = 1LL << 62


cdef int _bits_i64(list a, long long *buf):
    """Copy a into buf and return its max bit length, or -1 if it overflows."""
    cdef Py_ssize_t i, n = len(a)
    cdef long long v
    cdef unsigned long long m = 0, u
    cdef int bits = 0
    for i in range(n):
        x = a[i]
        try:
            v = x
        except OverflowError:
            return -1
        if v <= -_LIMIT or v >= _LIMIT:
            return -1
        buf[i] = v
        u = <unsigned long long>(-v if v < 0 else v)
        if u > m:
            m = u
    while m:
        bits += 1
        m >>= 1
    return bits


cdef int _bitlen(Py_ssize_t n):
    cdef int b = 0
    while n:
        b += 1
        n >>= 1
    return b


def poly_mul(a, b):
    cdef list la, lb, out
    cdef Py_ssize_t na, nb, i, j, n
    cdef long long *ba
    cdef long long *bb
    cdef long long *bo
    cdef long long av
    cdef int bits_a, bits_b
    if not a or not b:
        return []
    la = a if type(a) is list else list(a)
    lb = b if type(b) is list else list(b)
    if len(la) < len(lb):
        la, lb = lb, la
    na = len(la)
    nb = len(lb)
    if nb >= KRONECKER_MIN_LEN:
        if la is lb:
            return _kronecker.square(la)
        return _kronecker.mul(la, lb)
    n = na + nb - 1
    ba = <long long *>malloc(na * sizeof(long long))
    bb = <long long *>malloc(nb * sizeof(long long))
    bo = <long long *>malloc(n * sizeof(long long))
    try:
        bits_a = _bits_i64(la, ba)
        bits_b = _bits_i64(lb, bb) if bits_a >= 0 else -1
        if bits_a >= 0 and bits_b >= 0 and bits_a + bits_b + _bitlen(nb) <= 62:
            for i in range(n):
                bo[i] = 0
            for i in range(na):
                av = ba[i]
                if av:
                    for j in range(nb):
                        bo[i + j] += av * bb[j]
            return [bo[i] for i in range(n)]
    finally:
        free(ba)
        free(bb)
        free(bo)
    out = [0] * n
    for j in range(nb):
        bj = lb[j]
        if bj:
            for i in range(na):
                out[i + j] = out[i + j] + la[i] * bj
    return out


def poly_divexact(a, b):
    cdef list rem, q, lb
    cdef Py_ssize_t nq, nb, k, j
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    lb = b if type(b) is list else list(b)
    nq = len(a) - len(lb) + 1
    if nq <= 0:
        raise ArithmeticError("inexact polynomial division")
    if len(lb) == 1:
        d = lb[0]
        q = []
        for c in a:
            qq, r = divmod(c, d)
            if r:
                raise ArithmeticError("inexact polynomial division")
            q.append(qq)
        return q
    if nq >= KRONECKER_MIN_LEN and len(lb) >= KRONECKER_MIN_LEN:
        res = _kronecker.divexact(a, lb, poly_mul)
        if res is not None:
            return res
    rem = list(a)
    lead = lb[len(lb) - 1]
    nb = len(lb) - 1
    q = [0] * nq
    unit = lead == 1
    for k in range(nq - 1, -1, -1):
        if unit:
            c = rem[k + nb]
        else:
            c, r = divmod(rem[k + nb], lead)
            if r:
                raise ArithmeticError("inexact polynomial division")
        q[k] = c
        if c:
            for j in range(nb):
                rem[k + j] = rem[k + j] - c * lb[j]
    for j in range(nb):
        if rem[j]:
            raise ArithmeticError("inexact polynomial division")
    return q


def poly_prem(a, b):
    cdef list rem, lb
    cdef Py_ssize_t nb, shift, j, delta, steps
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    lb = b if type(b) is list else list(b)
    nb = len(lb) - 1
    if len(rem) - 1 < nb:
        return rem
    lead = lb[nb]
    delta = len(rem) - 1 - nb
    steps = 0
    while rem and len(rem) - 1 >= nb:
        c = rem[len(rem) - 1]
        shift = len(rem) - 1 - nb
        rem = [x * lead for x in rem]
        for j in range(nb + 1):
            rem[shift + j] = rem[shift + j] - c * lb[j]
        while rem and rem[len(rem) - 1] == 0:
            rem.pop()
        steps += 1
    if steps <= delta:
        f = lead ** (delta + 1 - steps)
        rem = [x * f for x in rem]
    return rem


def poly_mul_binomial(a, Py_ssize_t k):
    cdef list out
    cdef Py_ssize_t i, n
    if not a:
        return []
    out = list(a) + [0] * k
    n = len(a)
    for i in range(n):
        out[i + k] = out[i + k] - a[i]
    return out


def poly_div_binomial(a, Py_ssize_t k):
    cdef list out
    cdef Py_ssize_t i, n, total
    if not a:
        return []
    total = len(a)
    n = total - k
    if n <= 0:
        raise ArithmeticError("inexact polynomial division")
    out = list(a[:n])
    for i in range(k, n):
        out[i] = out[i] + out[i - k]
    for i in range(n, total):
        if a[i] != (-out[i - k] if i >= k else 0):
            raise ArithmeticError("inexact polynomial division")
    return out


def theta(x, p, double tol=1e-17, int cap=300):
    cdef double complex cx = x
    cdef double complex cp = p
    cdef double complex val = 1.0
    cdef double complex pj = 1.0
    cdef double complex inv
    cdef double ax, ap, scale, mag = 1.0
    cdef int j
    if cx == 0:
        raise ZeroDivisionError("theta is undefined at x = 0")
    ax = abs(cx)
    ap = abs(cp)
    scale = max(ax, 1.0 / ax, 1.0)
    inv = 1.0 / cx
    for j in range(cap):
        val = val * (1.0 - pj * cx) * (1.0 - pj * cp * inv)
        pj = pj * cp
        mag = mag * ap
        if mag * scale < tol:
            break
    return complex(val.real, val.imag)


def theta_terms(x, p, double tol=1e-17, int cap=300):
    cdef double complex cx = x
    cdef double ax = abs(cx)
    cdef double scale = max(ax, 1.0 / ax, 1.0)
    cdef double ap = abs(<double complex>p)
    cdef double mag = 1.0
    cdef int j
    for j in range(1, cap + 1):
        mag = mag * ap
        if mag * scale < tol:
            return j
    return cap
