"""Pure-Python polynomial and theta kernels.

Coefficient lists run from low to high degree and are trimmed (nonzero last
entry) on input; the empty list is the zero polynomial.  This module is the
fallback for :mod:`stairmaj._kernels_c` and must stay behaviourally identical
to it.
"""

from . import _kronecker

# Below this length schoolbook multiplication beats packing overhead.
KRONECKER_MIN_LEN = 24

BACKEND = "python"


def poly_mul(a, b):
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    if len(b) >= KRONECKER_MIN_LEN:
        if a is b:
            return _kronecker.square(a)
        return _kronecker.mul(a, b)
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a, j):
                out[i] += ai * bj
    return out


def poly_divexact(a, b):
    """Exact quotient a / b; ArithmeticError if b does not divide a."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    nq = len(a) - len(b) + 1
    if nq <= 0:
        raise ArithmeticError("inexact polynomial division")
    if len(b) == 1:
        d = b[0]
        out = []
        for c in a:
            q, r = divmod(c, d)
            if r:
                raise ArithmeticError("inexact polynomial division")
            out.append(q)
        return out
    if nq >= KRONECKER_MIN_LEN and len(b) >= KRONECKER_MIN_LEN:
        q = _kronecker.divexact(a, b, poly_mul)
        if q is not None:
            return q
    rem = list(a)
    lead = b[-1]
    nb = len(b) - 1
    q = [0] * nq
    for k in range(nq - 1, -1, -1):
        c, r = divmod(rem[k + nb], lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        q[k] = c
        if c:
            for j in range(nb):
                rem[k + j] -= c * b[j]
    for j in range(nb):
        if rem[j]:
            raise ArithmeticError("inexact polynomial division")
    return q


def poly_prem(a, b):
    """Pseudo-remainder of a by b: lc(b)**(deg a - deg b + 1) * a mod b."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    nb = len(b) - 1
    if len(rem) - 1 < nb:
        return rem
    lead = b[-1]
    delta = len(rem) - 1 - nb
    steps = 0
    while rem and len(rem) - 1 >= nb:
        c = rem[-1]
        shift = len(rem) - 1 - nb
        rem = [x * lead for x in rem]
        for j in range(nb + 1):
            rem[shift + j] -= c * b[j]
        while rem and rem[-1] == 0:
            rem.pop()
        steps += 1
    if steps <= delta:
        f = lead ** (delta + 1 - steps)
        rem = [x * f for x in rem]
    return rem


def poly_mul_binomial(a, k):
    """a * (1 - q**k) for k >= 1."""
    if not a:
        return []
    out = list(a) + [0] * k
    for i, c in enumerate(a):
        out[i + k] -= c
    return out


def poly_div_binomial(a, k):
    """Exact quotient a / (1 - q**k) for k >= 1."""
    if not a:
        return []
    n = len(a) - k
    if n <= 0:
        raise ArithmeticError("inexact polynomial division")
    out = list(a[:n])
    for i in range(k, n):
        out[i] += out[i - k]
    for i in range(n, len(a)):
        if a[i] != (-out[i - k] if i >= k else 0):
            raise ArithmeticError("inexact polynomial division")
    return out


def theta(x, p, tol=1e-17, cap=300):
    """Truncated product prod_{j>=0} (1 - p^j x)(1 - p^{j+1}/x)."""
    x = complex(x)
    p = complex(p)
    if x == 0:
        raise ZeroDivisionError("theta is undefined at x = 0")
    scale = max(abs(x), 1.0 / abs(x), 1.0)
    ap = abs(p)
    inv = 1.0 / x
    val = 1.0 + 0.0j
    pj = 1.0 + 0.0j
    mag = 1.0
    for _ in range(cap):
        val *= (1.0 - pj * x) * (1.0 - pj * p * inv)
        pj *= p
        mag *= ap
        if mag * scale < tol:
            break
    return val


def theta_terms(x, p, tol=1e-17, cap=300):
    """Number of factor pairs :func:`theta` multiplies for these arguments."""
    x = complex(x)
    scale = max(abs(x), 1.0 / abs(x), 1.0)
    ap = abs(complex(p))
    mag = 1.0
    for j in range(1, cap + 1):
        mag *= ap
        if mag * scale < tol:
            return j
    return cap

