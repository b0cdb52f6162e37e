"""Kronecker substitution for large integer polynomials.

A polynomial with signed integer coefficients is packed into one big integer
by evaluating it at ``2**bits``; products and exact quotients of packed values
are then computed by GMP and unpacked back into coefficient lists.  Both the
compiled and the pure-Python kernels delegate here above a size threshold.
"""

import gmpy2
from gmpy2 import mpz


def _maxbits(coeffs):
    hi = max(coeffs)
    lo = min(coeffs)
    return max(int(hi).bit_length(), int(-lo).bit_length())


def pack(coeffs, bits):
    """Return sum(c_i * 2**(bits*i)) for signed coefficients."""
    if min(coeffs) >= 0:
        return gmpy2.pack(list(coeffs), bits)
    pos = [c if c > 0 else 0 for c in coeffs]
    neg = [-c if c < 0 else 0 for c in coeffs]
    return gmpy2.pack(pos, bits) - gmpy2.pack(neg, bits)


def unpack(value, bits, length):
    """Inverse of :func:`pack` given every digit satisfies |d| < 2**(bits-1)."""
    half = 1 << (bits - 1)
    shifted = value + gmpy2.pack([half] * length, bits)
    digits = gmpy2.unpack(shifted, bits)
    if len(digits) < length:
        raise ArithmeticError("kronecker unpack underflow")
    out = [int(d) - half for d in digits[:length]]
    if len(digits) > length and any(digits[length:]):
        raise ArithmeticError("kronecker unpack overflow")
    return out


def mul(a, b):
    """Product of two nonempty coefficient lists."""
    bits = _maxbits(a) + _maxbits(b) + min(len(a), len(b)).bit_length() + 2
    prod = pack(a, bits) * pack(b, bits)
    return unpack(prod, bits, len(a) + len(b) - 1)


def square(a):
    bits = 2 * _maxbits(a) + len(a).bit_length() + 2
    p = pack(a, bits)
    return unpack(p * p, bits, 2 * len(a) - 1)


def divexact(a, b, mul_check):
    """Exact quotient ``a / b``, or ``None`` if this route cannot decide.

    Raises ArithmeticError when the division is certainly inexact.  The
    candidate quotient is confirmed with ``mul_check`` (a multiplication
    kernel), because integer exactness of the packed values alone does not
    imply polynomial exactness.
    """
    nq = len(a) - len(b) + 1
    bits = _maxbits(a) + len(a).bit_length() + 8
    for _ in range(3):
        A = pack(a, bits)
        B = pack(b, bits)
        Q, R = gmpy2.t_divmod(A, B)
        if R != 0:
            raise ArithmeticError("inexact polynomial division")
        try:
            q = unpack(Q, bits, nq)
        except ArithmeticError:
            q = None
        if q is not None and q[-1] != 0 and mul_check(q, b) == list(a):
            return q
        bits *= 2
    return None


def to_mpz(x):
    return mpz(x)
