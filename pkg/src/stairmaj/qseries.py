"""Exact Laurent polynomials in q and their field of fractions.

:class:`LaurentPoly` stores a dense coefficient tuple starting at
``min_exponent``; :class:`RationalQ` keeps a reduced numerator/denominator
pair.  Both are immutable and compare structurally.
"""

import json
import math
from fractions import Fraction
from functools import reduce

import gmpy2

from . import _kronecker
from .errors import DomainError, NotPolynomialError
from .kernels import poly_divexact, poly_mul, poly_prem

__all__ = [
    "LaurentPoly",
    "RationalQ",
    "Q",
    "add",
    "sub",
    "mul",
    "neg",
    "div",
    "power",
    "substitute_power",
    "as_polynomial",
    "eval_complex",
    "poly_gcd",
]


def _trim(coeffs, e):
    """Strip zeros at both ends; returns (tuple, min_exponent)."""
    hi = len(coeffs)
    while hi and not coeffs[hi - 1]:
        hi -= 1
    lo = 0
    while lo < hi and not coeffs[lo]:
        lo += 1
    if lo == hi:
        return (), 0
    if lo == 0 and hi == len(coeffs) and type(coeffs) is tuple:
        return coeffs, e
    return tuple(coeffs[lo:hi]), e + lo


class LaurentPoly:
    """Finite sum of c_e q^e with integer e of either sign and integer c_e."""

    __slots__ = ("coefficients", "min_exponent", "_hash")

    def __init__(self, coefficients=(), min_exponent=0):
        coeffs = tuple(int(c) for c in coefficients)
        self.coefficients, self.min_exponent = _trim(coeffs, int(min_exponent))
        self._hash = None

    @classmethod
    def _make(cls, coeffs, e=0):
        obj = object.__new__(cls)
        obj.coefficients, obj.min_exponent = _trim(coeffs, e)
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c):
        return cls._make((int(c),), 0)

    @classmethod
    def monomial(cls, e, c=1):
        return cls._make((int(c),), int(e))

    @classmethod
    def from_dict(cls, terms):
        """Build from a mapping exponent -> coefficient."""
        terms = {int(e): int(c) for e, c in terms.items() if c}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        coeffs = [0] * (hi - lo + 1)
        for e, c in terms.items():
            coeffs[e - lo] = c
        return cls._make(coeffs, lo)

    # -- inspection -------------------------------------------------------

    def is_zero(self):
        return not self.coefficients

    def is_constant(self):
        return len(self.coefficients) <= 1 and self.min_exponent == 0

    def is_monomial(self):
        return len(self.coefficients) == 1

    @property
    def degree(self):
        """Highest exponent present; ``None`` for the zero polynomial."""
        if not self.coefficients:
            return None
        return self.min_exponent + len(self.coefficients) - 1

    @property
    def valuation(self):
        if not self.coefficients:
            return None
        return self.min_exponent

    def __getitem__(self, e):
        i = e - self.min_exponent
        if 0 <= i < len(self.coefficients):
            return self.coefficients[i]
        return 0

    def items(self):
        e = self.min_exponent
        for i, c in enumerate(self.coefficients):
            if c:
                yield e + i, c

    def to_dict(self):
        return dict(self.items())

    def leading_coefficient(self):
        return self.coefficients[-1] if self.coefficients else 0

    def content(self):
        """Nonnegative gcd of the coefficients (0 for the zero polynomial)."""
        return _content(self.coefficients)

    def at_one(self):
        return sum(self.coefficients)

    def nonnegative(self):
        return all(c >= 0 for c in self.coefficients)

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.coefficients:
            return self
        if not self.coefficients:
            return other
        lo = min(self.min_exponent, other.min_exponent)
        hi = max(self.degree, other.degree)
        out = [0] * (hi - lo + 1)
        off = self.min_exponent - lo
        for i, c in enumerate(self.coefficients):
            out[off + i] = c
        off = other.min_exponent - lo
        for i, c in enumerate(other.coefficients):
            out[off + i] += c
        return LaurentPoly._make(out, lo)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._make(tuple(-c for c in self.coefficients), self.min_exponent)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly()
            return LaurentPoly._make(tuple(c * other for c in self.coefficients), self.min_exponent)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.coefficients or not other.coefficients:
            return LaurentPoly()
        prod = poly_mul(list(self.coefficients), list(other.coefficients))
        return LaurentPoly._make(prod, self.min_exponent + other.min_exponent)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0 and not (len(self.coefficients) == 1 and abs(self.coefficients[0]) == 1):
            raise DomainError("negative powers of a non-unit LaurentPoly; use RationalQ")
        if len(self.coefficients) == 1:
            c = self.coefficients[0]
            c = c ** k if k >= 0 else c ** (k % 2)
            return LaurentPoly._make((c,), self.min_exponent * k)
        result = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, k):
        """Multiply by q**k."""
        if not self.coefficients:
            return self
        return LaurentPoly._make(self.coefficients, self.min_exponent + k)

    def divexact(self, other):
        """Exact quotient; ArithmeticError when ``other`` does not divide."""
        if not other.coefficients:
            raise DomainError("division by the zero polynomial")
        if not self.coefficients:
            return self
        quo = poly_divexact(list(self.coefficients), list(other.coefficients))
        return LaurentPoly._make(quo, self.min_exponent - other.min_exponent)

    def divides(self, other):
        """True if self divides ``other`` in Z[q, 1/q]."""
        try:
            other.divexact(self)
        except ArithmeticError:
            return False
        return True

    def substitute_power(self, k):
        """Replace q by q**k for k >= 1."""
        if k < 1:
            raise DomainError("substitute_power needs k >= 1")
        if k == 1 or not self.coefficients:
            return self
        out = [0] * ((len(self.coefficients) - 1) * k + 1)
        out[::k] = self.coefficients
        return LaurentPoly._make(out, self.min_exponent * k)

    def reflect(self):
        """Replace q by 1/q."""
        if not self.coefficients:
            return self
        return LaurentPoly._make(self.coefficients[::-1], -self.degree)

    # -- evaluation ------------------------------------------------------

    def __call__(self, x):
        """Exact value at an integer or Fraction (q must be nonzero if any
        negative exponent is present)."""
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        e = self.min_exponent
        if e >= 0:
            return acc * x**e
        return Fraction(acc) / Fraction(x) ** (-e)

    def eval_complex(self, z):
        val, scale = _eval_scaled(self, complex(z))
        return _ldexp_complex(val, scale)

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return (
                self.min_exponent == other.min_exponent
                and self.coefficients == other.coefficients
            )
        if isinstance(other, int):
            return self == LaurentPoly.constant(other)
        if isinstance(other, RationalQ):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.min_exponent, self.coefficients))
        return self._hash

    def __bool__(self):
        return bool(self.coefficients)

    # -- formatting ------------------------------------------------------

    def __repr__(self):
        return f"LaurentPoly({list(self.coefficients)!r}, min_exponent={self.min_exponent})"

    def __str__(self):
        return _format_terms(self.items(), latex=False)

    def to_latex(self):
        return _format_terms(self.items(), latex=True)

    def to_json_obj(self):
        return {
            "min_exponent": self.min_exponent,
            "coefficients": [str(c) for c in self.coefficients],
        }

    def to_json(self):
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj):
        return cls([int(c) for c in obj["coefficients"]], obj["min_exponent"])

    @classmethod
    def from_json(cls, text):
        return cls.from_json_obj(json.loads(text))


Q = LaurentPoly.monomial(1)
_ONE = LaurentPoly.constant(1)


def _format_terms(items, latex):
    parts = []
    for e, c in items:
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            if e == 1:
                mono = "q"
            elif latex:
                mono = "q^{%d}" % e
            else:
                mono = "q^%d" % e
            if mag == 1:
                body = mono
            elif latex:
                body = f"{mag}{mono}"
            else:
                body = f"{mag}*{mono}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


def _eval_scaled(p, z):
    """Horner evaluation with coefficients scaled into float range.

    Returns (value, binary_exponent) such that the true value is
    value * 2**binary_exponent.
    """
    coeffs = p.coefficients
    if not coeffs:
        return 0j, 0
    bits = max(int(max(coeffs)).bit_length(), int(-min(coeffs)).bit_length())
    s = max(0, bits - 900)
    acc = 0j
    if s:
        for c in reversed(coeffs):
            acc = acc * z + float(c >> s if c >= 0 else -((-c) >> s))
    else:
        for c in reversed(coeffs):
            acc = acc * z + float(c)
    if p.min_exponent:
        acc *= z ** p.min_exponent
    return acc, s


def _ldexp_complex(v, e):
    if not e:
        return v
    return complex(math.ldexp(v.real, e), math.ldexp(v.imag, e))


def _abs_scaled(p, r):
    """sum |c_e| r^e, scaled like :func:`_eval_scaled`."""
    v, s = _eval_scaled(LaurentPoly._make(tuple(abs(c) for c in p.coefficients), p.min_exponent), complex(r))
    return abs(v), s


# -- integer polynomial gcd ------------------------------------------------


def _content(coeffs):
    g = 0
    for c in coeffs:
        g = math.gcd(g, c)
        if g == 1:
            return 1
    return g


def _primitive(coeffs):
    """Divide out the content and make the leading coefficient positive."""
    g = _content(coeffs)
    if coeffs[-1] < 0:
        g = -g
    if g == 1:
        return list(coeffs)
    return [c // g for c in coeffs]


def _strip(lst):
    while lst and not lst[-1]:
        lst.pop()
    return lst


def _divides(b, a):
    try:
        poly_divexact(a, b)
    except ArithmeticError:
        return False
    return True


def _maxbits(coeffs):
    return max(int(max(coeffs)).bit_length(), int(-min(coeffs)).bit_length())


def _heuristic_gcd(f, g):
    """GCDHEU: evaluate at a large power of two, take the integer gcd and
    read the polynomial back off its balanced base-2**k digits.  Returns None
    when the heuristic fails; a returned value is always verified."""
    k = max(_maxbits(f), _maxbits(g)) + 3
    for _ in range(5):
        F = _kronecker.pack(f, k)
        G = _kronecker.pack(g, k)
        H = gmpy2.gcd(F, G)
        h = _balanced_digits(H, k)
        if h:
            h = _primitive(h)
            if len(h) <= min(len(f), len(g)) and _divides(h, f) and _divides(h, g):
                return h
        k = 2 * k + 7
    return None


def _balanced_digits(H, k):
    L = H.bit_length() // k + 2
    try:
        digits = _kronecker.unpack(H, k, L)
    except ArithmeticError:
        return None
    return _strip(digits)


def _subresultant_gcd(a, b):
    """Primitive gcd via the subresultant remainder sequence."""
    if len(a) < len(b):
        a, b = b, a
    A = _primitive(a)
    B = _primitive(b)
    g = h = 1
    while True:
        delta = len(A) - len(B)
        R = _strip(poly_prem(A, B))
        if not R:
            return _primitive(B)
        if len(R) == 1:
            return [1]
        A = B
        div = g * h**delta
        B = [c // div for c in R]
        g = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g**delta // h ** (delta - 1)


def poly_gcd(a, b):
    """Primitive gcd (positive leading coefficient) of two nonzero coefficient
    lists with nonzero constant terms; the unit q**k is handled by callers."""
    if len(a) == 1 or len(b) == 1:
        return [1]
    f = _primitive(a)
    g = _primitive(b)
    if f == g:
        return f
    if len(f) >= len(g) and _divides(g, f):
        return g
    if len(g) > len(f) and _divides(f, g):
        return f
    h = _heuristic_gcd(f, g)
    if h is None:
        h = _subresultant_gcd(f, g)
    return h


# -- rational functions ----------------------------------------------------


class RationalQ:
    """Reduced quotient numerator/denominator of Laurent polynomials.

    Canonical form: the denominator has min_exponent 0 and a positive
    leading coefficient; numerator and denominator share no non-unit
    polynomial factor, and the denominator's integer content is coprime to
    the numerator's.
    """

    __slots__ = ("numerator", "denominator", "_hash")

    def __init__(self, numerator, denominator=1):
        if isinstance(numerator, int):
            numerator = LaurentPoly.constant(numerator)
        if isinstance(denominator, int):
            denominator = LaurentPoly.constant(denominator)
        if isinstance(numerator, RationalQ) or isinstance(denominator, RationalQ):
            value = _as_rational(numerator) / _as_rational(denominator)
            self.numerator, self.denominator = value.numerator, value.denominator
        else:
            self.numerator, self.denominator = _normalize(numerator, denominator)
        self._hash = None

    @classmethod
    def _trusted(cls, numerator, denominator=_ONE):
        obj = object.__new__(cls)
        obj.numerator = numerator
        obj.denominator = denominator
        obj._hash = None
        return obj

    @classmethod
    def from_poly(cls, p):
        return cls._trusted(p, _ONE)

    # -- predicates ------------------------------------------------------

    def is_zero(self):
        return self.numerator.is_zero()

    def is_polynomial(self):
        return self.denominator == _ONE

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.denominator == other.denominator:
            return RationalQ(self.numerator + other.numerator, self.denominator)
        if self.is_polynomial():
            return RationalQ._trusted_reduced_sum(self.numerator * other.denominator + other.numerator, other.denominator)
        if other.is_polynomial():
            return RationalQ._trusted_reduced_sum(other.numerator * self.denominator + self.numerator, self.denominator)
        num = self.numerator * other.denominator + other.numerator * self.denominator
        return RationalQ(num, self.denominator * other.denominator)

    @classmethod
    def _trusted_reduced_sum(cls, num, den):
        # p + a/d with gcd(a, d) = 1 stays reduced over the same denominator.
        return cls._trusted(num, den)

    __radd__ = __add__

    def __neg__(self):
        return RationalQ._trusted(-self.numerator, self.denominator)

    def __sub__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RationalQ._trusted(LaurentPoly(), _ONE)
        if self.is_polynomial() and other.is_polynomial():
            return RationalQ._trusted(self.numerator * other.numerator, _ONE)
        # Cross-reduce before multiplying to keep operands small.
        n1, d2 = _cancel(self.numerator, other.denominator)
        n2, d1 = _cancel(other.numerator, self.denominator)
        return RationalQ(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.reciprocal()

    def reciprocal(self):
        if self.is_zero():
            raise DomainError("division by the zero rational function")
        return RationalQ(self.denominator, self.numerator)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.reciprocal() ** (-k)
        # Powers of coprime factors stay coprime.
        return RationalQ._trusted(self.numerator**k, self.denominator**k)

    def substitute_power(self, k):
        if k == 1:
            return self
        # q -> q^k preserves coprimality (composition with q^k is injective
        # on irreducible factors up to units).
        return RationalQ(self.numerator.substitute_power(k), self.denominator.substitute_power(k))

    # -- conversion ------------------------------------------------------

    def as_polynomial(self):
        """The value as a Laurent polynomial; NotPolynomialError otherwise."""
        if not self.is_polynomial():
            raise NotPolynomialError(
                f"not a polynomial: denominator {self.denominator}", self.denominator
            )
        return self.numerator

    def as_ordinary_polynomial(self):
        """Polynomial with min_exponent >= 0, the contract of :func:`as_polynomial`."""
        p = self.as_polynomial()
        if p.coefficients and p.min_exponent < 0:
            raise NotPolynomialError(
                f"not a polynomial: negative power q^{p.min_exponent}", LaurentPoly.monomial(-p.min_exponent)
            )
        return p

    def eval_complex(self, z, tol=1e-12):
        z = complex(z)
        if z == 0 and (self.numerator.min_exponent < 0):
            raise DomainError("negative powers of q at z = 0")
        dv, ds = _eval_scaled(self.denominator, z)
        # relative to sum |c_e| |z|^e, the size of the terms Horner combines
        ref, rs = _abs_scaled(self.denominator, abs(z))
        if ref == 0 or abs(dv) < tol * ref * 2.0 ** (rs - ds):
            raise DomainError(f"denominator {self.denominator} nearly vanishes at {z}")
        nv, ns = _eval_scaled(self.numerator, z)
        return _ldexp_complex(nv / dv, ns - ds)

    def __call__(self, x):
        return Fraction(self.numerator(x)) / Fraction(self.denominator(x))

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.numerator, self.denominator))
        return self._hash

    def __repr__(self):
        return f"RationalQ({self.numerator!r}, {self.denominator!r})"

    def __str__(self):
        if self.is_polynomial():
            return str(self.numerator)
        num, den = str(self.numerator), str(self.denominator)
        if len(self.numerator.coefficients) > 1:
            num = f"({num})"
        if len(self.denominator.coefficients) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def to_latex(self):
        if self.is_polynomial():
            return self.numerator.to_latex()
        return r"\frac{%s}{%s}" % (self.numerator.to_latex(), self.denominator.to_latex())

    def to_json_obj(self):
        return {"numerator": self.numerator.to_json_obj(), "denominator": self.denominator.to_json_obj()}


def _as_rational(x):
    if isinstance(x, RationalQ):
        return x
    if isinstance(x, LaurentPoly):
        return RationalQ.from_poly(x)
    if isinstance(x, int):
        return RationalQ.from_poly(LaurentPoly.constant(x))
    return NotImplemented


def _cancel(num, den):
    """Remove the common polynomial factor of num and den (no sign/content
    normalization); used for cross-reduction in products."""
    if num.is_zero() or den.is_constant() or num.is_monomial():
        return num, den
    g = poly_gcd(list(num.coefficients), list(den.coefficients))
    if len(g) == 1:
        return num, den
    gp = LaurentPoly._make(g, 0)
    return num.divexact(gp), den.divexact(gp)


def _normalize(num, den):
    if den.is_zero():
        raise DomainError("division by the zero value")
    if num.is_zero():
        return LaurentPoly(), _ONE
    # Move the unit q^k of the denominator into the numerator.
    shift = -den.min_exponent
    ncoef = list(num.coefficients)
    dcoef = list(den.coefficients)
    g = poly_gcd(ncoef, dcoef)
    if len(g) > 1:
        ncoef = poly_divexact(ncoef, g)
        dcoef = poly_divexact(dcoef, g)
    cn = _content(ncoef)
    cd = _content(dcoef)
    c = math.gcd(cn, cd)
    if dcoef[-1] < 0:
        c = -c
    if c != 1:
        ncoef = [x // c for x in ncoef]
        dcoef = [x // c for x in dcoef]
    return LaurentPoly._make(ncoef, num.min_exponent + shift), LaurentPoly._make(dcoef, 0)


# -- functional surface ----------------------------------------------------


def add(a, b):
    return _as_rational(a) + b


def sub(a, b):
    return _as_rational(a) - b


def mul(a, b):
    return _as_rational(a) * b


def neg(a):
    return -_as_rational(a)


def div(a, b):
    return _as_rational(a) / b


def power(a, k):
    return _as_rational(a) ** k


def substitute_power(a, k):
    if k < 1:
        raise DomainError("substitute_power needs k >= 1")
    return a.substitute_power(k)


def as_polynomial(a):
    """Gate asserting a genuine polynomial: denominator 1 and no negative powers."""
    return _as_rational(a).as_ordinary_polynomial()


def eval_complex(a, z, tol=1e-12):
    return _as_rational(a).eval_complex(z, tol=tol)


def product(items):
    """Balanced product of LaurentPoly factors."""
    items = list(items)
    if not items:
        return _ONE
    while len(items) > 1:
        nxt = [items[i] * items[i + 1] for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0]


def lsum(items):
    return reduce(lambda x, y: x + y, items, LaurentPoly())
