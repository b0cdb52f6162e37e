"""Factored products of binomials 1 - q^a.

Every summand in the multi-sum formulas is a constant times a power of q
times a product of factors (1 - q^a)^e.  Keeping summands in this form
makes multiplication a dictionary update, and summing them over a common
cyclotomic denominator produces a reduced :class:`RationalQ` without any
polynomial gcd: distinct cyclotomic polynomials are coprime.

Zero bookkeeping
----------------
A factor 1 - q^0 is a *rigid* zero.  In a numerator it makes the product
zero; in a denominator it raises :class:`InadmissibleError`.

Some identities are evaluated at a point where a parameter x equals a
q-power exactly and the displayed expression is a limit (0/0 between the
prefactor and the summands).  Factors whose base contains x**kappa are
*deformed*: x is replaced by x*t and the product is expanded around t = 1.
A deformed zero 1 - t**kappa contributes vanishing order 1 with leading
coefficient -kappa.  A product with positive net order is zero in the limit;
negative net order means a genuine pole.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import DomainError, InadmissibleError
from .kernels import poly_divexact, poly_mul
from .qseries import LaurentPoly, RationalQ

__all__ = ["QProduct", "qproduct_sum", "cyclotomic", "expand_cyclotomic"]


@lru_cache(maxsize=None)
def divisors(a):
    small = [d for d in range(1, int(a**0.5) + 1) if a % d == 0]
    return tuple(sorted(set(small + [a // d for d in small])))


@lru_cache(maxsize=None)
def _cyclotomic(d):
    if d == 1:
        return (1, -1)
    # q^d - 1 divided by the cyclotomic factors of the proper divisors.
    poly = [-1] + [0] * (d - 1) + [1]
    for e in divisors(d)[:-1]:
        c = list(_cyclotomic(e)) if e > 1 else [-1, 1]
        poly = poly_divexact(poly, c)
    return tuple(poly)


def cyclotomic(d):
    """P_1 = 1 - q and P_d = Phi_d(q) for d >= 2, so 1 - q^a = prod_{d|a} P_d."""
    return list(_cyclotomic(d))


@lru_cache(maxsize=4096)
def _cyclotomic_power(d, e):
    base = list(_cyclotomic(d))
    result = [1]
    while e:
        if e & 1:
            result = poly_mul(result, base)
        e >>= 1
        if e:
            base = poly_mul(base, base)
    return tuple(result)


def _tree_product(polys):
    polys = [p for p in polys if p != [1]]
    if not polys:
        return [1]
    polys.sort(key=len)
    while len(polys) > 1:
        nxt = [poly_mul(polys[i], polys[i + 1]) for i in range(0, len(polys) - 1, 2)]
        if len(polys) % 2:
            nxt.append(polys[-1])
        polys = nxt
    return polys[0]


def expand_cyclotomic(cyc):
    """Expand prod P_d^e_d (all e_d >= 0) as a coefficient list."""
    return _tree_product([list(_cyclotomic_power(d, e)) for d, e in cyc.items() if e])


class QProduct:
    """coeff * q^shift * prod_a (1 - q^a)^mult[a] with zero bookkeeping.

    Mutating helpers (``mul_*``) return ``self`` for chaining; use
    :meth:`copy` before branching.
    """

    __slots__ = ("coeff", "shift", "mult", "zero", "order")

    def __init__(self, coeff=1, shift=0):
        self.coeff = Fraction(coeff)
        self.shift = shift
        self.mult = {}
        self.zero = self.coeff == 0
        self.order = 0

    def copy(self):
        out = QProduct.__new__(QProduct)
        out.coeff = self.coeff
        out.shift = self.shift
        out.mult = dict(self.mult)
        out.zero = self.zero
        out.order = self.order
        return out

    # -- building --------------------------------------------------------

    def mul_const(self, c):
        self.coeff *= c
        if not c:
            self.zero = True
        return self

    def mul_qpow(self, e):
        self.shift += e
        return self

    def mul_binomial(self, a, power=1, kappa=0):
        """Multiply by (1 - q^a t^kappa)^power, t the deformation variable."""
        if not power:
            return self
        if a > 0:
            m = self.mult.get(a, 0) + power
            if m:
                self.mult[a] = m
            else:
                del self.mult[a]
        elif a < 0:
            # 1 - q^a = -q^a (1 - q^-a)
            if power & 1:
                self.coeff = -self.coeff
            self.shift += a * power
            self.mul_binomial(-a, power)
        elif kappa:
            self.order += power
            self.coeff *= Fraction(-kappa) ** power
        elif power > 0:
            self.zero = True
        else:
            raise InadmissibleError("vanishing factor 1 - q^0 in a denominator")
        return self

    def mul_poch(self, a, step, k, power=1, kappa=0):
        """Multiply by (q^a t^kappa; q^step)_k ** power, for any integer k.

        Negative lengths follow (x; p)_{-n} = 1 / (x p^{-n}; p)_n.
        """
        if k < 0:
            return self.mul_poch(a + k * step, step, -k, -power, kappa)
        for j in range(k):
            self.mul_binomial(a + j * step, power, kappa)
        return self

    def mul_qint(self, a, base=1, power=1):
        """Multiply by [a]_{q^base} ** power (a >= 1)."""
        if a == 0:
            return self.mul_binomial(0, power)
        if a < 0:
            # [-a] = -q^{-a}[a] in base q^base
            if power & 1:
                self.coeff = -self.coeff
            self.shift += a * base * power
            a = -a
        self.mul_binomial(a * base, power)
        self.mul_binomial(base, -power)
        return self

    def mul_qfact(self, m, base=1, power=1):
        """Multiply by [m]_{q^base}! ** power; the reciprocal of [m]! for
        negative m is zero."""
        if m < 0:
            if power > 0:
                raise DomainError("q-factorial of a negative integer")
            self.zero = True
            return self
        for i in range(2, m + 1):
            self.mul_binomial(i * base, power)
        if m >= 2:
            self.mul_binomial(base, -power * (m - 1))
        return self

    def mul_gauss(self, n, k, base=1, power=1):
        """Multiply by the Gaussian binomial [n choose k]_{q^base} ** power."""
        if k < 0 or k > n:
            if power > 0:
                self.zero = True
                return self
            raise InadmissibleError("reciprocal of a vanishing Gaussian binomial")
        for j in range(k):
            self.mul_binomial((n - j) * base, power)
            self.mul_binomial((j + 1) * base, -power)
        return self

    # -- algebra ---------------------------------------------------------

    def __mul__(self, other):
        out = self.copy()
        out.coeff *= other.coeff
        out.shift += other.shift
        out.zero = out.zero or other.zero
        out.order += other.order
        for a, m in other.mult.items():
            v = out.mult.get(a, 0) + m
            if v:
                out.mult[a] = v
            else:
                out.mult.pop(a, None)
        return out

    def inverse(self):
        if self.zero:
            raise DomainError("inverse of a vanishing product")
        out = QProduct.__new__(QProduct)
        out.coeff = 1 / self.coeff
        out.shift = -self.shift
        out.mult = {a: -m for a, m in self.mult.items()}
        out.zero = False
        out.order = -self.order
        return out

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = QProduct(self.coeff**k, self.shift * k)
        out.mult = {a: m * k for a, m in self.mult.items() if m * k}
        out.zero = self.zero and k > 0
        out.order = self.order * k
        return out

    def vanishes(self):
        """True when the limit value is zero."""
        return self.zero or self.order > 0

    def cyclotomic_exponents(self):
        cyc = {}
        for a, m in self.mult.items():
            for d in divisors(a):
                cyc[d] = cyc.get(d, 0) + m
        return {d: e for d, e in cyc.items() if e}

    def to_rational(self):
        return qproduct_sum([self])

    def eval_complex(self, z):
        if self.vanishes():
            return 0j
        if self.order < 0:
            raise DomainError("product has a pole in the limit")
        z = complex(z)
        v = complex(self.coeff) * z**self.shift
        for a, m in self.mult.items():
            v *= (1 - z**a) ** m
        return v

    def __repr__(self):
        return (
            f"QProduct(coeff={self.coeff}, shift={self.shift}, mult={self.mult}, "
            f"zero={self.zero}, order={self.order})"
        )


def _fold_remainder_zero(S, d):
    """True if P_d divides S, tested by folding S modulo q^d - 1 first."""
    if d == 1:
        return sum(S) == 0
    folded = [0] * d
    for i, c in enumerate(S):
        folded[i % d] += c
    while folded and not folded[-1]:
        folded.pop()
    if not folded:
        return True
    P = _cyclotomic(d)
    deg = len(P) - 1
    # Monic remainder of the folded polynomial by Phi_d.
    for k in range(len(folded) - 1, deg - 1, -1):
        c = folded[k]
        if c:
            for j in range(deg + 1):
                folded[k - deg + j] -= c * P[j]
    return not any(folded[:deg])


def qproduct_sum(terms):
    """Exact reduced sum of QProduct values as a RationalQ.

    Terms whose limit vanishes are dropped; a term with a pole raises
    DomainError.
    """
    live = []
    for t in terms:
        if t.vanishes():
            continue
        if t.order < 0:
            raise DomainError("summand has a pole in the limit")
        live.append(t)
    if not live:
        return RationalQ(0)
    cycs = [t.cyclotomic_exponents() for t in live]
    keys = set()
    for c in cycs:
        keys.update(c)
    lo = {d: min(c.get(d, 0) for c in cycs) for d in keys}
    lo_shift = min(t.shift for t in live)
    L = 1
    for t in live:
        den = t.coeff.denominator
        L = L * den // gcd(L, den)

    S = []
    for t, c in zip(live, cycs):
        resid = {d: e - lo[d] for d, e in c.items() if e != lo[d]}
        for d in keys:
            if d not in c and lo[d]:
                resid[d] = -lo[d]
        coeff = t.coeff.numerator * (L // t.coeff.denominator)
        poly = expand_cyclotomic(resid)
        off = t.shift - lo_shift
        need = off + len(poly)
        if len(S) < need:
            S.extend([0] * (need - len(S)))
        for i, v in enumerate(poly):
            if v:
                S[off + i] += coeff * v
    while S and not S[-1]:
        S.pop()
    if not S:
        return RationalQ(0)
    # Leading zeros of S become a shift.
    k = 0
    while not S[k]:
        k += 1
    if k:
        S = S[k:]
        lo_shift += k

    # Cancel cyclotomic factors of the sum against the common denominator.
    for d in sorted(d for d in lo if lo[d] < 0):
        while lo[d] < 0 and len(S) > 1 and _fold_remainder_zero(S, d):
            S = poly_divexact(S, list(_cyclotomic(d)))
            lo[d] += 1

    g = 0
    for c in S:
        g = gcd(g, c)
        if g == 1:
            break
    g = gcd(g, L)
    if g > 1:
        S = [c // g for c in S]
        L //= g

    num = _tree_product([S] + [list(_cyclotomic_power(d, e)) for d, e in lo.items() if e > 0])
    den = _tree_product([list(_cyclotomic_power(d, -e)) for d, e in lo.items() if e < 0])
    if L != 1:
        den = [c * L for c in den]
    if den[-1] < 0:
        den = [-c for c in den]
        num = [-c for c in num]
    return RationalQ._trusted(LaurentPoly._make(num, lo_shift), LaurentPoly._make(den, 0))
