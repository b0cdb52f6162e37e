import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stairmaj import qseries
from stairmaj.errors import DomainError, NotPolynomialError
from stairmaj.qseries import LaurentPoly, RationalQ

ONE_PLUS_Q = LaurentPoly([1, 1])
ONE_MINUS_Q = LaurentPoly([1, -1])
ONE_MINUS_Q2 = LaurentPoly([1, 0, -1])

laurent = st.builds(
    LaurentPoly,
    st.lists(st.integers(-30, 30), max_size=8),
    st.integers(-4, 4),
)
nonzero = laurent.filter(lambda p: not p.is_zero())
rational = st.builds(RationalQ, laurent, nonzero)


class TestLaurentPoly:
    def test_canonical_form_trims(self):
        p = LaurentPoly([0, 0, 3, 0, 1, 0], -2)
        assert p.coefficients == (3, 0, 1)
        assert p.min_exponent == 0

    def test_zero_representation(self):
        z = LaurentPoly([0, 0], 5)
        assert z.coefficients == () and z.min_exponent == 0

    def test_structural_equality(self):
        assert LaurentPoly([1, 2], 3) == LaurentPoly.from_dict({3: 1, 4: 2})

    def test_str(self):
        assert str(LaurentPoly([0, 1, 1])) == "q + q^2"

    def test_json_roundtrip_big_coefficients(self):
        p = LaurentPoly([2**80, -3, 7], -2)
        obj = json.loads(p.to_json())
        assert obj["min_exponent"] == -2
        assert obj["coefficients"][0] == str(2**80)
        assert LaurentPoly.from_json(p.to_json()) == p

    @settings(max_examples=50, deadline=None)
    @given(laurent)
    def test_json_roundtrip(self, p):
        assert LaurentPoly.from_json(p.to_json()) == p


class TestArithmeticExamples:
    def test_additive_inverse(self):
        assert qseries.add(RationalQ(ONE_PLUS_Q), RationalQ(-ONE_PLUS_Q)).is_zero()

    def test_reduction(self):
        v = qseries.div(ONE_MINUS_Q2, ONE_MINUS_Q)
        assert v == RationalQ(ONE_PLUS_Q)
        assert v.denominator == LaurentPoly.constant(1)

    def test_product(self):
        assert qseries.mul(ONE_PLUS_Q, ONE_MINUS_Q) == RationalQ(ONE_MINUS_Q2)

    def test_division_by_zero(self):
        with pytest.raises(DomainError):
            qseries.div(ONE_PLUS_Q, 0)

    def test_negative_power(self):
        v = qseries.power(ONE_PLUS_Q, -2)
        assert v * ONE_PLUS_Q * ONE_PLUS_Q == RationalQ(1)


class TestSubstitutePower:
    def test_examples(self):
        assert qseries.substitute_power(RationalQ(ONE_PLUS_Q), 2) == RationalQ(LaurentPoly([1, 0, 1]))
        assert qseries.substitute_power(RationalQ(LaurentPoly.monomial(-1)), 3) == RationalQ(LaurentPoly.monomial(-3))

    @settings(max_examples=50, deadline=None)
    @given(rational)
    def test_identity(self, a):
        assert qseries.substitute_power(a, 1) == a

    @settings(max_examples=50, deadline=None)
    @given(rational, st.integers(1, 4), st.integers(1, 4))
    def test_composition(self, a, j, k):
        lhs = qseries.substitute_power(qseries.substitute_power(a, j), k)
        assert lhs == qseries.substitute_power(a, j * k)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            qseries.substitute_power(RationalQ(1), 0)


class TestAsPolynomial:
    def test_examples(self):
        assert qseries.as_polynomial(RationalQ(ONE_MINUS_Q2, ONE_MINUS_Q)) == ONE_PLUS_Q
        q = LaurentPoly.monomial(1)
        assert qseries.as_polynomial(RationalQ(LaurentPoly.monomial(-1)) * q) == LaurentPoly.constant(1)

    def test_not_a_polynomial(self):
        with pytest.raises(NotPolynomialError, match="not a polynomial") as info:
            qseries.as_polynomial(RationalQ(1, ONE_MINUS_Q))
        # canonical denominators have positive leading coefficient
        assert info.value.denominator == -ONE_MINUS_Q

    def test_negative_power_rejected(self):
        with pytest.raises(NotPolynomialError):
            qseries.as_polynomial(RationalQ(LaurentPoly.monomial(-1)))


class TestEvalComplex:
    def test_examples(self):
        assert qseries.eval_complex(RationalQ(ONE_PLUS_Q), 0.5) == pytest.approx(1.5)
        assert qseries.eval_complex(RationalQ(LaurentPoly.monomial(-1)), 2.0) == pytest.approx(0.5)
        assert qseries.eval_complex(RationalQ(ONE_MINUS_Q2, ONE_MINUS_Q), 0.3) == pytest.approx(1.3)

    def test_vanishing_denominator(self):
        with pytest.raises(DomainError):
            qseries.eval_complex(RationalQ(1, ONE_MINUS_Q), 1.0)

    def test_large_degree_stays_finite(self):
        p = RationalQ(LaurentPoly([1] * 3000))
        assert abs(qseries.eval_complex(p, 1.0) - 3000) < 1e-9


class TestFieldAxioms:
    @settings(max_examples=40, deadline=None)
    @given(rational, rational, rational)
    def test_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c

    @settings(max_examples=60, deadline=None)
    @given(laurent, nonzero)
    def test_reduce_times_divisor(self, a, b):
        assert RationalQ(a, b) * b == RationalQ(a)

    @settings(max_examples=60, deadline=None)
    @given(laurent, nonzero)
    def test_canonical_form(self, a, b):
        v = RationalQ(a, b)
        d = v.denominator
        assert d.min_exponent == 0 and d.leading_coefficient() > 0
        assert RationalQ(v.numerator, v.denominator) == v
        if not v.is_zero():
            g = qseries.poly_gcd(list(v.numerator.coefficients), list(d.coefficients))
            assert len(g) == 1

    def test_random_gcd_cancellation(self):
        rng = random.Random(5)
        for _ in range(40):
            f = LaurentPoly([rng.randint(-20, 20) for _ in range(rng.randint(1, 10))] + [1])
            g = LaurentPoly([rng.randint(-20, 20) for _ in range(rng.randint(1, 10))] + [3])
            h = LaurentPoly([rng.randint(-20, 20) for _ in range(rng.randint(1, 6))] + [1])
            v = RationalQ(f * h, g * h)
            assert v == RationalQ(f, g)
            assert v * g == RationalQ(f)
