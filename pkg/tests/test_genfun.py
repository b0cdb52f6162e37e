import random
from math import comb

import pytest

from stairmaj.errors import ValidationError
from stairmaj.genfun import (
    METHODS,
    closed_latex,
    closed_staircase,
    closed_staircase_plus1,
    det_majgf,
    laplace_sum,
    lemma_det_direct,
    lemma_det_rhs,
    majgf,
    staircase_gf,
    thm1_even,
    thm1_odd,
)
from stairmaj.qcombinat import q_factorial_recip
from stairmaj.qseries import LaurentPoly, RationalQ
from stairmaj.tableaux import SkewShape, StaircaseSpec, count_syt, iter_specs, maj_gf_oracle, to_skew_shape

ONE = LaurentPoly([1])
Q_PLUS_Q2 = LaurentPoly([0, 1, 1])
SHAPE_32 = LaurentPoly([0, 0, 1, 1, 1, 1, 1])


def shape(text):
    return SkewShape.parse(text)


class TestDeterminant:
    def test_examples(self):
        assert det_majgf(shape("2,1")) == Q_PLUS_Q2
        assert det_majgf(SkewShape(())) == ONE

    def test_staircase_6_6_3_2(self):
        s = shape("6,5,4,3,2,1/3,3")
        assert det_majgf(s) == maj_gf_oracle(s)

    def test_arbitrary_skew_shapes(self):
        rng = random.Random(7)
        for _ in range(40):
            lam = sorted((rng.randint(0, 5) for _ in range(4)), reverse=True)
            mu = [rng.randint(0, x) for x in lam]
            for i in range(len(mu) - 2, -1, -1):
                mu[i] = max(mu[i], mu[i + 1])
            mu = [min(a, b) for a, b in zip(mu, lam)]
            s = SkewShape(tuple(lam), tuple(mu))
            assert det_majgf(s) == maj_gf_oracle(s)


class TestLemma:
    def test_single_entry(self):
        assert lemma_det_rhs([0]) == RationalQ(1)

    def test_two_by_two(self):
        f = q_factorial_recip
        direct = f(2) * f(2) - f(3) * f(1)
        assert lemma_det_rhs([1, 0]) == direct
        assert lemma_det_direct([1, 0]) == direct

    def test_random_instances(self):
        rng = random.Random(11)
        for s in range(1, 5):
            for _ in range(10):
                X = rng.sample(range(-2, 7), s)
                assert lemma_det_rhs(X) == lemma_det_direct(X)

    def test_repeated_entries_vanish(self):
        assert lemma_det_rhs([2, 2]).is_zero()
        assert lemma_det_direct([2, 2]).is_zero()


class TestLaplace:
    def test_examples(self):
        assert laplace_sum(StaircaseSpec(2, 2, 0, 0)) == RationalQ(Q_PLUS_Q2)
        assert laplace_sum(StaircaseSpec(3, 2, 0, 0)) == RationalQ(SHAPE_32)
        assert laplace_sum(StaircaseSpec(4, 3, 1, 1)) == RationalQ(det_majgf(shape("4,3,2/1")))

    def test_range_extension(self):
        for spec in iter_specs(6):
            assert laplace_sum(spec) == laplace_sum(spec, extended=True)

    def test_edge_case_m_zero_n_equals_r(self):
        for n in range(1, 6):
            spec = StaircaseSpec(n + 1, n, 0, n)
            expected = RationalQ(det_majgf(to_skew_shape(spec)))
            assert laplace_sum(spec) == expected
            assert laplace_sum(spec, extended=True) == expected


class TestMultiSum:
    def test_even_examples(self):
        assert thm1_even(StaircaseSpec(2, 2, 0, 0)) == Q_PLUS_Q2
        assert thm1_even(StaircaseSpec(1, 1, 1, 1)) == ONE
        assert thm1_even(StaircaseSpec(4, 2, 1, 1)) == det_majgf(shape("4,3/1"))

    def test_odd_examples(self):
        assert thm1_odd(StaircaseSpec(3, 2, 0, 0)) == SHAPE_32
        assert thm1_odd(StaircaseSpec(2, 1, 1, 1)) == ONE
        assert thm1_odd(StaircaseSpec(5, 2, 2, 1)) == det_majgf(shape("5,4/2"))

    def test_dispatch_examples(self):
        assert staircase_gf(StaircaseSpec(2, 2, 0, 0)) == Q_PLUS_Q2
        assert staircase_gf(StaircaseSpec(3, 2, 0, 0)) == SHAPE_32
        assert staircase_gf(StaircaseSpec(1, 1, 0, 0)) == ONE

    def test_wrong_parity(self):
        with pytest.raises(ValidationError):
            thm1_even(StaircaseSpec(3, 2, 0, 0))
        with pytest.raises(ValidationError):
            thm1_odd(StaircaseSpec(2, 2, 0, 0))

    def test_agrees_with_determinant(self):
        for spec in iter_specs(6):
            assert staircase_gf(spec) == det_majgf(to_skew_shape(spec))


class TestClosedForms:
    def test_examples(self):
        assert closed_staircase(2, 0, 0) == Q_PLUS_Q2
        assert closed_staircase(2, 1, 1) == LaurentPoly([1, 1])
        assert closed_staircase(1, 1, 1) == ONE
        assert closed_staircase_plus1(2, 0, 0) == SHAPE_32
        assert closed_staircase_plus1(1, 1, 1) == ONE
        assert closed_staircase_plus1(3, 2, 1) == det_majgf(shape("4,3,2/2"))

    def test_degenerations(self):
        for n in range(7):
            for r in range(n + 1):
                for m in range(n - r + 2):
                    assert closed_staircase(n, m, r) == thm1_even(StaircaseSpec(n, n, m, r))
                for m in range(n - r + 3):
                    assert closed_staircase_plus1(n, m, r) == thm1_odd(StaircaseSpec(n + 1, n, m, r))

    def test_latex(self):
        tex = closed_latex(StaircaseSpec(2, 2, 0, 0))
        assert tex.startswith(r"\frac{q^{1} (1+q)^{1} [3]_{q}!")
        assert r"\begin{bmatrix}" in closed_latex(StaircaseSpec(3, 2, 1, 1))
        with pytest.raises(ValidationError):
            closed_latex(StaircaseSpec(4, 2, 0, 0))


class TestDispatch:
    def test_all_methods_agree(self):
        for spec in iter_specs(5):
            values = {majgf(spec, m) for m in METHODS if m != "closed" or spec.s < 2}
            assert len(values) == 1

    def test_unknown_method(self):
        with pytest.raises(ValidationError, match="unknown method"):
            majgf(StaircaseSpec(2, 2, 0, 0), "magic")

    def test_formula_needs_staircase(self):
        with pytest.raises(ValidationError, match="staircase"):
            majgf(shape("2,1"), "thm1")

    def test_properties(self):
        for spec in iter_specs(7):
            gf = staircase_gf(spec)
            cells = spec.cell_count
            assert gf.nonnegative()
            assert gf.degree is None or gf.degree <= comb(cells, 2)
            if cells <= 14:
                assert gf.at_one() == count_syt(to_skew_shape(spec))
