from math import comb, factorial

import pytest

from stairmaj.errors import ResourceLimitError, ValidationError
from stairmaj.qseries import LaurentPoly
from stairmaj.tableaux import (
    SkewShape,
    StaircaseSpec,
    Tableau,
    count_syt,
    enumerate_tableaux,
    iter_specs,
    maj,
    maj_gf_bruteforce,
    maj_gf_oracle,
    to_skew_shape,
)

Q_PLUS_Q2 = LaurentPoly([0, 1, 1])


def partitions(n, largest=None):
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def hook_length_count(lam):
    cells = sum(lam)
    conj = [sum(1 for part in lam if part > j) for j in range(lam[0])] if lam else []
    prod = 1
    for i, part in enumerate(lam):
        for j in range(part):
            prod *= (part - j - 1) + (conj[j] - i - 1) + 1
    return factorial(cells) // prod


class TestShapes:
    def test_parse_and_str(self):
        s = SkewShape.parse("6,5,4,3,2,1/3,3")
        assert s.lam == (6, 5, 4, 3, 2, 1) and s.mu == (3, 3, 0, 0, 0, 0)
        assert str(s) == "6,5,4,3,2,1/3,3"
        assert SkewShape.parse("2,1").mu == (0, 0)

    def test_cell_count(self):
        assert SkewShape((6, 5, 4, 3, 2, 1), (3, 3)).cell_count == 15

    @pytest.mark.parametrize(
        "lam, mu, message",
        [
            ((1, 2), (), "not weakly decreasing"),
            ((2, 1), (1, 2), "not weakly decreasing"),
            ((2, 1), (3,), "exceeds"),
            ((2, -1), (), "negative"),
            ((1,), (1, 1), "more nonzero parts"),
        ],
    )
    def test_validation(self, lam, mu, message):
        with pytest.raises(ValidationError, match=message):
            SkewShape(lam, mu)

    def test_bad_text(self):
        with pytest.raises(ValidationError):
            SkewShape.parse("2,x")

    def test_diagram(self):
        assert SkewShape((3, 2), (1,)).diagram() == ".##\n##"


class TestStaircaseSpec:
    def test_staircase_6_6_3_2(self):
        assert to_skew_shape(StaircaseSpec(6, 6, 3, 2)) == SkewShape((6, 5, 4, 3, 2, 1), (3, 3, 0, 0, 0, 0))

    def test_staircase_8_6_2_4(self):
        assert to_skew_shape(StaircaseSpec(8, 6, 2, 4)) == SkewShape((8, 7, 6, 5, 4, 3), (2, 2, 2, 2, 0, 0))

    def test_single_cell(self):
        assert to_skew_shape(StaircaseSpec(1, 1, 0, 0)) == SkewShape((1,), ())

    @pytest.mark.parametrize(
        "args, message",
        [
            ((2, 3, 0, 0), "N >= n"),
            ((4, 2, 0, 3), "r <= n"),
            ((4, 2, 5, 1), "N - r \\+ 1 >= m"),
            ((4, -1, 0, 0), "nonnegative"),
        ],
    )
    def test_validation(self, args, message):
        with pytest.raises(ValidationError, match=message):
            StaircaseSpec(*args)

    def test_parse(self):
        assert StaircaseSpec.parse("N=6,n=6,m=3,r=2") == StaircaseSpec(6, 6, 3, 2)
        assert StaircaseSpec.parse("8,6,2,4") == StaircaseSpec(8, 6, 2, 4)
        with pytest.raises(ValidationError):
            StaircaseSpec.parse("N=6,n=6")

    def test_cell_count_matches_shape(self):
        for spec in iter_specs(8):
            assert spec.cell_count == to_skew_shape(spec).cell_count


class TestMaj:
    def test_single_cell(self):
        assert maj(Tableau.from_rows(SkewShape((1,)), [[1]])) == 0

    def test_examples(self):
        shape = SkewShape((2, 1))
        assert maj(Tableau.from_rows(shape, [[1, 2], [3]])) == 2
        assert maj(Tableau.from_rows(shape, [[1, 3], [2]])) == 1

    def test_invalid_tableau(self):
        with pytest.raises(ValidationError):
            Tableau.from_rows(SkewShape((2, 1)), [[2, 3], [1]])


class TestOracle:
    def test_examples(self):
        assert maj_gf_oracle(SkewShape((2, 1))) == Q_PLUS_Q2
        assert maj_gf_oracle(SkewShape(())) == LaurentPoly([1])
        assert maj_gf_oracle(SkewShape((2, 2), (1,))) == Q_PLUS_Q2

    def test_count_examples(self):
        assert count_syt(SkewShape((2, 1))) == 2
        assert count_syt(SkewShape((3, 2))) == 5
        assert count_syt(SkewShape(())) == 1

    def test_hook_length(self):
        for cells in range(1, 13):
            for lam in partitions(cells):
                assert count_syt(SkewShape(lam)) == hook_length_count(lam)

    def test_matches_materialized_enumeration(self):
        for spec in iter_specs(5):
            shape = to_skew_shape(spec)
            if shape.cell_count > 10:
                continue
            assert maj_gf_oracle(shape) == maj_gf_bruteforce(shape)

    def test_enumerated_tableaux_increase(self):
        shape = SkewShape((4, 3, 2), (1,))
        seen = set()
        for t in enumerate_tableaux(shape):
            grid = {}
            for r, row in enumerate(t.rows()):
                for j, v in enumerate(row):
                    grid[(r, shape.mu[r] + j)] = v
            for (i, j), v in grid.items():
                assert grid.get((i, j + 1), v + 1) > v
                assert grid.get((i + 1, j), v + 1) > v
            seen.add(t.row_of)
        assert len(seen) == count_syt(shape)

    def test_properties(self):
        for spec in iter_specs(6):
            shape = to_skew_shape(spec)
            if shape.cell_count > 16:
                continue
            gf = maj_gf_oracle(shape)
            assert gf.nonnegative()
            assert gf.degree <= comb(shape.cell_count, 2)

    def test_cell_limit(self):
        big = to_skew_shape(StaircaseSpec(6, 6, 0, 0))
        with pytest.raises(ResourceLimitError, match="enumeration limit"):
            maj_gf_oracle(big)
        assert maj_gf_oracle(big, limit=21).at_one() == count_syt(big, limit=21)
