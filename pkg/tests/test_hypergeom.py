import json
import random

import pytest

from stairmaj.errors import InadmissibleError, ValidationError
from stairmaj.hypergeom import (
    IDENTITIES,
    QPowerParams,
    finite_poch_ratio,
    multisum,
    sample_params,
    sides,
    sweep,
    verify_cor3,
    verify_cor4,
    verify_eq33,
    verify_eq34,
    verify_eq37,
    verify_eq38,
)
from stairmaj.qcombinat import q_pochhammer_power
from stairmaj.qseries import LaurentPoly, RationalQ

q = LaurentPoly.monomial(1)


def assert_pass(rep):
    assert rep.status == "pass", rep.to_json()
    assert rep.equal is True
    assert rep.numeric_max_rel_error is None or rep.numeric_max_rel_error <= 1e-10


class TestMultisum:
    def test_empty_tuple(self):
        assert multisum(0, 5, lambda ks: RationalQ(7)) == RationalQ(7)

    def test_single_index(self):
        assert multisum(1, 2, lambda ks: RationalQ(q ** ks[0])) == RationalQ(LaurentPoly([1, 1, 1]))

    def test_pairs(self):
        assert multisum(2, 1, lambda ks: RationalQ(1)) == RationalQ(1)
        assert multisum(2, 4, lambda ks: RationalQ(1)) == RationalQ(10)


class TestFinitePochRatio:
    def test_examples(self):
        expected = RationalQ(1, LaurentPoly([1, -1]) * LaurentPoly([1, 0, -1]))
        assert finite_poch_ratio([3], [1]) == expected
        assert finite_poch_ratio([1], [1]) == RationalQ(1)

    def test_reverse_direction(self):
        assert finite_poch_ratio([1], [3]) == RationalQ(q_pochhammer_power(1, 1, 2))

    def test_non_reducing(self):
        with pytest.raises(InadmissibleError, match="does not reduce"):
            finite_poch_ratio([1, 2], [3])


class TestDimensionChange:
    def test_single_term(self):
        assert_pass(verify_cor3(QPowerParams(m=0, r=1, s=1, B=2, D=5, F=7)))

    @pytest.mark.parametrize(
        "params",
        [
            QPowerParams(m=2, r=1, s=1, B=1, D=2, F=5),
            QPowerParams(m=3, r=2, s=2, B=2, D=3, F=7),
        ],
    )
    def test_examples(self, params):
        assert_pass(verify_cor3(params))

    def test_generic_limit(self):
        rep = verify_cor3(QPowerParams(m=2, r=1, s=1, B=1, D=1, F=5))
        assert_pass(rep)
        assert rep.reason == "evaluated as a limit along a generic parameter direction"

    def test_empty_sums_with_pole(self):
        # (q;q)_{-1} in the prefactor is a pole for every choice of B, D, F
        rep = verify_cor3(QPowerParams(m=3, r=0, s=0))
        assert rep.status == "inadmissible"
        assert rep.reason.startswith("inadmissible specialization")


class TestWhipple:
    @pytest.mark.parametrize(
        "params",
        [
            QPowerParams(m=0, r=1, B=2, C=3, D=5, E=4, F=7),
            QPowerParams(m=2, r=1, B=1, C=2, D=4, E=3, F=6),
            QPowerParams(m=3, r=2, B=1, C=3, D=5, E=2, F=8),
        ],
    )
    def test_eq33(self, params):
        assert_pass(verify_eq33(params))

    @pytest.mark.parametrize(
        "params",
        [
            QPowerParams(m=0, r=1, B=2, C=3, D=5, F=7),
            QPowerParams(m=2, r=1, B=1, C=2, D=3, F=6),
            QPowerParams(m=2, r=2, B=1, C=2, D=4, F=7),
        ],
    )
    def test_eq34(self, params):
        assert_pass(verify_eq34(params))

    def test_eq34_pole(self):
        rep = verify_eq34(QPowerParams(m=2, r=1, B=1, C=2, D=-1, F=6))
        assert rep.status == "inadmissible" and rep.equal is None


class TestTerminatingForm:
    def test_trivial(self):
        assert_pass(verify_cor4(QPowerParams(r=1, s=1, B=2, C=0, D=3, F=6), "c"))

    def test_c_terminating(self):
        assert_pass(verify_cor4(QPowerParams(r=1, s=1, C=-2, B=1, D=3, F=6), "c"))

    def test_b_terminating(self):
        assert_pass(verify_cor4(QPowerParams(r=2, s=1, B=-2, C=2, D=4, F=7), "b"))

    def test_terminating_sets_m(self):
        rep = verify_cor4(QPowerParams(m=9, r=1, s=1, C=-2, B=1, D=3, F=6), "c")
        assert rep.params["m"] == 2

    def test_terminating_must_be_nonpositive(self):
        with pytest.raises(ValidationError):
            verify_cor4(QPowerParams(r=1, s=1, C=2, B=1, D=3, F=6), "c")

    def test_eq37_examples(self):
        assert_pass(verify_eq37(QPowerParams(m=0, r=0)))
        assert_pass(verify_eq37(QPowerParams(m=2, r=1, B=1, F=5)))
        assert_pass(verify_eq37(QPowerParams(m=3, r=2, B=2, F=6)))

    def test_eq38_examples(self):
        assert_pass(verify_eq38(QPowerParams(r=0, C=-2, B=1, D=3, F=6), "c"))
        assert_pass(verify_eq38(QPowerParams(r=1, C=-2, B=1, D=3, F=6), "c"))
        assert_pass(verify_eq38(QPowerParams(r=2, B=-3, C=1, D=2, F=7), "b"))


class TestChainConsistency:
    def test_cor4_c_matches_cor3(self):
        rng = random.Random(21)
        checked = 0
        for _ in range(150):
            p = sample_params("cor4_c", rng.randint(0, 3), rng.randint(0, 3), rng.randint(1, 3), rng)
            try:
                a = sides("cor3", p)
                b = sides("cor4", p, "c")
            except InadmissibleError:
                continue
            assert a == b
            checked += 1
        assert checked > 20

    def test_special_cases_match_cor4(self):
        rng = random.Random(22)
        checked = 0
        for _ in range(150):
            term = rng.choice("bc")
            s = rng.randint(0, 1)
            if s == 0:
                # the closed product form is stated with c terminating
                term = "c"
            p = sample_params("cor4_" + term, rng.randint(0, 3), rng.randint(0, 3), s, rng)
            try:
                general = sides("cor4", p, term)
                special = sides("eq38", p, term) if p.s else sides("eq37", p)
            except InadmissibleError:
                continue
            assert general == special
            checked += 1
        assert checked > 20


class TestReports:
    def test_json(self):
        rep = verify_eq34(QPowerParams(m=2, r=1, B=1, C=2, D=3, F=6))
        obj = json.loads(rep.to_json())
        assert obj["identity"] == "eq34"
        assert obj["status"] == "pass" and obj["equal"] is True
        assert obj["params"]["D"] == 3
        assert "lhs" not in obj

    def test_sweep_deterministic(self):
        a = sweep("eq34", 2, 1, 0, trials=5, seed=3)
        b = sweep("eq34", 2, 1, 0, trials=5, seed=3)
        assert [x.params for x in a.reports] == [x.params for x in b.reports]
        assert a.passed == 5 and not a.failed

    @pytest.mark.parametrize("key", sorted(IDENTITIES))
    def test_small_sweeps(self, key):
        for m in range(3):
            for r in range(1, 3):
                res = sweep(key, m, r, 1, trials=4, seed=0)
                assert not res.failed, res.to_json_obj()
