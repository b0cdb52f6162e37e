import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stairmaj import kernels
from stairmaj.kernels import backends

coeffs = st.lists(st.integers(-(2**70), 2**70), min_size=1, max_size=40)
small = st.lists(st.integers(-50, 50), min_size=1, max_size=60)


def naive_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


class TestBackendSelection:
    def test_backend_name(self):
        assert kernels.BACKEND in ("python", "cython")

    def test_python_always_available(self):
        assert backends()[0].BACKEND == "python"


class TestPolyMul:
    def test_small_example(self, backend):
        assert backend.poly_mul([1, 1], [1, -1]) == [1, 0, -1]

    def test_zero(self, backend):
        assert backend.poly_mul([], [1, 2]) == []

    @settings(max_examples=60, deadline=None)
    @given(coeffs, coeffs)
    def test_matches_schoolbook(self, a, b):
        for mod in backends():
            assert mod.poly_mul(a, b) == naive_mul(a, b)

    def test_long_inputs_use_packing(self, backend):
        rng = random.Random(1)
        a = [rng.randint(-(10**30), 10**30) for _ in range(200)]
        b = [rng.randint(-5, 5) for _ in range(150)]
        assert backend.poly_mul(a, b) == naive_mul(a, b)
        assert backend.poly_mul(a, a) == naive_mul(a, a)


class TestDivision:
    @settings(max_examples=60, deadline=None)
    @given(small, small)
    def test_divexact_roundtrip(self, a, b):
        if b[-1] == 0 or not any(b):
            b = b + [1]
        prod = naive_mul(a, b)
        for mod in backends():
            assert mod.poly_divexact(prod, b) == naive_mul(a, [1])[: len(prod) - len(b) + 1]

    def test_divexact_rejects_remainder(self, backend):
        with pytest.raises(ArithmeticError):
            backend.poly_divexact([1, 0, 1], [1, 1])

    @settings(max_examples=60, deadline=None)
    @given(small, st.integers(1, 12))
    def test_binomial_roundtrip(self, a, k):
        for mod in backends():
            m = mod.poly_mul_binomial(a, k)
            assert m == naive_mul(a, [1] + [0] * (k - 1) + [-1])
            assert mod.poly_div_binomial(m, k) == a

    def test_div_binomial_short_input(self, backend):
        with pytest.raises(ArithmeticError):
            backend.poly_div_binomial([1, 2], 5)

    def test_prem_agrees(self):
        rng = random.Random(3)
        for _ in range(30):
            a = [rng.randint(-9, 9) for _ in range(rng.randint(3, 12))] + [1]
            b = [rng.randint(-9, 9) for _ in range(rng.randint(1, 5))] + [2]
            results = [mod.poly_prem(a, b) for mod in backends()]
            assert all(r == results[0] for r in results)


class TestTheta:
    def test_p_zero(self, backend):
        assert backend.theta(0.5 + 0j, 0j) == pytest.approx(0.5)

    def test_backends_agree(self):
        rng = random.Random(4)
        for _ in range(50):
            x = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            p = complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5))
            vals = [mod.theta(x, p) for mod in backends()]
            assert all(abs(v - vals[0]) <= 1e-14 * abs(vals[0]) for v in vals)
            assert len({mod.theta_terms(x, p) for mod in backends()}) == 1
