import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gausscode.gaussian import (
    QuadratureError,
    QuadratureSpec,
    RandomStream,
    integrate_gauss_tail,
    next_gaussian,
    normal_cdf,
    normal_pdf,
)


def cdf_oracle(x: float) -> float:
    """Independent CDF oracle: 200-node Gauss-Legendre quadrature of the density."""
    lo = -38.5  # density underflows below; truncation error ~ 1e-324
    nodes, weights = np.polynomial.legendre.leggauss(200)
    t = 0.5 * (x - lo) * nodes + 0.5 * (x + lo)
    return float(0.5 * (x - lo) * np.sum(weights * np.exp(-0.5 * t * t)) / math.sqrt(2 * math.pi))


def tail_oracle(x: float) -> float:
    """1 - Phi(x) for large x by quadrature of the density over [-30, -x]."""
    nodes, weights = np.polynomial.legendre.leggauss(300)
    lo, hi = -30.0, -x
    t = 0.5 * (hi - lo) * nodes + 0.5 * (hi + lo)
    return float(0.5 * (hi - lo) * np.sum(weights * np.exp(-0.5 * t * t)) / math.sqrt(2 * math.pi))


class TestNormalCdf:
    def test_half_at_zero(self):
        assert normal_cdf(0.0) == 0.5

    def test_frozen_value_at_one(self):
        # 10-digit value frozen from the quadrature oracle
        assert normal_cdf(1.0) == pytest.approx(0.8413447461, abs=1e-10)
        assert cdf_oracle(1.0) == pytest.approx(0.8413447461, abs=1e-10)

    @pytest.mark.parametrize("x", [-7.5, -4.0, -1.0, -0.25, 0.5, 2.0, 3.5, 6.0, 8.0])
    def test_matches_oracle(self, x):
        assert normal_cdf(x) == pytest.approx(cdf_oracle(x), abs=1e-13)

    @pytest.mark.parametrize("x", [9.0, 12.0, 18.0])
    def test_tail_relative_accuracy(self, x):
        want = tail_oracle(x)
        assert want > 0
        assert abs(normal_cdf(-x) - want) <= 1e-10 * want

    @pytest.mark.parametrize("x", [0.3, 2.0, 7.0])
    def test_symmetry(self, x):
        assert normal_cdf(-x) == pytest.approx(1.0 - normal_cdf(x), abs=1e-13)

    @given(st.floats(min_value=-8, max_value=8))
    @settings(max_examples=50)
    def test_reflection_identity(self, x):
        assert normal_cdf(x) + normal_cdf(-x) == pytest.approx(1.0, abs=1e-13)

    @given(st.lists(st.floats(min_value=-10, max_value=10), min_size=2, max_size=20))
    @settings(max_examples=50)
    def test_monotone(self, xs):
        values = normal_cdf(np.sort(np.asarray(xs)))
        assert np.all(np.diff(values) >= 0)

    def test_vectorized(self):
        out = normal_cdf(np.array([0.0, 1.0]))
        assert out.shape == (2,)
        assert out[0] == 0.5


class TestNormalPdf:
    def test_frozen_peak(self):
        assert normal_pdf(0.0) == pytest.approx(0.3989422804, abs=1e-10)

    @pytest.mark.parametrize("x", [1.0, 3.5])
    def test_even(self, x):
        assert normal_pdf(x) == normal_pdf(-x)

    def test_far_tail(self):
        assert normal_pdf(10.0) <= 1e-21


class TestIntegrateGaussTail:
    def test_half_mass(self):
        got = integrate_gauss_tail(lambda t: np.ones_like(t), 1.3, 1.3)
        assert got == pytest.approx(0.5, abs=1e-10)

    def test_full_mass(self):
        got = integrate_gauss_tail(lambda t: np.ones_like(t), -20.0, 0.0)
        assert got == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("k", [2, 3, 5])
    def test_power_substitution(self, k):
        # u = 2 Phi(t) - 1 turns the integrand into u^(k-1)/2 on [0, 1]
        got = integrate_gauss_tail(lambda t: (2 * normal_cdf(t) - 1) ** (k - 1), 0.0, 0.0)
        assert got == pytest.approx(1.0 / (2 * k), abs=1e-10)

    @pytest.mark.parametrize("tol", [1e-6, 1e-8])
    def test_tolerance_halving(self, tol):
        f = lambda t: np.cos(t) ** 2
        a = integrate_gauss_tail(f, -1.0, 0.5, QuadratureSpec(abs_tol=tol))
        b = integrate_gauss_tail(f, -1.0, 0.5, QuadratureSpec(abs_tol=tol / 2))
        assert abs(a - b) <= 2 * tol

    def test_truncation_soundness(self):
        f = lambda t: (2 * normal_cdf(t) - 1) ** 4
        near = integrate_gauss_tail(f, 0.3, 1.1, tail_sigmas=8.5)
        far = integrate_gauss_tail(f, 0.3, 1.1, tail_sigmas=12.0)
        assert abs(near - far) < 1e-12

    def test_empty_range(self):
        assert integrate_gauss_tail(lambda t: np.ones_like(t), 9.0, 0.0) == 0.0

    def test_budget_exhaustion(self):
        f = lambda t: np.where(np.abs(t - 0.37) < 1e-9, 1.0, np.sign(t - 0.37))
        with pytest.raises(QuadratureError):
            integrate_gauss_tail(f, -3.0, 0.0, QuadratureSpec(1e-14, max_subdivisions=4))

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            QuadratureSpec(abs_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureSpec(max_subdivisions=0)


class TestRandomStream:
    def test_deterministic_replay(self):
        a = RandomStream(42, 3).normal(1000)
        b = RandomStream(42, 3).normal(1000)
        assert np.array_equal(a, b)

    def test_moments(self):
        draws = RandomStream(7, 0).normal(1_000_000)
        assert abs(draws.mean()) <= 0.004  # 3 sigma of the mean estimator
        assert abs(draws.var() - 1.0) <= 0.005

    def test_distinct_streams_two_sample(self):
        n = 100_000
        a = RandomStream(5, 0).normal(n)
        b = RandomStream(5, 1).normal(n)
        assert not np.array_equal(a[:100], b[:100])
        assert abs(a.mean() - b.mean()) <= 3.0 * math.sqrt(2.0 / n)

    def test_next_gaussian_advances(self):
        stream = RandomStream(9, 0)
        x, y = next_gaussian(stream), next_gaussian(stream)
        assert x != y
        assert x == next_gaussian(RandomStream(9, 0))

    def test_validation(self):
        with pytest.raises(ValueError):
            RandomStream(-1, 0)
