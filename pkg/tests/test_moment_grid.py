import itertools
from fractions import Fraction as F

import numpy as np
import pytest

from covmoments.hypergraphs import enumerate_ss_words
from covmoments.moments import (
    moment_constant,
    moment_grid,
    moment_profile,
    mp_moment,
    unbounded_support_bound,
    word_structure,
)
from covmoments.partitions import Word, word_statistics


def const(v):
    return lambda x, u: np.full_like(np.asarray(x, dtype=float) * u, v)


ZERO = const(0.0)
ONE = const(1.0)


class TestMomentGrid:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_constant_integrand_reproduces_constant_path(self, k):
        values = {2: 1.0, 4: 0.25, 6: 2.0}
        g = {s: const(v) for s, v in values.items()}
        grid_value = moment_grid(k, 0.5, g, grid=32).value
        exact = moment_constant(k, F(1, 2), {s: F(v) for s, v in values.items()}).value
        assert abs(grid_value - float(exact)) < 1e-10

    def test_separable_product_integral(self):
        report = moment_grid(1, 1, {2: lambda x, u: x * u}, grid=128)
        assert abs(report.value - 0.25) < 1e-6

    def test_mp_reduction_catalan(self):
        g = {2: ONE, 4: ZERO, 6: ZERO}
        assert abs(moment_grid(3, 1, g, grid=8).value - 5.0) < 1e-12

    @pytest.mark.parametrize("k", [1, 2])
    def test_against_naive_multidimensional_quadrature(self, k):
        rng = np.random.default_rng(7)
        grid = 6
        xs = (np.arange(grid) + 0.5) / grid

        def poly():
            a, b, c, d = rng.uniform(0.2, 1.5, 4)
            return lambda x, u: a + b * x + c * u + d * x * u

        g = {2: poly(), 4: poly()}
        sampled = {s: np.array([[g[s](x, u) for u in xs] for x in xs]) for s in g}
        naive = 0.0
        for word in enumerate_ss_words(k):
            st = word_structure(word)
            nvar = len(st.edges) + 1
            for idx in itertools.product(range(grid), repeat=nvar):
                prod = 0.7**st.r
                for e in st.edges:
                    prod *= sampled[e.multiplicity][idx[e.even_class], idx[e.odd_class]]
                naive += prod / grid**nvar
        assert abs(moment_grid(k, 0.7, g, grid=grid).value - naive) < 1e-12

    def test_halving_error_estimate(self):
        g = {2: lambda x, u: 0.5 + 0.5 * x * u, 4: lambda x, u: x + u}
        report = moment_grid(2, 1, g, grid=64)
        finer = moment_grid(2, 1, g, grid=128)
        assert report.error_estimate is not None
        assert abs(report.value - finer.value) <= report.error_estimate + 1e-12

    def test_first_order_convergence_smooth_profile(self):
        sigma = lambda x, u: 0.5 + 0.5 * x * u
        v64 = moment_profile(3, 1, sigma, {2: 1, 4: 1, 6: 1}, grid=64).value
        v128 = moment_profile(3, 1, sigma, {2: 1, 4: 1, 6: 1}, grid=128).value
        assert abs(v64 - v128) <= 1e-3

    def test_nonnegative_integrands_give_nonnegative_moments(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            arrays = {s: rng.uniform(0, 2, size=(8, 8)) for s in (2, 4, 6)}
            for k in (1, 2, 3):
                assert moment_grid(k, 0.5, arrays, grid=8).value >= 0

    def test_weights_are_unity_at_y1_and_scale_as_powers(self):
        g = {2: lambda x, u: x + u, 4: lambda x, u: x * u + 0.3, 6: ONE}
        at_y1 = moment_grid(3, 1, g, grid=8)
        at_y2 = moment_grid(3, 2, g, grid=8)
        assert abs(at_y1.value - sum(at_y1.breakdown.values())) < 1e-12
        for text, base in at_y1.breakdown.items():
            if abs(base) < 1e-15:
                continue
            r = word_statistics(Word.from_text(text)).r_plus_1 - 1
            assert at_y2.breakdown[text] / base == pytest.approx(2.0**r, abs=1e-9)

    def test_array_inputs(self):
        grid = 16
        xs = (np.arange(grid) + 0.5) / grid
        arr = np.outer(xs, xs)
        report = moment_grid(1, 1, {2: arr}, grid=grid)
        assert report.value == pytest.approx(0.25, abs=1e-12)
        assert report.error_estimate is not None

    def test_array_shape_mismatch(self):
        with pytest.raises(ValueError, match="shape"):
            moment_grid(1, 1, {2: np.ones((4, 4))}, grid=8)

    def test_missing_order(self):
        with pytest.raises(ValueError, match="order 4"):
            moment_grid(2, 1, {2: ONE}, grid=8)

    def test_grid_too_small(self):
        with pytest.raises(ValueError):
            moment_grid(1, 1, {2: ONE}, grid=1)


class TestMomentProfile:
    def test_unit_profile_equals_constant_path(self):
        report = moment_profile(2, 0.5, ONE, {2: 1, 4: 2}, grid=16)
        exact = moment_constant(2, F(1, 2), {2: 1, 4: 2}).value
        assert report.value == pytest.approx(float(exact), abs=1e-12)

    def test_triangular_indicator_first_moment(self):
        sigma = lambda x, u: (np.asarray(x) <= np.asarray(u)).astype(float)
        report = moment_profile(1, 1, sigma, {2: 1}, grid=128)
        assert report.value == pytest.approx(0.5, abs=0.005)

    def test_array_profile(self):
        grid = 32
        xs = (np.arange(grid) + 0.5) / grid
        sigma = (xs[:, None] <= xs[None, :]).astype(float)
        report = moment_profile(1, 1, sigma, {2: 1}, grid=grid)
        assert report.value == pytest.approx(0.5, abs=0.02)


class TestUnboundedSupportBound:
    def test_trivial_cases(self):
        assert unbounded_support_bound(1, 1, lambda x: 1.0) == 1
        assert unbounded_support_bound(1, 2, lambda x: 1.0) == 1

    def test_prefactor(self):
        # m=2, t=2: (4)!/(2! * 2!^2) = 3
        assert unbounded_support_bound(2, 2, lambda x: 1.0) == 3

    @pytest.mark.parametrize("t", [1, 2, 3, 4])
    def test_bounds_mp_moments_from_below(self, t):
        # MP data: g_2 = 1 so f_2 = 1; the bound must sit below the k = t moment
        g = {2: ONE, 4: ZERO, 6: ZERO, 8: ZERO}
        bound = unbounded_support_bound(1, t, lambda x: 1.0)
        for y in (0.5, 1.0):
            value = moment_grid(t, y, g, grid=16).value
            assert float(bound) <= value + 1e-12

    def test_sampled_input(self):
        bound = unbounded_support_bound(1, 2, np.full(64, 2.0), grid=64)
        assert float(bound) == pytest.approx(2.0 * 2.0, abs=1e-12)

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            unbounded_support_bound(0, 1, lambda x: 1.0)
        with pytest.raises(ValueError, match="shape"):
            unbounded_support_bound(1, 1, np.ones(8), grid=16)
