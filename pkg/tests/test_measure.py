import math

import numpy as np
import pytest

from fourier_dunkl import dunkl, measure
from fourier_dunkl._core import gamma


class TestBuildRule:
    def test_total_mass_alpha_zero(self, rules):
        # integral of dmu_0 = 1/(2 Gamma(2)) = 1/2
        rule = rules(0.0, 48)
        assert float(np.sum(rule.weights)) == pytest.approx(0.5, rel=1e-12)

    def test_total_mass_trig_case(self, rules):
        # normalized Lebesgue measure (2 pi)^{-1/2} dx over (-1,1)
        rule = rules(-0.5, 48)
        assert float(np.sum(rule.weights)) == pytest.approx(2.0 / math.sqrt(2.0 * math.pi), rel=1e-12)

    def test_total_mass_generic(self, rules):
        for a in (-0.9, 0.7, 2.0):
            rule = rules(a, 64)
            assert float(np.sum(rule.weights)) == pytest.approx(measure.total_mass(a), rel=1e-12)

    def test_second_moment(self, rules):
        # int x^2 dmu_0 = 2 * int_0^1 x^3 dx / 2 = 1/4, by hand
        rule = rules(0.0, 48)
        assert measure.integrate(rule, lambda x: x * x) == pytest.approx(0.25, rel=1e-12)

    def test_even_polynomial_exactness(self, rules):
        for a in (-0.8, 0.0, 1.5):
            order = 24
            rule = rules(a, order)
            for k in range(0, order // 2):
                exact = measure.measure_normalization(a) / (k + a + 1.0)
                got = measure.integrate(rule, lambda x, k=k: x ** (2 * k))
                assert got == pytest.approx(exact, rel=1e-12)

    def test_nodes_inside_open_interval(self, rules):
        rule = rules(-0.9, 128)
        assert np.all(np.abs(rule.nodes) < 1.0)
        assert np.all(np.abs(rule.nodes) > 0.0)
        assert np.all(rule.weights > 0.0)

    def test_order_validation(self):
        with pytest.raises(ValueError):
            measure.build_rule(0.0, 1)
        with pytest.raises(ValueError):
            measure.build_rule(0.0, 201)


class TestIntegrate:
    def test_constant_gives_mass(self, rules):
        rule = rules(0.3, 32)
        assert measure.integrate(rule, lambda x: np.ones_like(x)) == pytest.approx(
            measure.total_mass(0.3), rel=1e-12
        )

    def test_e0_squared_is_one(self, rules, systems):
        # orthonormality of the constant mode
        system = systems(0.0, 2)
        rule = rules(0.0, 32)
        val = measure.integrate(rule, lambda x: np.full_like(x, system.e0**2))
        assert val == pytest.approx(1.0, rel=1e-12)

    def test_odd_integrand_vanishes(self, rules):
        rule = rules(0.6, 64)
        assert abs(measure.integrate(rule, lambda x: x**3 + 0.2 * x)) <= 1e-14

    def test_reflection_symmetry(self, rules, rng):
        rule = rules(-0.4, 48)
        coeffs = rng.uniform(-1, 1, 5)
        f = lambda x: sum(c * x**k for k, c in enumerate(coeffs))
        assert measure.integrate(rule, lambda x: f(-x)) == pytest.approx(
            measure.integrate(rule, f), rel=1e-12, abs=1e-15
        )

    def test_refinement_stability(self, rules):
        for a in (-0.7, 0.5):
            coarse = measure.integrate(rules(a, 48), lambda x: np.cos(3.0 * x) + x**2)
            fine = measure.integrate(rules(a, 96), lambda x: np.cos(3.0 * x) + x**2)
            assert abs(fine - coarse) <= 1e-10 * max(1.0, abs(fine))

    def test_nonfinite_integrand_names_node(self, rules):
        rule = rules(0.0, 16)
        bad = float(rule.nodes[3])

        def f(x):
            x = np.asarray(x, dtype=np.float64)
            out = np.ones_like(x)
            out[x == bad] = np.inf
            return out

        with pytest.raises(ArithmeticError, match="not finite"):
            measure.integrate(rule, f)

    def test_scalar_only_callable(self, rules):
        rule = rules(0.0, 16)
        val = measure.integrate(rule, lambda x: float(x) ** 2)
        assert val == pytest.approx(0.25, rel=1e-10)

    def test_complex_integrand(self, rules):
        rule = rules(-0.5, 64)
        val = measure.integrate(rule, lambda x: np.exp(1j * math.pi * x))
        # int e^{i pi x} (2pi)^{-1/2} dx over (-1,1) = 0 (full period)
        assert abs(val) <= 1e-14


class TestLpNormSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            measure.LpNormSpec(1.0, None, 0.0)
        spec = measure.LpNormSpec(3.0, None, 0.0)
        assert spec.conjugate == pytest.approx(1.5)

    def test_conjugate_duality(self):
        for p in (1.5, 2.0, 4.0):
            spec = measure.LpNormSpec(p, None, 0.0)
            assert 1.0 / p + 1.0 / spec.conjugate == pytest.approx(1.0, abs=1e-15)


class TestWeightedLpNorm:
    def test_constant_function(self, rules):
        rule = rules(0.0, 32)
        spec = measure.LpNormSpec(2.0, None, 0.0)
        got = measure.weighted_lp_norm(rule, lambda x: np.ones_like(x), spec)
        assert got == pytest.approx(math.sqrt(0.5), rel=1e-12)

    def test_mode_norm_is_one(self, rules, systems):
        system = systems(0.4, 6)
        rule = rules(0.4, 128)
        spec = measure.LpNormSpec(2.0, None, 0.4)
        got = measure.weighted_lp_norm(rule, lambda x: dunkl.eval_e(system, 5, x), spec)
        assert got == pytest.approx(1.0, abs=1e-8)

    def test_zero_function(self, rules):
        rule = rules(0.0, 16)
        spec = measure.LpNormSpec(2.5, None, 0.0)
        assert measure.weighted_lp_norm(rule, lambda x: np.zeros_like(x), spec) == 0.0

    def test_alpha_mismatch(self, rules):
        rule = rules(0.0, 16)
        spec = measure.LpNormSpec(2.0, None, 0.5)
        with pytest.raises(ValueError):
            measure.weighted_lp_norm(rule, lambda x: np.ones_like(x), spec)

    def test_divergence_flagged(self, rules):
        # (1-x)^{-2} is not in L^2(dmu_0): refinement blows up
        rule = rules(0.0, 24)
        spec = measure.LpNormSpec(2.0, None, 0.0)
        got = measure.weighted_lp_norm(rule, lambda x: (1.0 - x) ** -2.0, spec, refine_check=True)
        assert math.isinf(got)

    def test_smooth_function_not_flagged(self, rules):
        rule = rules(0.0, 24)
        spec = measure.LpNormSpec(2.0, None, 0.0)
        got = measure.weighted_lp_norm(rule, lambda x: np.cos(x), spec, refine_check=True)
        assert math.isfinite(got)

    def test_power_weight_applied(self, rules):
        from fourier_dunkl.weights import PowerWeight

        rule = rules(0.0, 64)
        w = PowerWeight(((0.0, 1.0),))  # W = |x|
        spec = measure.LpNormSpec(2.0, w, 0.0)
        got = measure.weighted_lp_norm(rule, lambda x: np.ones_like(x), spec)
        # int |x|^2 dmu_0 = 1/4
        assert got == pytest.approx(0.5, rel=1e-12)


class TestParseval:
    def test_random_expansion(self, rules, systems, rng):
        system = systems(0.3, 9)
        rule = rules(0.3, 128)
        coeffs = {j: complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for j in range(-8, 9)}

        def f(x):
            out = np.zeros(np.shape(x), dtype=np.complex128)
            for j, c in coeffs.items():
                out = out + c * dunkl.eval_e(system, j, x)
            return out

        spec = measure.LpNormSpec(2.0, None, 0.3)
        norm = measure.weighted_lp_norm(rule, f, spec)
        parseval = math.sqrt(sum(abs(c) ** 2 for c in coeffs.values()))
        assert norm == pytest.approx(parseval, rel=1e-8)
