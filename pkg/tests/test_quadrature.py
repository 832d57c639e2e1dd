import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from annulus_energy import (
    ConfigError,
    DomainError,
    NonConvergence,
    QuadratureConfig,
    conformal_gradient_norm_sq,
    gamma,
    integrate_interval,
    integrate_semi_axis,
    integrate_zonal,
    unit_sphere_measure,
)
from annulus_energy.quadrature import GAUSS_WEIGHTS, KRONROD_WEIGHTS, NODES

EXPONENTIAL = QuadratureConfig(semi_infinite_transform="exponential")


def beta_closed_form(n):
    return math.sqrt(math.pi) * gamma(0.5 * (n - 1)) / (2 ** (n - 1) * gamma(0.5 * n))


def beta_integrand(n):
    return lambda y: y ** (n - 2) / (1 + y * y) ** (n - 1)


class TestRule:
    def test_weights_sum_to_two(self):
        assert KRONROD_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
        assert GAUSS_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)

    def test_nodes_open_and_symmetric(self):
        assert np.all(np.abs(NODES) < 1.0)
        assert np.allclose(NODES, -NODES[::-1], atol=0)

    @pytest.mark.parametrize("k", range(0, 23))
    def test_kronrod_exact_to_degree_22(self, k):
        exact = (1 - (-1) ** (k + 1)) / (k + 1)
        assert np.dot(KRONROD_WEIGHTS, NODES ** k) == pytest.approx(exact, abs=1e-14)

    @pytest.mark.parametrize("k", range(0, 14))
    def test_gauss_exact_to_degree_13(self, k):
        exact = (1 - (-1) ** (k + 1)) / (k + 1)
        assert np.dot(GAUSS_WEIGHTS, NODES ** k) == pytest.approx(exact, abs=1e-14)


class TestInterval:
    def test_examples(self):
        assert integrate_interval(lambda t: t * t, 0, 1).value == pytest.approx(1 / 3, rel=1e-15)
        assert integrate_interval(lambda t: np.sin(t) ** 2, 0, math.pi).value == pytest.approx(
            math.pi / 2, rel=1e-14)
        tau = 2.0
        res = integrate_interval(lambda t: 2 + tau ** 2 / t ** 2, 1, 2)
        assert res.value == pytest.approx(4.0, rel=1e-14)

    def test_error_invariant(self):
        cfg = QuadratureConfig(rel_tol=1e-8)
        res = integrate_interval(lambda t: np.sqrt(t), 0, 1, cfg)
        assert res.error_estimate <= max(cfg.rel_tol * abs(res.value), cfg.abs_tol)
        assert res.value == pytest.approx(2 / 3, rel=1e-8)
        assert res.subdivisions_used > 1

    def test_endpoint_singularity_never_sampled(self):
        res = integrate_interval(lambda t: 1 / np.sqrt(t), 0, 1, QuadratureConfig(rel_tol=1e-6))
        assert res.value == pytest.approx(2.0, rel=1e-6)

    def test_nan_reports_abscissa(self):
        with pytest.raises(DomainError) as exc:
            integrate_interval(lambda t: np.where(t > 0.5, np.nan, t), 0, 1)
        assert exc.value.abscissa > 0.5

    def test_nonconvergence_carries_estimate(self):
        cfg = QuadratureConfig(rel_tol=1e-14, max_subdivisions=3)
        with pytest.raises(NonConvergence) as exc:
            integrate_interval(lambda t: np.sin(50 * t) ** 2, 0, 3, cfg)
        assert exc.value.estimate is not None and exc.value.error > 0

    def test_bad_interval(self):
        with pytest.raises(ConfigError):
            integrate_interval(lambda t: t, 1, 1)

    def test_deterministic(self):
        f = lambda t: np.exp(np.sin(7 * t)) / (1 + t * t)  # noqa: E731
        a = integrate_interval(f, -3, 4)
        b = integrate_interval(f, -3, 4)
        assert a == b

    def test_scalar_integrand_broadcasts(self):
        assert integrate_interval(lambda t: 3.0, 0, 2).value == pytest.approx(6.0)

    @pytest.mark.parametrize("f,a,b,exact", [
        (lambda t: 1 / (1 + 25 * t * t), -1, 1, 2 * math.atan(5) / 5),
        (lambda t: np.sqrt(t), 0, 1, 2 / 3),
        (lambda t: np.log(t), 0, 1, -1.0),
    ])
    def test_tolerance_halving_does_not_worsen(self, f, a, b, exact):
        prev = None
        tol = 1e-3
        while tol > 1e-12:
            disc = abs(integrate_interval(f, a, b, QuadratureConfig(tol, 1e-16)).value - exact)
            if prev is not None:
                assert disc <= max(prev, 4e-16 * abs(exact))
            prev = disc
            tol /= 2

    @given(st.floats(-5, 5), st.floats(0.01, 5), st.integers(0, 8))
    def test_polynomials(self, a, width, k):
        b = a + width
        exact = (b ** (k + 1) - a ** (k + 1)) / (k + 1)
        res = integrate_interval(lambda t: t ** k, a, b)
        assert res.value == pytest.approx(exact, rel=1e-12, abs=1e-12)


class TestSemiAxis:
    def test_n4_is_pi_over_16(self):
        assert integrate_semi_axis(beta_integrand(4)).value == pytest.approx(math.pi / 16, rel=1e-13)

    def test_exponential_decay(self):
        for cfg in (QuadratureConfig(), EXPONENTIAL):
            assert integrate_semi_axis(lambda y: np.exp(-y), cfg).value == pytest.approx(1.0, rel=1e-12)

    @pytest.mark.parametrize("n", range(4, 11))
    def test_beta_family_and_transforms(self, n):
        cfg = QuadratureConfig()
        a = integrate_semi_axis(beta_integrand(n), cfg)
        b = integrate_semi_axis(beta_integrand(n), EXPONENTIAL)
        assert abs(a.value - beta_closed_form(n)) <= 1e-10
        assert abs(a.value - b.value) <= 10 * max(cfg.rel_tol * abs(a.value), cfg.abs_tol)


class TestZonal:
    @pytest.mark.parametrize("n", range(3, 11))
    def test_constant_gives_sphere_measure(self, n):
        cfg = QuadratureConfig()
        res = integrate_zonal(lambda th: np.ones_like(th), n, cfg)
        assert abs(res.value / unit_sphere_measure(n) - 1) <= cfg.rel_tol

    @pytest.mark.parametrize("n", [3, 4, 6])
    def test_cos_vanishes(self, n):
        assert abs(integrate_zonal(np.cos, n).value) < 1e-13

    def test_conformal_energy_n4_lambda3(self):
        res = integrate_zonal(lambda th: conformal_gradient_norm_sq(th, 3.0, 4) ** 1.5, 4)
        assert res.value == pytest.approx(3 ** 1.5 * unit_sphere_measure(4), rel=1e-10)


class TestConfig:
    @pytest.mark.parametrize("kwargs,field", [
        ({"rel_tol": 0}, "rel_tol"), ({"abs_tol": -1}, "abs_tol"),
        ({"max_subdivisions": 0}, "max_subdivisions"),
        ({"max_subdivisions": 2.5}, "max_subdivisions"),
        ({"semi_infinite_transform": "tanh-sinh"}, "semi_infinite_transform"),
    ])
    def test_rejects(self, kwargs, field):
        with pytest.raises(ConfigError) as exc:
            QuadratureConfig(**kwargs)
        assert exc.value.field == field

    def test_tightened(self):
        cfg = QuadratureConfig(1e-8, 1e-12).tightened(100)
        assert cfg.rel_tol == pytest.approx(1e-10) and cfg.abs_tol == pytest.approx(1e-14)
