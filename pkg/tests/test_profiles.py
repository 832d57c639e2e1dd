import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from annulus_energy import (
    DECREASING,
    INCREASING,
    Annulus,
    ConfigError,
    alpha,
    build_radial_minimizer,
    holder_lower_bound,
    invert_profile,
    load_tabulated_profile,
    log_derivative,
    make_boundary_profile,
    make_tabulated_profile,
    save_tabulated_profile,
)
from annulus_energy.energy import log_gradient_integral
from annulus_energy.profiles import RadialProfile, grid

from conftest import annuli


class LinearProfile(RadialProfile):
    """H(t) = c t, used for the w == 1 check."""

    def __init__(self, c):
        super().__init__(Annulus(3, 1, 2), Annulus(3, c, 2 * c))
        self.c = c

    def value(self, t):
        return self.c * np.asarray(t, dtype=float)

    def deriv(self, t):
        return self.c * np.ones_like(np.asarray(t, dtype=float))


class TestAlpha:
    def test_examples(self, ref3):
        d, _ = ref3
        assert alpha(1.0, d) == 0.0
        assert alpha(2.0, d) == pytest.approx(1.0, abs=1e-15)
        assert alpha(1.5, d) == pytest.approx(2 / 3, rel=1e-15)

    @pytest.mark.parametrize("n", [3, 4, 6, 12])
    def test_strictly_increasing(self, n):
        d, _ = annuli(n, R=5.0)
        assert np.all(np.diff(alpha(grid(d, 500), d)) > 0)

    def test_rejects_outside(self, ref3):
        with pytest.raises(ConfigError):
            alpha(2.5, ref3[0])


class TestBoundaryProfile:
    def test_endpoints(self):
        for n in (3, 4, 7):
            d, g = annuli(n, r=0.5, R=3.0, r_star=2.0, R_star=5.0)
            h1 = make_boundary_profile(d, g, INCREASING)
            h2 = make_boundary_profile(d, g, DECREASING)
            assert h1(d.inner) == pytest.approx(g.inner) and h1(d.outer) == pytest.approx(g.outer)
            assert h2(d.inner) == pytest.approx(g.outer) and h2(d.outer) == pytest.approx(g.inner)

    def test_example_value(self, ref3):
        h1 = make_boundary_profile(*ref3)
        assert h1(1.5) == pytest.approx(math.exp(2 / 3), rel=1e-15)
        assert h1(1.5) == pytest.approx(1.9477, abs=1e-4)

    def test_log_derivative_examples(self, ref3):
        h1 = make_boundary_profile(*ref3)
        assert log_derivative(h1, 1.0) == pytest.approx(2.0, rel=1e-15)
        assert log_derivative(h1, 2.0) == pytest.approx(1.0, rel=1e-15)
        ts = grid(ref3[0], 50)
        assert np.allclose(h1.log_derivative(ts), 2 / ts, rtol=1e-14)

    def test_log_derivative_of_linear_profile(self):
        p = LinearProfile(3.0)
        assert np.allclose(p.log_derivative(np.linspace(1, 2, 20)), 1.0, rtol=1e-15)

    @pytest.mark.parametrize("n", [3, 4, 5, 9])
    @pytest.mark.parametrize("orientation", [INCREASING, DECREASING])
    def test_power_law_slope(self, n, orientation):
        d, g = annuli(n, R=3.0, R_star=4.0)
        h = make_boundary_profile(d, g, orientation)
        ts = grid(d, 300)
        vals = ts ** ((n - 1) / (n - 2)) * np.asarray(h.deriv(ts)) / np.asarray(h(ts))
        assert np.ptp(vals) <= 1e-9 * abs(np.mean(vals))

    @pytest.mark.parametrize("n", [3, 4, 5])
    @pytest.mark.parametrize("orientation", [INCREASING, DECREASING])
    def test_holder_equality(self, n, orientation):
        d, g = annuli(n)
        q = log_gradient_integral(make_boundary_profile(d, g, orientation))
        assert q.value == pytest.approx(holder_lower_bound(d, g), rel=1e-8)

    def test_orientation_sign(self, ref4):
        for orient, sign in ((INCREASING, 1), (DECREASING, -1)):
            h = make_boundary_profile(*ref4, orient)
            assert h.orientation == orient
            assert np.all(sign * np.asarray(h.deriv(grid(ref4[0], 100, interior=True))) > 0)

    def test_derivative_matches_finite_difference(self, ref4):
        h = make_boundary_profile(*ref4)
        rng = np.random.default_rng(3)
        t = rng.uniform(1.001, 1.999, 1000)
        fd = (h(t + 1e-6) - h(t - 1e-6)) / 2e-6
        assert np.max(np.abs(fd / h.deriv(t) - 1)) < 1e-6

    def test_dimension_mismatch(self):
        with pytest.raises(ConfigError) as exc:
            make_boundary_profile(Annulus(3, 1, 2), Annulus(4, 1, 2))
        assert exc.value.field == "n"

    def test_scalar_and_array(self, ref4):
        h = make_boundary_profile(*ref4)
        assert isinstance(h(1.5), float)
        assert h(np.array([1.0, 1.5])).shape == (2,)


class TestTabulated:
    def test_fifty_knots_match_h1(self, ref4):
        d, g = ref4
        h1 = make_boundary_profile(d, g)
        ts = grid(d, 50)
        tab = make_tabulated_profile(np.column_stack((ts, h1(ts))), d, g)
        fine = grid(d, 2000)
        assert np.max(np.abs(tab(fine) - h1(fine))) <= 1e-6
        assert tab.tag == "tabulated" and tab.orientation == INCREASING

    def test_two_knots_linear(self, ref3):
        d, g = ref3
        tab = make_tabulated_profile([(1.0, 1.0), (2.0, math.e)], d, g)
        t = np.linspace(1, 2, 11)
        assert np.allclose(tab(t), 1 + (math.e - 1) * (t - 1), rtol=1e-14)

    def test_non_monotone_rejected(self, ref3):
        d, g = ref3
        with pytest.raises(ConfigError):
            make_tabulated_profile([(1.0, 1.0), (1.5, 2.0), (1.7, 1.9), (2.0, math.e)], d, g)

    @pytest.mark.parametrize("knots", [
        [(1.0, 1.0), (1.9, math.e)],            # does not reach R
        [(1.0, 1.1), (2.0, math.e)],            # does not start at r_*
        [(1.0, 1.0), (1.0, 2.0), (2.0, math.e)],  # repeated abscissa
        [(1.0, 1.0), (2.0, math.nan)],
    ])
    def test_bad_knots_rejected(self, ref3, knots):
        with pytest.raises(ConfigError):
            make_tabulated_profile(knots, *ref3)

    def test_decreasing_knots(self, ref4):
        d, g = ref4
        h2 = make_boundary_profile(d, g, DECREASING)
        ts = grid(d, 80)
        tab = make_tabulated_profile(np.column_stack((ts, h2(ts))), d, g)
        assert tab.orientation == DECREASING
        assert np.all(np.asarray(tab.deriv(grid(d, 100, interior=True))) < 0)

    @given(st.lists(st.floats(0.05, 1.0), min_size=2, max_size=30),
           st.lists(st.floats(0.05, 1.0), min_size=2, max_size=30))
    def test_interpolant_stays_monotone(self, dt, dh):
        k = min(len(dt), len(dh))
        t = np.concatenate(([0.0], np.cumsum(dt[:k])))
        h = np.concatenate(([0.0], np.cumsum(dh[:k])))
        t = 1.0 + t / t[-1]
        h = 1.0 + (math.e - 1.0) * h / h[-1]
        tab = make_tabulated_profile(np.column_stack((t, h)), *annuli(4))
        fine = np.linspace(1, 2, 3001)
        vals = tab(fine)
        assert np.all(np.diff(vals) >= 0)
        assert vals.min() >= 1.0 - 1e-12 and vals.max() <= math.e + 1e-12

    def test_inputs_not_mutated(self, ref3):
        t = np.array([1.0 + 1e-14, 2.0])
        h = np.array([1.0, math.e])
        make_tabulated_profile(np.column_stack((t, h)), *ref3)
        from annulus_energy.profiles import TabulatedProfile
        TabulatedProfile(t, h, *ref3)
        assert t[0] == 1.0 + 1e-14

    def test_csv_round_trip(self, tmp_path, ref4):
        d, g = ref4
        sol = build_radial_minimizer(d, g)
        ts = grid(d, 60)
        path = tmp_path / "h.csv"
        save_tabulated_profile(path, ts, sol.profile(ts))
        tab = load_tabulated_profile(path, d, g)
        assert np.array_equal(tab.knots_t, ts)
        assert np.array_equal(tab.knots_H[1:-1], np.asarray(sol.profile(ts))[1:-1])

    def test_csv_comments_and_bad_header(self, tmp_path, ref3):
        good = tmp_path / "g.csv"
        good.write_text("# produced by hand\nt,H\n1,1\n2,2.718281828459045\n")
        assert load_tabulated_profile(good, *ref3)(1.5) > 1
        bad = tmp_path / "b.csv"
        bad.write_text("x,y\n1,1\n2,2.718281828459045\n")
        with pytest.raises(ConfigError):
            load_tabulated_profile(bad, *ref3)
        worse = tmp_path / "w.csv"
        worse.write_text("t,H\n1,one\n")
        with pytest.raises(ConfigError):
            load_tabulated_profile(worse, *ref3)


class TestInversion:
    def test_target_and_orientation(self, ref4):
        d, g = ref4
        c = g.inner * g.outer
        inv = invert_profile(make_boundary_profile(d, g), c)
        assert inv.target.inner == pytest.approx(c / g.outer)
        assert inv.target.outer == pytest.approx(c / g.inner)
        assert inv.orientation == DECREASING
        ts = grid(d, 40)
        assert np.allclose(inv.log_derivative(ts), -make_boundary_profile(d, g).log_derivative(ts))
        assert inv(d.inner) == pytest.approx(g.outer)

    def test_double_inversion(self, ref4):
        h = make_boundary_profile(*ref4)
        twice = invert_profile(invert_profile(h, 3.0), 3.0)
        ts = grid(ref4[0], 25)
        assert np.allclose(twice(ts), h(ts), rtol=1e-15)
        assert twice.orientation == INCREASING

    def test_rejects_nonpositive_constant(self, ref4):
        with pytest.raises(ConfigError):
            invert_profile(make_boundary_profile(*ref4), 0.0)


class TestHolderBound:
    def test_dominance_for_other_profiles(self, ref4):
        d, g = ref4
        bound = holder_lower_bound(d, g)
        q = log_gradient_integral(build_radial_minimizer(d, g).profile)
        assert q.value > bound * (1 + 1e-6)

    def test_n3_closed_form(self, ref3):
        # log^2(e) / 1 * 2 / (2 - 1)
        assert holder_lower_bound(*ref3) == pytest.approx(2.0, rel=1e-15)
