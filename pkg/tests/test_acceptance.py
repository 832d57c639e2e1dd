"""Acceptance criteria 1-10, one test each.

Run under pytest (a PASS/FAIL line per criterion is added to the terminal
summary) or directly with ``python tests/test_acceptance.py``.
"""

import math
import sys

import numpy as np
import pytest

from annulus_energy import (
    Annulus,
    SeparableMap,
    build_radial_minimizer,
    check_power_mean_inequality,
    combined_energy_separable,
    combined_lower_bound,
    dirichlet_infimum,
    gamma,
    integrate_semi_axis,
    invert_profile,
    make_boundary_profile,
    make_tabulated_profile,
    psi,
    quasiradial_energy,
    radial_energy,
    solve_tau_star,
    solve_w,
    sphere_conformal_energy,
    unit_sphere_measure,
)
from annulus_energy.euler_lagrange import TAU_RTOL, el_residual_scaled
from annulus_energy.profiles import grid
from annulus_energy.verification import CALIBRATED_EXCESS_N4

SEED = 20210923
REF = (1.0, 2.0, 1.0, math.e)
GAP_CONFIGS = [(1.0, 2.0, 1.0, math.e), (1.0, 3.0, 2.0, 5.0)]

RESULTS = {}


def pair(n, r, R, r_star, R_star):
    return Annulus(n, r, R), Annulus(n, r_star, R_star)


def rel(a, b):
    return abs(a - b) / abs(b)


def criterion_1():
    worst = 0.0
    for n in (3, 4, 5, 6):
        exact = (n - 1) ** (0.5 * (n - 1)) * unit_sphere_measure(n)
        for lam in (0.1, 0.5, 1.0, 2.0, 10.0):
            worst = max(worst, rel(sphere_conformal_energy(lam, n).value, exact))
    return worst <= 1e-8, f"sphere energy invariance, worst rel err {worst:.2e} (tol 1e-08)"


def criterion_2():
    worst = 0.0
    for n in range(4, 9):
        q = integrate_semi_axis(lambda y: y ** (n - 2) / (1 + y * y) ** (n - 1))
        exact = math.sqrt(math.pi) * gamma(0.5 * (n - 1)) / (2 ** (n - 1) * gamma(0.5 * n))
        worst = max(worst, abs(q.value - exact))
    n4 = integrate_semi_axis(lambda y: y * y / (1 + y * y) ** 3).value
    worst = max(worst, abs(n4 - math.pi / 16))
    return worst <= 1e-10, f"beta integral identity n=4..8, worst abs err {worst:.2e} (tol 1e-10)"


def criterion_3():
    d, g = pair(3, *REF)
    tau = solve_tau_star(d, g)
    sol = build_radial_minimizer(d, g)
    energy_err = rel(sol.energy_closed_form, 16 * math.pi)
    inf_err = rel(sol.energy_closed_form, dirichlet_infimum(d, g))
    ts = grid(d, 200)
    sup = float(np.max(np.abs(sol.profile(ts) - make_boundary_profile(d, g)(ts))))
    ok = abs(tau - 2.0) <= 1e-12 and energy_err <= 1e-9 and inf_err <= 1e-9 and sup <= 1e-9
    return ok, (f"n=3 coincidence, tau*={tau!r}, energy rel err {energy_err:.1e}, "
                f"vs infimum {inf_err:.1e}, sup|H*-H1| {sup:.1e} (tol 1e-09)")


def criterion_4():
    worst = 0.0
    for n in (3, 4, 5):
        d, g = pair(n, *REF)
        h1 = make_boundary_profile(d, g)
        for a, b in ((1.0, 1.0), (2.0, 3.0)):
            bound = combined_lower_bound(a, b, d, g)
            for lam in (0.5, 1.0, 4.0):
                e = combined_energy_separable(a, b, SeparableMap(h1, lam)).energy
                worst = max(worst, rel(e, bound))
    return worst <= 1e-8, f"combined energy equality case, worst rel err {worst:.2e} (tol 1e-08)"


def criterion_5():
    d, g = pair(4, *REF)
    h1 = make_boundary_profile(d, g)
    inf = dirichlet_infimum(d, g)
    reps = [quasiradial_energy(SeparableMap(h1, 2.0 ** -k)) for k in range(11)]
    nonincreasing = all(b.energy <= a.energy + a.quadrature_error + b.quadrature_error
                        for a, b in zip(reps, reps[1:]))
    above = all(r.energy >= inf - r.quadrature_error for r in reps)
    excess = (reps[-1].energy - inf) / inf
    ok = (nonincreasing and above and excess < CALIBRATED_EXCESS_N4 < 0.05
          and abs(inf - 160.10) < 0.01)
    return ok, (f"lambda=2^-k sweep n=4, infimum {inf:.4f}, nonincreasing={nonincreasing}, "
                f"above infimum={above}, k=10 excess {excess:.3e} "
                f"(calibrated threshold {CALIBRATED_EXCESS_N4:.1e})")


def criterion_6():
    worst = math.inf
    for n in (4, 5):
        d, g = pair(n, *REF)
        h = build_radial_minimizer(d, g).profile
        one = quasiradial_energy(SeparableMap(h, 1.0))
        for lam in (0.25, 0.5, 2.0, 4.0):
            rep = quasiradial_energy(SeparableMap(h, lam))
            budget = one.quadrature_error + rep.quadrature_error
            if not rep.energy < one.energy:
                worst = -math.inf
            worst = min(worst, (one.energy - rep.energy) / budget)
    return worst > 10, (f"quasiradial strictness for H*, n=4,5, min margin "
                        f"{worst:.2e} x summed quadrature error (need > 10)")


def criterion_7():
    worst = math.inf
    for n in (4, 5, 6):
        for cfg in GAP_CONFIGS:
            d, g = pair(n, *cfg)
            sol = build_radial_minimizer(d, g)
            inf = dirichlet_infimum(d, g)
            mre = sol.energy_closed_form
            mid = quasiradial_energy(SeparableMap(sol.profile, 0.125))
            budget = mid.quadrature_error + 10 * TAU_RTOL * mre
            ordered = inf < mid.energy < mre
            margin = min(mid.energy - inf, mre - mid.energy, mre - inf) / budget
            worst = min(worst, margin if ordered else -math.inf)
    return worst > 1, (f"infimum < E[h*^(1/8)] < minimal radial energy, n=4,5,6 on two annuli, "
                       f"min margin {worst:.2e} x tolerance budget")


def criterion_8():
    worst_res = 0.0
    worst_energy = 0.0
    for n in (3, 4, 5, 6):
        d, g = pair(n, *REF)
        sol = build_radial_minimizer(d, g)
        ts = grid(d, 100)
        worst_res = max(worst_res, float(np.max(np.abs(el_residual_scaled(sol.profile, ts)))))
        worst_energy = max(worst_energy,
                           rel(sol.energy_closed_form, radial_energy(sol.profile).energy))
    ok = worst_res <= 1e-8 and worst_energy <= 1e-8
    return ok, (f"Euler-Lagrange residual {worst_res:.1e} (tol 1e-08), closed form vs quadrature "
                f"{worst_energy:.1e} (tol 1e-08)")


def criterion_9():
    d, g = pair(4, *REF)
    sym = 0.0
    inv = 0.0
    for h in (make_boundary_profile(d, g), build_radial_minimizer(d, g).profile):
        hi = invert_profile(h, g.inner * g.outer)
        for lam in (0.125, 0.5, 2.0, 8.0):
            e = quasiradial_energy(SeparableMap(h, lam)).energy
            sym = max(sym, rel(e, quasiradial_energy(SeparableMap(h, 1 / lam)).energy))
            inv = max(inv, rel(e, quasiradial_energy(SeparableMap(hi, lam)).energy))
    rng = np.random.default_rng(SEED)
    bad_psi = bad_w = 0
    for _ in range(1000):
        n = int(rng.integers(3, 11))
        r = rng.uniform(0.1, 5.0)
        R = r * (1 + rng.uniform(0.01, 4.0))
        t1 = math.exp(rng.uniform(-6, 6))
        t2 = t1 * (1 + rng.uniform(1e-3, 2.0))
        bad_psi += not psi(r, R, t2, n) > psi(r, R, t1, n)
        bad_w += not solve_w(R, t1, n) < solve_w(r, t1, n)
    pm = check_power_mean_inequality(10_000, SEED)
    ok = sym <= 1e-8 and inv <= 1e-8 and bad_psi == 0 and bad_w == 0 and pm.passed
    return ok, (f"lambda symmetry {sym:.1e}, inversion {inv:.1e} (tol 1e-08); psi/w monotonicity "
                f"violations {bad_psi}/{bad_w} of 1000; power-mean worst {pm.measured:.1e} "
                f"(slack 1e-15)")


def perturbations(profile, count, rng, knots=201):
    """Monotone competitors log H = log H_* + eps sin(k pi s), same boundary values."""
    d = profile.domain
    ts = grid(d, knots)
    log_h = np.log(profile(ts))
    slope = np.asarray(profile.deriv(ts)) / np.asarray(profile(ts))
    s = (ts - d.inner) / d.width
    out = []
    for _ in range(count):
        k = int(rng.integers(1, 4))
        bump_slope = k * math.pi / d.width
        eps = 0.9 * slope.min() / bump_slope * rng.uniform(0.2, 1.0) * rng.choice([-1, 1])
        h = np.exp(log_h + eps * np.sin(k * math.pi * s))
        h[0], h[-1] = profile(d.inner), profile(d.outer)
        out.append(make_tabulated_profile(np.column_stack((ts, h)), d, profile.target))
    return out


def criterion_10():
    d, g = pair(4, *REF)
    sol = build_radial_minimizer(d, g)
    rng = np.random.default_rng(SEED)
    worst = math.inf
    for h in perturbations(sol.profile, 20, rng):
        rep = radial_energy(h)
        budget = rep.quadrature_error + 10 * TAU_RTOL * sol.energy_closed_form
        worst = min(worst, (rep.energy - sol.energy_closed_form) / budget)
    return worst > 1, (f"20 seeded perturbations of H*, min energy excess {worst:.2e} "
                       f"x tolerance budget (need > 1)")


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 11)}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    passed, line = CRITERIA[number]()
    RESULTS[number] = (passed, line)
    assert passed, line


if __name__ == "__main__":
    failures = 0
    for number, fn in CRITERIA.items():
        passed, line = fn()
        failures += not passed
        print(f"{'PASS' if passed else 'FAIL'}  criterion {number:>2}: {line}")
    sys.exit(1 if failures else 0)
