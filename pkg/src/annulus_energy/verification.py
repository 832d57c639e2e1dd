"""Executable property suite for the energy bounds, equality cases and gaps.

Each check records a measured value, the threshold it is held to, the
comparison, and an anchor naming the mathematical fact being exercised
(``"plumbing"`` for infrastructure).  Randomised checks draw from a seeded
``numpy.random.Generator`` so reports are reproducible bit for bit.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from typing import Callable, List, Optional, Sequence

import numpy as np

from .energy import (
    SeparableMap,
    combined_energy_separable,
    combined_lower_bound,
    dirichlet_infimum,
    limit_energy_result,
    log_gradient_integral,
    quasiradial_energy,
    quasiradial_energy_zonal,
    radial_energy,
    sphere_conformal_energy,
)
from .errors import NonConvergence
from .euler_lagrange import (
    TAU_RTOL,
    build_radial_minimizer,
    el_residual_scaled,
    phi_of_w,
    psi,
    solve_w,
)
from .geometry import (
    Annulus,
    ZonalPoint,
    conformal_gradient_norm_sq,
    conformal_map_point,
    conformal_map_point_stereographic,
    meridian_dilation,
    stereographic_inverse,
    stereographic_project,
    unit_sphere_measure,
    zonal_measure_ratio,
)
from .profiles import (
    DECREASING,
    INCREASING,
    RadialProfile,
    grid,
    holder_lower_bound,
    invert_profile,
    make_boundary_profile,
    make_tabulated_profile,
)
from .quadrature import QuadratureConfig, integrate_interval, integrate_semi_axis, integrate_zonal

DEFAULT_SEED = 20210923

# Relative excess E[h_1^lambda] / infimum - 1 at lambda = 2^-10 for n = 4,
# (r, R, r_*, R_*) = (1, 2, 1, e).  Measured once with the independent
# (t, theta) quadrature route (1.7152e-4) and frozen with headroom.
CALIBRATED_EXCESS_N4 = 2.0e-4
# Generic cap on the same quantity for arbitrary annuli.
EXCESS_CAP = 0.05

STRICT_FACTOR = 10.0
EQUALITY_TOL = 1e-8

# Deliberately wrong constants for negative-control runs.
FAULTS = {
    "dirichlet_infimum": 1.0 + 1e-3,
    "sphere_energy": 1.0 + 1e-3,
}


@dataclass
class Check:
    name: str
    passed: bool
    measured: float
    threshold: float
    comparison: str
    anchor: str
    detail: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


def _le(name, measured, threshold, anchor, detail=""):
    measured = float(measured)
    return Check(name, bool(measured <= threshold), measured, float(threshold), "<=",
                 anchor, detail)


def _gt(name, measured, threshold, anchor, detail=""):
    measured = float(measured)
    return Check(name, bool(measured > threshold), measured, float(threshold), ">",
                 anchor, detail)


def _rel(a, b):
    return abs(a - b) / abs(b)


# ---------------------------------------------------------------------------
# individual checks usable outside the suite

def check_power_mean_inequality(samples: int, seed: int = DEFAULT_SEED) -> Check:
    """a^s - b^s <= s (a - b)(a^{s-1} + b^{s-1}) for a >= b >= 0, s >= 1.

    Draws ``samples`` seeded triples plus edge cases; slack is 1e-15 a^s.
    Measured value is the worst (lhs - rhs) / max(a^s, tiny).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    a = rng.uniform(0.0, 10.0, samples)
    b = a * rng.uniform(0.0, 1.0, samples)
    s = 1.0 + rng.uniform(0.0, 9.0, samples)
    edges = np.array([
        # a == b, b == 0 with s == 1, hand case, near-equal pair
        [3.0, 3.0, 2.5], [4.0, 0.0, 1.0], [2.0, 1.0, 3.0], [1.0, 1.0 - 1e-12, 7.0],
        [5.0, 0.0, 4.0], [1.0, 0.5, 1.0], [0.0, 0.0, 2.0],
    ])
    a = np.concatenate((edges[:, 0], a))
    b = np.concatenate((edges[:, 1], b))
    s = np.concatenate((edges[:, 2], s))
    lhs = a ** s - b ** s
    rhs = s * (a - b) * (a ** (s - 1) + b ** (s - 1))
    scale = np.maximum(a ** s, np.finfo(float).tiny)
    worst = float(np.max((lhs - rhs) / scale))
    return _le("power-mean-inequality", worst, 1e-15, "power-mean-inequality",
               f"{a.size} triples")


@dataclass
class SweepRow:
    lam: float
    energy: float
    limit_energy: float
    bound: float
    relative_excess: float
    quad_error: float


@dataclass
class SweepResult:
    rows: List[SweepRow]
    checks: List[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def sweep_lambda(profile: RadialProfile, lambdas: Sequence[float],
                 cfg: QuadratureConfig = QuadratureConfig()) -> SweepResult:
    """Quasiradial energies along a list of lambdas.

    ``relative_excess`` is measured against the lambda -> 0 limit of the same
    profile.  Checks: strict improvement over lambda = 1 (n >= 4), lambda <->
    1/lambda symmetry for pairs present in the list, and no value below the
    limit.
    """
    lambdas = [float(x) for x in lambdas]
    if not lambdas:
        raise ValueError("lambda list must not be empty")
    n = profile.n
    lim = limit_energy_result(profile, cfg)
    bound = dirichlet_infimum(profile.domain, profile.target)
    reports = {}
    rows = []
    for lam in lambdas:
        rep = quasiradial_energy(SeparableMap(profile, lam), cfg)
        reports[lam] = rep
        rows.append(SweepRow(lam, rep.energy, lim.value, bound,
                             (rep.energy - lim.value) / lim.value, rep.quadrature_error))

    checks = []
    floor = min((r.energy - lim.value) + r.quad_error + lim.error_estimate
                + cfg.rel_tol * lim.value for r in rows)
    checks.append(_gt("sweep-above-limit", floor, 0.0, "minimizing-sequence"))

    if n >= 4 and any(lam != 1.0 for lam in lambdas):
        radial = reports.get(1.0) or quasiradial_energy(SeparableMap(profile, 1.0), cfg)
        ratios = []
        for lam, rep in reports.items():
            if lam == 1.0:
                continue
            budget = rep.quadrature_error + radial.quadrature_error
            ratios.append((radial.energy - rep.energy) / max(budget, 1e-300))
        checks.append(_gt("sweep-strict-improvement", min(ratios), STRICT_FACTOR,
                          "quasiradial-strictness"))

    pairs = [(lam, 1.0 / lam) for lam in reports if lam < 1.0 and (1.0 / lam) in reports]
    if pairs:
        worst = max(_rel(reports[a].energy, reports[b].energy) for a, b in pairs)
        checks.append(_le("sweep-lambda-symmetry", worst, EQUALITY_TOL, "lambda-symmetry"))
    return SweepResult(rows, checks)


@dataclass
class GapReport:
    n: int
    infimum: float
    quasiradial_eighth: float
    minimal_radial: float
    quadrature_error: float
    lower_margin: float
    upper_margin: float
    passed: bool

    @property
    def gap(self) -> float:
        return self.minimal_radial - self.infimum


def gap_report(domain: Annulus, target: Annulus,
               cfg: QuadratureConfig = QuadratureConfig()) -> GapReport:
    """infimum < E[h_*^{1/8}] < minimal radial energy for n >= 4.

    Margins are expressed in units of the error budget (quadrature error of
    E[h_*^{1/8}] plus the root-finding slack of the closed form); the strict
    ordering passes when both exceed 10.  For n = 3 all three values coincide
    and the check instead requires a relative spread below 1e-8.
    """
    sol = build_radial_minimizer(domain, target)
    inf = dirichlet_infimum(domain, target)
    rep = quasiradial_energy(SeparableMap(sol.profile, 0.125), cfg)
    mre = sol.energy_closed_form
    budget = rep.quadrature_error + 10.0 * TAU_RTOL * mre + cfg.abs_tol
    lower = (rep.energy - inf) / budget
    upper = (mre - rep.energy) / budget
    if domain.n >= 4:
        passed = lower > STRICT_FACTOR and upper > STRICT_FACTOR
    else:
        spread = max(abs(rep.energy - inf), abs(mre - inf)) / inf
        passed = spread <= EQUALITY_TOL
    return GapReport(domain.n, inf, rep.energy, mre, rep.quadrature_error,
                     lower, upper, passed)


# ---------------------------------------------------------------------------
# suite

@dataclass(frozen=True)
class SuiteConfig:
    n: int = 4
    r: float = 1.0
    R: float = 2.0
    r_star: float = 1.0
    R_star: float = math.e
    quadrature: QuadratureConfig = QuadratureConfig()
    seed: int = DEFAULT_SEED
    power_mean_samples: int = 10_000
    random_samples: int = 1_000
    perturbations: int = 20
    fault: Optional[str] = None

    def __post_init__(self):
        if self.fault is not None and self.fault not in FAULTS:
            raise ValueError(f"unknown fault {self.fault!r}; choose from {sorted(FAULTS)}")
        self.domain  # validates
        self.target

    @property
    def domain(self) -> Annulus:
        return Annulus(self.n, self.r, self.R)

    @property
    def target(self) -> Annulus:
        return Annulus(self.n, self.r_star, self.R_star)

    def annuli(self, n: int):
        return Annulus(n, self.r, self.R), Annulus(n, self.r_star, self.R_star)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["quadrature"] = asdict(self.quadrature)
        return d


@dataclass
class SuiteReport:
    checks: List[Check]
    config: dict
    seed: int

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "config": self.config,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "status": c.status, "measured": c.measured,
                 "threshold": c.threshold, "comparison": c.comparison,
                 "anchor": c.anchor, "detail": c.detail}
                for c in self.checks
            ],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "status", "measured", "comparison", "threshold", "anchor"])
        for c in self.checks:
            writer.writerow([c.name, c.status, format(c.measured, ".17g"), c.comparison,
                             format(c.threshold, ".17g"), c.anchor])
        return buf.getvalue()

    def to_table(self) -> str:
        width = max(len(c.name) for c in self.checks)
        lines = [f"{'check':<{width}}  status  {'measured':>12}     {'threshold':>10}  anchor"]
        for c in self.checks:
            lines.append(f"{c.name:<{width}}  {c.status:<6}  {c.measured:>12.4e} "
                         f"{c.comparison:>2} {c.threshold:>10.3e}  {c.anchor}")
        verdict = "ALL PASS" if self.passed else f"{len(self.failed)} FAILED"
        lines.append(f"{verdict} ({len(self.checks)} checks, seed {self.seed})")
        return "\n".join(lines)


class _Suite:
    """Holds configuration shared by the checks of one run."""

    def __init__(self, config: SuiteConfig):
        self.c = config
        self.cfg = config.quadrature
        self.rng = np.random.default_rng(config.seed)
        self.scale = FAULTS.get(config.fault, 1.0)

    def infimum(self, domain, target):
        s = self.scale if self.c.fault == "dirichlet_infimum" else 1.0
        return s * dirichlet_infimum(domain, target)

    def sphere_constant(self, n):
        s = self.scale if self.c.fault == "sphere_energy" else 1.0
        return s * (n - 1) ** (0.5 * (n - 1)) * unit_sphere_measure(n)

    def strict_dims(self):
        return sorted({max(self.c.n, 4), 5})

    # -- geometry ----------------------------------------------------------
    def meridian_group_law(self):
        k = self.c.random_samples
        th = self.rng.uniform(0.0, math.pi, k)
        lam = np.exp(self.rng.uniform(-3.0, 3.0, k))
        mu = np.exp(self.rng.uniform(-3.0, 3.0, k))
        worst = 0.0
        for t, l, m in zip(th, lam, mu):
            comp = meridian_dilation(meridian_dilation(t, m), l)
            worst = max(worst, abs(comp - meridian_dilation(t, l * m)),
                        abs(meridian_dilation(meridian_dilation(t, l), 1.0 / l) - t))
        return _le("meridian-dilation-group-law", worst, 1e-12, "conformal-dilation")

    def _random_points(self, n, k):
        th = self.rng.uniform(0.0, math.pi, k)
        s = self.rng.normal(size=(k, n - 1))
        s /= np.linalg.norm(s, axis=1, keepdims=True)
        return [ZonalPoint(t, v) for t, v in zip(th, s)]

    def conformal_two_routes(self):
        worst = 0.0
        for n in (3, 4, 6):
            for xi in self._random_points(n, self.c.random_samples // 3):
                lam = math.exp(self.rng.uniform(-2.0, 2.0))
                a = conformal_map_point(xi, lam).to_ambient()
                b = conformal_map_point_stereographic(xi, lam).to_ambient()
                worst = max(worst, float(np.max(np.abs(a - b))))
        return _le("conformal-map-two-routes", worst, 1e-12, "conformal-dilation")

    def stereographic_round_trip(self):
        worst = 0.0
        for xi in self._random_points(max(self.c.n, 3), self.c.random_samples):
            back = stereographic_inverse(stereographic_project(xi))
            worst = max(worst, float(np.max(np.abs(back.to_ambient() - xi.to_ambient()))))
        return _le("stereographic-round-trip", worst, 1e-12, "stereographic-projection")

    def gradient_pole_continuity(self):
        worst = 0.0
        for n in (3, 4, 7):
            for lam in (0.2, 3.0):
                north, south = (n - 1) * lam ** 2, (n - 1) / lam ** 2
                eps = 10.0 ** -7
                worst = max(worst,
                            _rel(conformal_gradient_norm_sq(eps, lam, n), north),
                            _rel(conformal_gradient_norm_sq(math.pi - eps, lam, n), south))
        return _le("gradient-norm-pole-continuity", worst, 1e-12, "conformal-gradient-norm")

    def zonal_ratio(self):
        worst = 0.0
        for n in range(3, 11):
            q = integrate_interval(lambda th: np.sin(th) ** (n - 2), 0.0, math.pi, self.cfg)
            worst = max(worst, abs(zonal_measure_ratio(n) * q.value - 1.0))
        return _le("zonal-ratio-quadrature", worst, 1e-10, "zonal-reduction")

    # -- quadrature ----------------------------------------------------------
    def beta_integral(self):
        from .geometry import gamma
        worst = 0.0
        for n in range(4, 9):
            q = integrate_semi_axis(lambda y: y ** (n - 2) / (1 + y * y) ** (n - 1), self.cfg)
            exact = math.sqrt(math.pi) * gamma(0.5 * (n - 1)) / (2 ** (n - 1) * gamma(0.5 * n))
            worst = max(worst, abs(q.value - exact))
        return _le("beta-integral-closed-form", worst, 1e-10, "beta-integral")

    def transforms_agree(self):
        worst = 0.0
        alt = QuadratureConfig(self.cfg.rel_tol, self.cfg.abs_tol, self.cfg.max_subdivisions,
                               "exponential")
        for n in range(4, 11):
            f = lambda y: y ** (n - 2) / (1 + y * y) ** (n - 1)  # noqa: E731
            a = integrate_semi_axis(f, QuadratureConfig(self.cfg.rel_tol, self.cfg.abs_tol,
                                                        self.cfg.max_subdivisions, "rational"))
            b = integrate_semi_axis(f, alt)
            allowed = 10.0 * max(self.cfg.rel_tol * abs(a.value), self.cfg.abs_tol)
            worst = max(worst, abs(a.value - b.value) / allowed)
        return _le("semi-axis-transforms-agree", worst, 1.0, "plumbing",
                   "ratio of discrepancy to 10*max(rel_tol*|I|, abs_tol)")

    def zonal_measure(self):
        worst = 0.0
        for n in range(3, 11):
            q = integrate_zonal(lambda th: np.ones_like(th), n, self.cfg)
            worst = max(worst, _rel(q.value, unit_sphere_measure(n)))
        return _le("zonal-sphere-measure", worst, self.cfg.rel_tol, "zonal-reduction")

    def tolerance_halving(self):
        cases = [
            (lambda t: 1.0 / (1.0 + 25.0 * t * t), -1.0, 1.0, 2.0 * math.atan(5.0) / 5.0),
            (lambda t: np.sqrt(t), 0.0, 1.0, 2.0 / 3.0),
            (lambda t: np.exp(np.sin(3 * t)), 0.0, 1.0, None),
        ]
        worst = 0.0
        for f, a, b, exact in cases:
            if exact is None:
                exact = integrate_interval(f, a, b, QuadratureConfig(1e-14, 1e-16)).value
            prev = None
            tol = 1e-3
            while tol >= 1e-12:
                v = integrate_interval(f, a, b, QuadratureConfig(tol, 1e-16)).value
                disc = abs(v - exact)
                if prev is not None:
                    # discrepancies at rounding level carry no information
                    worst = max(worst, disc - max(prev, 4e-16 * abs(exact)))
                prev = disc
                tol /= 2.0
        return _le("tolerance-halving-monotone", worst, 0.0, "plumbing")

    # -- profiles ------------------------------------------------------------
    def boundary_hoelder_equality(self):
        worst_const = 0.0
        worst_int = 0.0
        for n in (3, 4, 5, 6):
            d, g = self.c.annuli(n)
            for orient in (INCREASING, DECREASING):
                H = make_boundary_profile(d, g, orient)
                ts = grid(d, 200)
                vals = ts ** ((n - 1) / (n - 2)) * np.abs(H.deriv(ts) / H(ts))
                worst_const = max(worst_const, float(np.ptp(vals) / np.mean(vals)))
                worst_int = max(worst_int, _rel(log_gradient_integral(H, self.cfg).value,
                                                holder_lower_bound(d, g)))
        return [
            _le("boundary-log-slope-power-law", worst_const, 1e-9, "hoelder-equality"),
            _le("boundary-hoelder-equality", worst_int, EQUALITY_TOL, "hoelder-equality"),
        ]

    def _perturbed_profiles(self, base: RadialProfile, count: int, knots: int = 201):
        """Seeded monotone competitors sharing ``base``'s boundary values."""
        d = base.domain
        ts = grid(d, knots)
        logH = np.log(base(ts))
        slope = np.asarray(base.deriv(ts)) / np.asarray(base(ts))
        s = (ts - d.inner) / d.width
        out = []
        for _ in range(count):
            k = int(self.rng.integers(1, 4))
            bump = np.sin(k * math.pi * s)
            dbump = k * math.pi * np.cos(k * math.pi * s) / d.width
            amp_max = 0.9 * float(np.min(np.abs(slope)) / np.max(np.abs(dbump)))
            amp = amp_max * self.rng.uniform(0.2, 1.0) * (1 if self.rng.random() < 0.5 else -1)
            H = np.exp(logH + amp * bump)
            H[0], H[-1] = base(d.inner), base(d.outer)
            out.append(make_tabulated_profile(np.column_stack((ts, H)), d, base.target))
        return out

    def hoelder_dominance(self):
        d, g = self.c.domain, self.c.target
        bound = holder_lower_bound(d, g)
        sol = build_radial_minimizer(d, g)
        profiles = [sol.profile] + self._perturbed_profiles(make_boundary_profile(d, g), 5)
        worst = math.inf
        for H in profiles:
            q = log_gradient_integral(H, self.cfg)
            worst = min(worst, (q.value + q.error_estimate - bound) / bound)
        return _gt("hoelder-bound-dominance", worst, 0.0, "hoelder-bound")

    def orientation_and_derivative(self):
        d, g = self.c.domain, self.c.target
        profiles = [make_boundary_profile(d, g, INCREASING),
                    make_boundary_profile(d, g, DECREASING),
                    build_radial_minimizer(d, g).profile]
        profiles.append(invert_profile(profiles[0], g.inner * g.outer))
        profiles += self._perturbed_profiles(profiles[0], 2)
        bad = 0
        worst = 0.0
        ts = grid(d, 100, interior=True)
        for H in profiles:
            sign = 1.0 if H.orientation == INCREASING else -1.0
            bad += int(np.sum(sign * np.asarray(H.deriv(ts)) <= 0))
            tr = self.rng.uniform(d.inner + 1e-3 * d.width, d.outer - 1e-3 * d.width,
                              self.c.random_samples)
            h = 1e-6 * tr
            fd = (np.asarray(H(tr + h)) - np.asarray(H(tr - h))) / (2 * h)
            worst = max(worst, float(np.max(np.abs(fd / np.asarray(H.deriv(tr)) - 1.0))))
        return [
            _le("orientation-sign", bad, 0, "plumbing"),
            _le("derivative-consistency", worst, 1e-6, "plumbing"),
        ]

    # -- energy --------------------------------------------------------------
    def sphere_invariance(self):
        worst = 0.0
        for n in (3, 4, 5, 6):
            for lam in (0.1, 0.5, 1.0, 2.0, 10.0):
                se = sphere_conformal_energy(lam, n, self.cfg)
                worst = max(worst, _rel(se.value, self.sphere_constant(n)))
        return _le("sphere-energy-invariance", worst, EQUALITY_TOL, "conformal-sphere-energy")

    def radial_formula_and_zonal(self):
        worst_radial = 0.0
        worst_zonal = 0.0
        for n in (3, 4, 5):
            d, g = self.c.annuli(n)
            for H in (make_boundary_profile(d, g), build_radial_minimizer(d, g).profile):
                q1 = quasiradial_energy(SeparableMap(H, 1.0), self.cfg)
                worst_radial = max(worst_radial, _rel(q1.energy, radial_energy(H, self.cfg).energy))
                qz = quasiradial_energy_zonal(SeparableMap(H, 0.5), self.cfg)
                qy = quasiradial_energy(SeparableMap(H, 0.5), self.cfg)
                worst_zonal = max(worst_zonal, _rel(qy.energy, qz.energy))
        return [
            _le("radial-formula-agreement", worst_radial, EQUALITY_TOL, "radial-reduction"),
            _le("zonal-route-agreement", worst_zonal, EQUALITY_TOL, "radial-reduction"),
        ]

    def lambda_symmetry(self):
        d, g = self.c.domain, self.c.target
        worst = 0.0
        for H in (make_boundary_profile(d, g), build_radial_minimizer(d, g).profile):
            for lam in (0.125, 0.5):
                a = quasiradial_energy(SeparableMap(H, lam), self.cfg).energy
                b = quasiradial_energy(SeparableMap(H, 1.0 / lam), self.cfg).energy
                worst = max(worst, _rel(a, b))
        return _le("lambda-symmetry", worst, EQUALITY_TOL, "lambda-symmetry")

    def inversion(self):
        d, g = self.c.domain, self.c.target
        worst = 0.0
        c = g.inner * g.outer
        for H in (make_boundary_profile(d, g), build_radial_minimizer(d, g).profile):
            for lam in (0.5, 1.0, 3.0):
                a = quasiradial_energy(SeparableMap(H, lam), self.cfg).energy
                b = quasiradial_energy(SeparableMap(invert_profile(H, c), lam), self.cfg).energy
                worst = max(worst, _rel(a, b))
        return _le("inversion-invariance", worst, EQUALITY_TOL, "inversion-symmetry")

    def combined_equality(self):
        worst = 0.0
        for n in (3, 4, 5):
            d, g = self.c.annuli(n)
            for orient in (INCREASING, DECREASING):
                H = make_boundary_profile(d, g, orient)
                for a, b in ((1.0, 1.0), (2.0, 3.0)):
                    bound = combined_lower_bound(a, b, d, g)
                    if self.c.fault == "dirichlet_infimum" and a == b == 1.0:
                        bound = self.infimum(d, g)
                    for lam in (0.5, 1.0, 4.0):
                        e = combined_energy_separable(a, b, SeparableMap(H, lam), self.cfg)
                        worst = max(worst, _rel(e.energy, bound))
        return _le("combined-energy-equality", worst, EQUALITY_TOL, "combined-energy-equality")

    def infimum_dominance(self):
        d, g = self.c.domain, self.c.target
        inf = self.infimum(d, g)
        profiles = [make_boundary_profile(d, g), make_boundary_profile(d, g, DECREASING),
                    build_radial_minimizer(d, g).profile] + self._perturbed_profiles(
                        make_boundary_profile(d, g), 2)
        worst = math.inf
        for H in profiles:
            for lam in (0.01, 0.25, 1.0, 4.0):
                rep = quasiradial_energy(SeparableMap(H, lam), self.cfg)
                slack = rep.quadrature_error + self.cfg.rel_tol * inf
                worst = min(worst, (rep.energy - inf + slack) / inf)
        return _gt("infimum-dominance", worst, 0.0, "infimum-lower-bound")

    def limit_of_boundary_profile(self):
        worst = 0.0
        for n in (4, 5, 6):
            d, g = self.c.annuli(n)
            for orient in (INCREASING, DECREASING):
                lim = limit_energy_result(make_boundary_profile(d, g, orient), self.cfg)
                worst = max(worst, _rel(lim.value, self.infimum(d, g)))
        return _le("limit-energy-equals-infimum", worst, EQUALITY_TOL, "minimizing-sequence")

    def minimizing_sequence(self):
        d, g = self.c.annuli(max(self.c.n, 4))
        H = make_boundary_profile(d, g)
        inf = self.infimum(d, g)
        lams = [2.0 ** -k for k in range(11)]
        reps = [quasiradial_energy(SeparableMap(H, lam), self.cfg) for lam in lams]
        rises = max((b.energy - a.energy) - (a.quadrature_error + b.quadrature_error)
                    for a, b in zip(reps, reps[1:]))
        floor = min(r.energy - inf + r.quadrature_error + self.cfg.rel_tol * inf for r in reps)
        excess = (reps[-1].energy - inf) / inf
        default = (d.n, d.inner, d.outer, g.inner, g.outer) == (4, 1.0, 2.0, 1.0, math.e)
        cap = CALIBRATED_EXCESS_N4 if default else EXCESS_CAP
        return [
            _le("minimizing-sequence-nonincreasing", rises, 0.0, "minimizing-sequence"),
            _gt("minimizing-sequence-above-infimum", floor, 0.0, "infimum-lower-bound"),
            _le("minimizing-sequence-excess", excess, cap, "minimizing-sequence"),
        ]

    def quasiradial_strictness(self):
        worst = math.inf
        for n in self.strict_dims():
            d, g = self.c.annuli(n)
            for H in (make_boundary_profile(d, g), build_radial_minimizer(d, g).profile):
                one = quasiradial_energy(SeparableMap(H, 1.0), self.cfg)
                for lam in (0.25, 0.5, 2.0, 4.0):
                    rep = quasiradial_energy(SeparableMap(H, lam), self.cfg)
                    budget = one.quadrature_error + rep.quadrature_error
                    worst = min(worst, (one.energy - rep.energy) / budget)
        return _gt("quasiradial-strictness", worst, STRICT_FACTOR, "quasiradial-strictness",
                   "margin in units of summed quadrature error")

    # -- radial minimiser ----------------------------------------------------
    def multiplier_structure(self):
        k = self.c.random_samples
        ns = self.rng.integers(3, 11, k)
        r = self.rng.uniform(0.1, 5.0, k)
        R = r * (1.0 + self.rng.uniform(0.01, 4.0, k))
        tau1 = np.exp(self.rng.uniform(-6.0, 6.0, k))
        tau2 = tau1 * (1.0 + self.rng.uniform(1e-3, 2.0, k))
        bad_psi = 0
        bad_w = 0
        worst_rt = 0.0
        worst_scale = 0.0
        for n, ri, Ri, t1, t2 in zip(ns, r, R, tau1, tau2):
            n = int(n)
            if not psi(ri, Ri, t2, n) > psi(ri, Ri, t1, n):
                bad_psi += 1
            w_r, w_R = solve_w(ri, t1, n), solve_w(Ri, t1, n)
            if not w_R < w_r:
                bad_w += 1
            worst_rt = max(worst_rt, abs(ri * phi_of_w(w_r, n) / t1 - 1.0))
            c = float(self.rng.uniform(0.1, 10.0))
            worst_scale = max(worst_scale, abs(solve_w(c * ri, c * t1, n) / w_r - 1.0))
        return [
            _le("psi-monotone-in-tau", bad_psi, 0, "multiplier-monotonicity"),
            _le("w-decreasing-in-t", bad_w, 0, "multiplier-monotonicity"),
            _le("defining-relation-round-trip", worst_rt, 1e-12, "implicit-solution"),
            _le("scale-covariance", worst_scale, 1e-12, "implicit-solution"),
        ]

    def el_residual_and_closed_form(self):
        worst_res = 0.0
        worst_fd = 0.0
        worst_energy = 0.0
        worst_boundary = 0.0
        for n in (3, 4, 5, 6):
            d, g = self.c.annuli(n)
            sol = build_radial_minimizer(d, g)
            ts = grid(d, 100)
            worst_res = max(worst_res, float(np.max(np.abs(el_residual_scaled(sol.profile, ts)))))
            worst_fd = max(worst_fd, float(np.max(np.abs(
                el_residual_scaled(sol.profile, ts, "fd")))))
            rep = radial_energy(sol.profile, self.cfg)
            worst_energy = max(worst_energy, _rel(sol.energy_closed_form, rep.energy))
            worst_boundary = max(worst_boundary, _rel(sol.profile(d.inner), g.inner),
                                 _rel(sol.profile(d.outer), g.outer))
        return [
            _le("euler-lagrange-residual", worst_res, EQUALITY_TOL, "euler-lagrange"),
            _le("euler-lagrange-residual-fd", worst_fd, EQUALITY_TOL, "euler-lagrange"),
            _le("closed-form-radial-energy", worst_energy, EQUALITY_TOL, "closed-form-radial-energy"),
            _le("radial-minimizer-boundary", worst_boundary, 1e-10, "euler-lagrange"),
        ]

    def radial_optimality(self):
        d, g = self.c.domain, self.c.target
        sol = build_radial_minimizer(d, g)
        worst = math.inf
        for H in self._perturbed_profiles(sol.profile, self.c.perturbations):
            rep = radial_energy(H, self.cfg)
            budget = rep.quadrature_error + 10.0 * TAU_RTOL * sol.energy_closed_form
            worst = min(worst, (rep.energy - sol.energy_closed_form) / budget)
        return _gt("radial-minimizer-optimality", worst, 1.0, "radial-minimizer",
                   "excess in units of the tolerance budget")

    def n3_coincidence(self):
        d, g = self.c.annuli(3)
        sol = build_radial_minimizer(d, g)
        H1 = make_boundary_profile(d, g)
        ts = grid(d, 200)
        sup = float(np.max(np.abs(np.asarray(sol.profile(ts)) - np.asarray(H1(ts)))))
        rel = _rel(sol.energy_closed_form, self.infimum(d, g))
        return [
            _le("n3-profile-coincidence", sup, 1e-9, "n3-coincidence"),
            _le("n3-energy-coincidence", rel, 1e-9, "n3-coincidence"),
        ]

    # -- gap -----------------------------------------------------------------
    def gap(self):
        out = []
        for n in sorted({3, max(self.c.n, 4)}):
            d, g = self.c.annuli(n)
            rep = gap_report(d, g, self.cfg)
            if n >= 4:
                out.append(_gt(f"radial-quasiradial-gap-n{n}",
                               min(rep.lower_margin, rep.upper_margin), STRICT_FACTOR,
                               "radial-quasiradial-gap"))
            else:
                inf = self.infimum(d, g)
                spread = max(abs(rep.quasiradial_eighth - inf), abs(rep.minimal_radial - inf)) / inf
                out.append(_le("zero-gap-n3", spread, EQUALITY_TOL, "n3-coincidence"))
        return out

    def power_mean(self):
        return check_power_mean_inequality(self.c.power_mean_samples, self.c.seed)


SUITE_ORDER: Sequence[str] = (
    "meridian_group_law", "conformal_two_routes", "stereographic_round_trip",
    "gradient_pole_continuity", "zonal_ratio",
    "beta_integral", "transforms_agree", "zonal_measure", "tolerance_halving",
    "boundary_hoelder_equality", "hoelder_dominance", "orientation_and_derivative",
    "sphere_invariance", "radial_formula_and_zonal", "lambda_symmetry", "inversion",
    "combined_equality", "infimum_dominance", "limit_of_boundary_profile",
    "minimizing_sequence", "quasiradial_strictness",
    "multiplier_structure", "el_residual_and_closed_form", "radial_optimality",
    "n3_coincidence", "gap", "power_mean",
)

STRICTNESS_CHECKS = ("quasiradial-strictness", "radial-minimizer-optimality")


def run_suite(config: SuiteConfig = SuiteConfig(),
              only: Optional[Callable[[str], bool]] = None) -> SuiteReport:
    """Run every property check in a fixed order.

    Failing checks are recorded, not raised.  A NonConvergence inside a check
    is recorded as a failure of that check; any other exception aborts.
    """
    suite = _Suite(config)
    checks: List[Check] = []
    for name in SUITE_ORDER:
        if only is not None and not only(name):
            continue
        try:
            result = getattr(suite, name)()
        except NonConvergence as exc:
            result = Check(name.replace("_", "-"), False, math.nan, math.nan, "", "plumbing",
                           f"non-convergence: {exc}")
        checks.extend(result if isinstance(result, list) else [result])
    return SuiteReport(checks, config.as_dict(), config.seed)
