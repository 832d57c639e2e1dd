"""Energy functionals of radial and quasiradial maps between annuli.

For a separable map h^lambda(x) = H(|x|) Phi^lambda(x/|x|) every energy
reduces to one- or two-dimensional integrals in t = |x| and, for the sphere
factor, either the meridian angle theta or y = tan(theta/2).  The integrands
only see the profile through its log-derivative w(t) = t H'(t)/H(t); the
absolute value |w| is used wherever an odd power appears so decreasing
profiles are handled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ConfigError
from .geometry import Annulus, conformal_gradient_norm_sq, unit_sphere_measure
from .profiles import RadialProfile, holder_lower_bound
from .quadrature import (
    DEFAULT_CONFIG,
    IntegralResult,
    QuadratureConfig,
    integrate_interval,
    integrate_semi_axis,
    integrate_zonal,
)

# below this (or above its inverse) quasiradial_energy refuses; use limit_energy
LAMBDA_FLOOR = 1e-6
# between LAMBDA_FLOOR and this, tolerances are tightened by LAMBDA_TIGHTEN
LAMBDA_TIGHT = 1e-3
LAMBDA_TIGHTEN = 1e2

CSV_HEADER = ("n", "r", "R", "r_star", "R_star", "lambda", "profile", "a", "b",
              "energy", "bound", "relative_gap", "quad_error")


@dataclass(frozen=True)
class SeparableMap:
    """h(x) = H(|x|) Phi^lambda(x/|x|); lambda = 1 is the radial map."""

    profile: RadialProfile
    lam: float = 1.0

    def __post_init__(self):
        lam = float(self.lam)
        if not (lam > 0 and math.isfinite(lam)):
            raise ConfigError(f"lambda must be positive and finite, got {self.lam}",
                              field="lambda")
        object.__setattr__(self, "lam", lam)


@dataclass(frozen=True)
class EnergyReport:
    energy: float
    bound: float
    relative_gap: float
    quadrature_error: float
    metadata: dict = field(default_factory=dict)

    def row(self) -> dict:
        """Values keyed by :data:`CSV_HEADER` (blank where not applicable)."""
        m = self.metadata
        return {
            "n": m.get("n"), "r": m.get("r"), "R": m.get("R"),
            "r_star": m.get("r_star"), "R_star": m.get("R_star"),
            "lambda": m.get("lambda"), "profile": m.get("profile"),
            "a": m.get("a"), "b": m.get("b"),
            "energy": self.energy, "bound": self.bound,
            "relative_gap": self.relative_gap, "quad_error": self.quadrature_error,
        }


def _report(energy, bound, error, profile, **extra) -> EnergyReport:
    d, g = profile.domain, profile.target
    meta = {"n": d.n, "r": d.inner, "R": d.outer, "r_star": g.inner, "R_star": g.outer,
            "profile": profile.tag, "lambda": None, "a": None, "b": None}
    meta.update(extra)
    return EnergyReport(energy, bound, (energy - bound) / bound, error, meta)


# ---------------------------------------------------------------------------
# closed forms

def combined_lower_bound(a: float, b: float, domain: Annulus, target: Annulus) -> float:
    """Sharp lower bound of the combined energy E[a, b] over all admissible maps."""
    if not (a > 0 and b > 0):
        raise ConfigError("weights a and b must be positive", field="a" if not a > 0 else "b")
    n = domain.n
    sphere = (n - 1) ** (0.5 * (n - 1)) * domain.width
    return unit_sphere_measure(n) * (a * a * sphere
                                     + b * b * holder_lower_bound(domain, target))


def dirichlet_infimum(domain: Annulus, target: Annulus) -> float:
    """Infimum of the Dirichlet-type energy over all homeomorphisms.

    Attained by the radial boundary profile when n = 3; for n >= 4 it is
    only approached, by H_1 composed with Phi^lambda as lambda -> 0.
    """
    return combined_lower_bound(1.0, 1.0, domain, target)


def sphere_energy_closed_form(n: int) -> float:
    """(n-1)^{(n-1)/2} omega_{n-1}: sphere energy of every Phi^lambda."""
    return (n - 1) ** (0.5 * (n - 1)) * unit_sphere_measure(n)


@dataclass(frozen=True)
class SphereEnergy:
    value: float
    error_estimate: float
    closed_form: float


def sphere_conformal_energy(lam: float, n: int,
                            cfg: QuadratureConfig = DEFAULT_CONFIG) -> SphereEnergy:
    """Integral of ||D Phi^lambda||^{n-1} over S^{n-1} by zonal quadrature."""
    power = 0.5 * (n - 1)
    res = integrate_zonal(lambda th: conformal_gradient_norm_sq(th, lam, n) ** power, n, cfg)
    return SphereEnergy(res.value, res.error_estimate, sphere_energy_closed_form(n))


# ---------------------------------------------------------------------------
# one-dimensional radial integrals

def _radial_integral(profile: RadialProfile, integrand, cfg) -> IntegralResult:
    d = profile.domain
    return integrate_interval(lambda t: integrand(np.abs(profile.log_derivative(t))),
                              d.inner, d.outer, cfg)


def radial_energy(profile: RadialProfile, cfg: QuadratureConfig = DEFAULT_CONFIG) -> EnergyReport:
    """Energy of the radial map H(|x|) x/|x|: omega_{n-1} int (n-1+w^2)^{(n-1)/2} dt."""
    n = profile.n
    res = _radial_integral(profile, lambda w: (n - 1 + w * w) ** (0.5 * (n - 1)), cfg)
    scale = unit_sphere_measure(n)
    return _report(res.value * scale, dirichlet_infimum(profile.domain, profile.target),
                   res.error_estimate * scale, profile, **{"lambda": 1.0})


def limit_energy_result(profile: RadialProfile,
                        cfg: QuadratureConfig = DEFAULT_CONFIG) -> IntegralResult:
    n = profile.n
    const = (n - 1) ** (0.5 * (n - 1))
    res = _radial_integral(profile, lambda w: const + w ** (n - 1), cfg)
    return res.scaled(unit_sphere_measure(n))


def limit_energy(profile: RadialProfile, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """lambda -> 0+ limit of the quasiradial energy of ``profile``.

    omega_{n-1} int ((n-1)^{(n-1)/2} + |w|^{n-1}) dt.  Only a proper limit
    (strictly below the radial energy) when n >= 4; at n = 3 every lambda
    gives the same energy.
    """
    return limit_energy_result(profile, cfg).value


def log_gradient_integral(profile: RadialProfile,
                          cfg: QuadratureConfig = DEFAULT_CONFIG) -> IntegralResult:
    """int_r^R t^{n-1} |H'/H|^{n-1} dt, the quantity in the Hölder bound."""
    n = profile.n
    return _radial_integral(profile, lambda w: w ** (n - 1), cfg)


# ---------------------------------------------------------------------------
# quasiradial energy

def _lambda_config(lam: float, cfg: QuadratureConfig) -> QuadratureConfig:
    small = min(lam, 1.0 / lam)
    if small < LAMBDA_FLOOR:
        raise ConfigError(
            f"lambda={lam} is too close to 0 or infinity for direct quadrature; "
            "use limit_energy for the lambda -> 0 value",
            field="lambda",
        )
    if small < LAMBDA_TIGHT:
        return cfg.tightened(LAMBDA_TIGHTEN)
    return cfg


def _sphere_y_integrand(w2: float, lam: float, n: int):
    power = 0.5 * (n - 1)
    lam2 = lam * lam

    def f(y):
        y2 = y * y
        one_y2 = 1.0 + y2
        q = lam * one_y2 / (1.0 + lam2 * y2)
        measure = (y / one_y2) ** (n - 2) / one_y2
        return (w2 + (n - 1) * q * q) ** power * measure

    return f


def _double_integral(profile, inner_for_w2, cfg):
    """int_r^R inner(w(t)^2) dt; also returns the worst inner error estimate."""
    d = profile.domain
    worst = [0.0]

    def outer(t):
        w = np.atleast_1d(np.asarray(profile.log_derivative(t), dtype=float))
        vals = np.empty_like(w)
        for i, wi in enumerate(w):
            res = inner_for_w2(wi * wi)
            vals[i] = res.value
            if res.error_estimate > worst[0]:
                worst[0] = res.error_estimate
        return vals

    res = integrate_interval(outer, d.inner, d.outer, cfg)
    return res, worst[0]


def quasiradial_energy(smap: SeparableMap, cfg: QuadratureConfig = DEFAULT_CONFIG) -> EnergyReport:
    """Dirichlet-type energy of H(|x|) Phi^lambda(x/|x|).

    2^{n-1} omega_{n-2} int_r^R int_0^inf
        (w^2 + (n-1) lam^2 (1+y^2)^2/(1+lam^2 y^2)^2)^{(n-1)/2} y^{n-2}/(1+y^2)^{n-1} dy dt

    The reported quadrature error is the outer estimate plus (R - r) times the
    worst inner estimate, both scaled by the prefactor.
    """
    profile, lam = smap.profile, smap.lam
    n = profile.n
    run_cfg = _lambda_config(lam, cfg)

    def inner(w2):
        return integrate_semi_axis(_sphere_y_integrand(w2, lam, n), run_cfg)

    res, worst = _double_integral(profile, inner, run_cfg)
    scale = 2.0 ** (n - 1) * unit_sphere_measure(n - 1)
    error = scale * (res.error_estimate + profile.domain.width * worst)
    return _report(res.value * scale, dirichlet_infimum(profile.domain, profile.target),
                   error, profile, **{"lambda": lam})


def quasiradial_energy_zonal(smap: SeparableMap,
                             cfg: QuadratureConfig = DEFAULT_CONFIG) -> EnergyReport:
    """Same energy evaluated in (t, theta) form; an independent cross-check."""
    profile, lam = smap.profile, smap.lam
    n = profile.n
    run_cfg = _lambda_config(lam, cfg)
    power = 0.5 * (n - 1)

    def inner(w2):
        return integrate_zonal(
            lambda th: (w2 + conformal_gradient_norm_sq(th, lam, n)) ** power, n, run_cfg)

    res, worst = _double_integral(profile, inner, run_cfg)
    error = res.error_estimate + profile.domain.width * worst
    return _report(res.value, dirichlet_infimum(profile.domain, profile.target),
                   error, profile, **{"lambda": lam})


def combined_energy_separable(a: float, b: float, smap: SeparableMap,
                              cfg: QuadratureConfig = DEFAULT_CONFIG) -> EnergyReport:
    """Combined energy E[a, b] of a separable map.

    The sphere term is a^2 (R - r) times the conformal sphere energy, the
    radial term b^2 omega_{n-1} int t^{n-1}|H'/H|^{n-1} dt.
    """
    if not (a > 0 and b > 0):
        raise ConfigError("weights a and b must be positive", field="a" if not a > 0 else "b")
    profile = smap.profile
    n = profile.n
    sphere = sphere_conformal_energy(smap.lam, n, cfg)
    radial = log_gradient_integral(profile, cfg)
    omega = unit_sphere_measure(n)
    width = profile.domain.width
    energy = a * a * width * sphere.value + b * b * omega * radial.value
    error = a * a * width * sphere.error_estimate + b * b * omega * radial.error_estimate
    bound = combined_lower_bound(a, b, profile.domain, profile.target)
    return _report(energy, bound, error, profile, **{"lambda": smap.lam, "a": a, "b": b})


def energy_tolerance(report: EnergyReport, cfg: QuadratureConfig = DEFAULT_CONFIG,
                     extra: Optional[float] = None) -> float:
    """Absolute slack used when comparing ``report`` against a constant."""
    slack = max(report.quadrature_error, cfg.rel_tol * abs(report.energy), cfg.abs_tol)
    return slack if extra is None else slack + extra
