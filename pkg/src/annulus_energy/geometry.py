"""Annulus and sphere primitives.

Points of the unit sphere S^{n-1} are handled in zonal coordinates
xi = (cos theta, s sin theta), with theta the meridian angle measured from the
north pole and s a unit vector of R^{n-1} (the longitude).  The conformal
dilation Phi^lambda is the conjugate of x -> lambda x under stereographic
projection through the south pole; it only moves the meridian angle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError

MAX_DIMENSION = 30

# Closed-form pole values are used inside this band around theta = 0 and pi.
POLE_GUARD = 1e-8

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma(x: float) -> float:
    """Gamma function by the Lanczos approximation (g=7, 9 terms).

    Relative error stays below 1e-13 on [0.5, 20], which covers every
    half-integer argument needed for dimensions up to ``MAX_DIMENSION``.
    """
    x = float(x)
    if x < 0.5:
        # reflection formula
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    x -= 1.0
    acc = _LANCZOS_COEF[0]
    for k in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[k] / (x + k)
    t = x + _LANCZOS_G + 0.5
    # split the power so large arguments do not overflow before exp(-t)
    half = t ** (0.5 * (x + 0.5))
    return math.sqrt(2.0 * math.pi) * half * (half * math.exp(-t)) * acc


def _check_dimension(n, minimum):
    if isinstance(n, bool) or int(n) != n:
        raise ConfigError(f"dimension n must be an integer, got {n!r}", field="n")
    n = int(n)
    if n < minimum:
        raise ConfigError(f"dimension n must be >= {minimum}, got {n}", field="n")
    if n > MAX_DIMENSION:
        raise ConfigError(
            f"dimension n must be <= {MAX_DIMENSION}, got {n}", field="n"
        )
    return n


@dataclass(frozen=True)
class Annulus:
    """The shell {x in R^n : inner < |x| < outer}."""

    n: int
    inner: float
    outer: float

    def __post_init__(self):
        object.__setattr__(self, "n", _check_dimension(self.n, 3))
        inner, outer = float(self.inner), float(self.outer)
        if not (math.isfinite(inner) and math.isfinite(outer)):
            raise ConfigError("annulus radii must be finite", field="inner")
        if not inner > 0:
            raise ConfigError(f"inner radius must be positive, got {inner}", field="inner")
        if not inner < outer:
            raise ConfigError(
                f"inner radius must be < outer radius, got inner={inner}, outer={outer}",
                field="outer",
            )
        object.__setattr__(self, "inner", inner)
        object.__setattr__(self, "outer", outer)

    @property
    def width(self) -> float:
        return self.outer - self.inner

    @property
    def log_ratio(self) -> float:
        return math.log(self.outer / self.inner)


def unit_sphere_measure(n: int) -> float:
    """Surface measure omega_{n-1} of the unit sphere in R^n."""
    n = _check_dimension(n, 2)
    return 2.0 * math.pi ** (0.5 * n) / gamma(0.5 * n)


def zonal_measure_ratio(n: int) -> float:
    """omega_{n-2} / omega_{n-1}, i.e. 1 / int_0^pi sin^{n-2}(theta) dtheta."""
    n = _check_dimension(n, 3)
    return gamma(0.5 * n) / (math.sqrt(math.pi) * gamma(0.5 * (n - 1)))


def meridian_dilation(theta, lam):
    """Meridian angle 2 arctan(lam tan(theta/2)) of the dilated point.

    Written with atan2 on half angles so theta = pi maps to pi exactly
    instead of going through tan overflow.  Accepts scalars or arrays.
    """
    if not lam > 0:
        raise ConfigError(f"lambda must be positive, got {lam}", field="lambda")
    theta = np.asarray(theta, dtype=float)
    half = 0.5 * theta
    out = 2.0 * np.arctan2(lam * np.sin(half), np.cos(half))
    out = np.where(theta == math.pi, math.pi, out)
    return out if out.ndim else float(out)


def conformal_gradient_norm_sq(theta, lam, n):
    """Squared Hilbert-Schmidt norm (n-1) sin^2(phi)/sin^2(theta) of D Phi^lambda.

    With y = tan(theta/2), sin(phi)/sin(theta) = lam (1+y^2)/(1+lam^2 y^2),
    which in half-angle form is lam / (cos^2(theta/2) + lam^2 sin^2(theta/2)).
    That form has no removable singularity; the pole limits (n-1) lam^2 and
    (n-1)/lam^2 are still returned verbatim inside the guard band.
    """
    if not lam > 0:
        raise ConfigError(f"lambda must be positive, got {lam}", field="lambda")
    n = _check_dimension(n, 3)
    theta = np.asarray(theta, dtype=float)
    c = np.cos(0.5 * theta)
    s = np.sin(0.5 * theta)
    ratio = lam / (c * c + lam * lam * s * s)
    out = (n - 1) * ratio * ratio
    out = np.where(theta < POLE_GUARD, (n - 1) * lam * lam, out)
    out = np.where(theta > math.pi - POLE_GUARD, (n - 1) / (lam * lam), out)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class ZonalPoint:
    """Point (cos theta, s sin theta) of S^{n-1}; ``longitude`` is s in S^{n-2}."""

    theta: float
    longitude: np.ndarray = field(compare=False)

    def __post_init__(self):
        theta = float(self.theta)
        if not 0.0 <= theta <= math.pi:
            raise ConfigError(f"theta must lie in [0, pi], got {theta}", field="theta")
        s = np.array(self.longitude, dtype=float).reshape(-1)
        if s.size < 2:
            raise ConfigError("longitude must live in R^{n-1} with n >= 3", field="longitude")
        if abs(np.linalg.norm(s) - 1.0) > 1e-12:
            raise ConfigError("longitude must be a unit vector", field="longitude")
        s.flags.writeable = False
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "longitude", s)

    @property
    def dim(self) -> int:
        """Ambient dimension n."""
        return self.longitude.size + 1

    def to_ambient(self) -> np.ndarray:
        return np.concatenate(([math.cos(self.theta)], math.sin(self.theta) * self.longitude))

    @classmethod
    def from_ambient(cls, x) -> "ZonalPoint":
        x = np.asarray(x, dtype=float)
        x = x / np.linalg.norm(x)
        tail = x[1:]
        rho = np.linalg.norm(tail)
        theta = math.atan2(rho, x[0])
        if rho == 0.0:
            # poles: longitude is arbitrary
            s = np.zeros_like(tail)
            s[0] = 1.0
        else:
            s = tail / rho
        return cls(theta, s)


@dataclass(frozen=True)
class PointAtInfinity:
    """The added point of the extended space R^{dim} u {infinity}."""

    dim: int


def stereographic_project(xi: ZonalPoint):
    """Projection through the south pole: returns s tan(theta/2), or infinity."""
    if xi.theta == math.pi:
        return PointAtInfinity(xi.dim - 1)
    return xi.longitude * math.tan(0.5 * xi.theta)


def stereographic_inverse(p) -> ZonalPoint:
    """Inverse of :func:`stereographic_project`."""
    if isinstance(p, PointAtInfinity):
        s = np.zeros(p.dim)
        s[0] = 1.0
        return ZonalPoint(math.pi, s)
    p = np.asarray(p, dtype=float)
    scale = float(np.max(np.abs(p)))
    if not math.isfinite(scale):
        raise ConfigError("use PointAtInfinity for the point at infinity", field="p")
    if scale == 0.0:
        s = np.zeros(p.size)
        s[0] = 1.0
        return ZonalPoint(0.0, s)
    # rescale first so squaring tiny or huge coordinates cannot under/overflow
    u = p / scale
    norm_u = float(np.linalg.norm(u))
    return ZonalPoint(2.0 * math.atan(scale * norm_u), u / norm_u)


def conformal_map_point(xi: ZonalPoint, lam: float) -> ZonalPoint:
    """Phi^lambda(xi): dilate the meridian angle, keep the longitude."""
    return ZonalPoint(meridian_dilation(xi.theta, lam), xi.longitude)


def conformal_map_point_stereographic(xi: ZonalPoint, lam: float) -> ZonalPoint:
    """Phi^lambda built literally as Pi^{-1}(lam * Pi(xi))."""
    if not lam > 0:
        raise ConfigError(f"lambda must be positive, got {lam}", field="lambda")
    p = stereographic_project(xi)
    if isinstance(p, PointAtInfinity):
        return stereographic_inverse(p)
    return stereographic_inverse(lam * p)
