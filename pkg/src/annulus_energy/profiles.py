"""Radial profiles H: [r, R] -> [r_*, R_*].

A profile fixes the modulus |h(x)| = H(|x|) of a radial or quasiradial map.
All profiles evaluate on scalars or numpy arrays and expose the log-derivative
w(t) = t H'(t) / H(t), the quantity every energy integrand depends on.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np
from scipy.interpolate import CubicHermiteSpline, CubicSpline

from .errors import ConfigError
from .geometry import Annulus

INCREASING = "increasing"
DECREASING = "decreasing"


def _as_output(x):
    return x if np.ndim(x) else float(x)


def _check_pair(domain: Annulus, target: Annulus):
    if domain.n != target.n:
        raise ConfigError(
            f"domain and target dimensions differ ({domain.n} vs {target.n})", field="n"
        )


class RadialProfile:
    """Base class: strictly monotone map of [r, R] onto [r_*, R_*].

    Subclasses implement :meth:`value` and :meth:`deriv`.
    """

    tag = "profile"

    def __init__(self, domain: Annulus, target: Annulus, orientation: str = INCREASING):
        _check_pair(domain, target)
        if orientation not in (INCREASING, DECREASING):
            raise ConfigError(f"unknown orientation {orientation!r}", field="orientation")
        self.domain = domain
        self.target = target
        self.orientation = orientation

    @property
    def n(self) -> int:
        return self.domain.n

    def value(self, t):
        raise NotImplementedError

    def deriv(self, t):
        raise NotImplementedError

    def log_derivative(self, t):
        """w(t) = t H'(t) / H(t)."""
        t = np.asarray(t, dtype=float)
        return _as_output(t * np.asarray(self.deriv(t)) / np.asarray(self.value(t)))

    def __call__(self, t):
        return self.value(t)

    def __repr__(self):
        d, g = self.domain, self.target
        return (f"{type(self).__name__}(n={d.n}, r={d.inner}, R={d.outer}, "
                f"r_star={g.inner}, R_star={g.outer}, {self.orientation})")


def log_derivative(profile: RadialProfile, t):
    return profile.log_derivative(t)


def alpha(t, domain: Annulus):
    """Normalised radial coordinate, 0 at t = r and 1 at t = R.

    alpha(t) = R^p (t^p - r^p) / (t^p (R^p - r^p)) with p = 1/(n-2).
    """
    t_arr = np.asarray(t, dtype=float)
    r, R = domain.inner, domain.outer
    if np.any(t_arr < r) or np.any(t_arr > R):
        raise ConfigError(f"alpha is defined on [{r}, {R}] only", field="t")
    p = 1.0 / (domain.n - 2)
    Rp, rp = R ** p, r ** p
    return _as_output(Rp * (1.0 - rp * t_arr ** (-p)) / (Rp - rp))


def _alpha_prime(t, domain: Annulus):
    r, R = domain.inner, domain.outer
    p = 1.0 / (domain.n - 2)
    Rp, rp = R ** p, r ** p
    return Rp * rp * p * t ** (-p - 1.0) / (Rp - rp)


class BoundaryProfile(RadialProfile):
    """H_1(t) = r_* (R_*/r_*)^alpha(t) or H_2(t) = R_* (r_*/R_*)^alpha(t).

    These attain the sharp bounds; t^{(n-1)/(n-2)} H'/H is constant for both.
    """

    def __init__(self, domain, target, orientation=INCREASING):
        super().__init__(domain, target, orientation)
        self.tag = "boundary-" + orientation
        self._log_ratio = target.log_ratio

    def value(self, t):
        a = np.asarray(alpha(t, self.domain))
        g = self.target
        if self.orientation == INCREASING:
            return _as_output(g.inner * np.exp(self._log_ratio * a))
        return _as_output(g.outer * np.exp(-self._log_ratio * a))

    def _signed_slope(self, t):
        s = self._log_ratio * _alpha_prime(t, self.domain)
        return s if self.orientation == INCREASING else -s

    def deriv(self, t):
        t = np.asarray(t, dtype=float)
        return _as_output(np.asarray(self.value(t)) * self._signed_slope(t))

    def log_derivative(self, t):
        t = np.asarray(t, dtype=float)
        return _as_output(t * self._signed_slope(t))


def make_boundary_profile(domain: Annulus, target: Annulus,
                          orientation: str = INCREASING) -> BoundaryProfile:
    return BoundaryProfile(domain, target, orientation)


def _hyman_slopes(t, H):
    """Cubic-spline slopes clipped by Hyman's filter so the Hermite
    interpolant stays monotone; keeps fourth-order accuracy on smooth data."""
    if t.size == 2:
        s = (H[1] - H[0]) / (t[1] - t[0])
        return np.array([s, s])
    secant = np.diff(H) / np.diff(t)
    slopes = CubicSpline(t, H, bc_type="not-a-knot")(t, 1)
    sign = np.sign(secant[0])
    bound = np.empty_like(slopes)
    bound[0] = 3.0 * abs(secant[0])
    bound[-1] = 3.0 * abs(secant[-1])
    bound[1:-1] = 3.0 * np.minimum(np.abs(secant[:-1]), np.abs(secant[1:]))
    mag = np.clip(sign * slopes, 0.0, bound)
    return sign * mag


class TabulatedProfile(RadialProfile):
    """Monotone piecewise-cubic Hermite interpolant through (t_i, H_i) knots."""

    def __init__(self, t, H, domain, target):
        t = np.array(t, dtype=float)
        H = np.array(H, dtype=float)
        if t.ndim != 1 or t.shape != H.shape or t.size < 2:
            raise ConfigError("knots must be two equal-length 1-D sequences of length >= 2",
                              field="knots")
        if not np.all(np.isfinite(t)) or not np.all(np.isfinite(H)):
            raise ConfigError("knots must be finite", field="knots")
        if not np.all(np.diff(t) > 0):
            raise ConfigError("knot abscissas must be strictly increasing", field="knots")
        dH = np.diff(H)
        if np.all(dH > 0):
            orientation = INCREASING
            ends = (target.inner, target.outer)
        elif np.all(dH < 0):
            orientation = DECREASING
            ends = (target.outer, target.inner)
        else:
            raise ConfigError("knot ordinates must be strictly monotone", field="knots")
        super().__init__(domain, target, orientation)
        span_tol = 1e-12
        if (abs(t[0] - domain.inner) > span_tol * domain.outer
                or abs(t[-1] - domain.outer) > span_tol * domain.outer):
            raise ConfigError(
                f"knot abscissas must span [{domain.inner}, {domain.outer}]", field="knots"
            )
        if (abs(H[0] - ends[0]) > span_tol * target.outer
                or abs(H[-1] - ends[1]) > span_tol * target.outer):
            raise ConfigError(
                f"knot ordinates must span [{target.inner}, {target.outer}]", field="knots"
            )
        t[0], t[-1] = domain.inner, domain.outer
        H[0], H[-1] = ends
        self.tag = "tabulated"
        self.knots_t = t
        self.knots_H = H
        self._spline = CubicHermiteSpline(t, H, _hyman_slopes(t, H))
        self._dspline = self._spline.derivative()

    def value(self, t):
        return _as_output(self._spline(np.asarray(t, dtype=float)))

    def deriv(self, t):
        return _as_output(self._dspline(np.asarray(t, dtype=float)))


def make_tabulated_profile(knots, domain: Annulus, target: Annulus) -> TabulatedProfile:
    """Build a profile from a sequence of (t, H) pairs."""
    arr = np.asarray(knots, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ConfigError("knots must be a sequence of (t, H) pairs", field="knots")
    return TabulatedProfile(arr[:, 0], arr[:, 1], domain, target)


def load_tabulated_profile(path, domain: Annulus, target: Annulus) -> TabulatedProfile:
    """Read a two-column CSV with header ``t,H``."""
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(row for row in fh if not row.startswith("#"))
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["t", "H"]:
            raise ConfigError(f"{path}: expected header 't,H'", field="tabulated")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                rows.append((float(row[0]), float(row[1])))
            except (ValueError, IndexError):
                raise ConfigError(f"{path}:{lineno}: malformed row {row!r}",
                                  field="tabulated") from None
    return make_tabulated_profile(rows, domain, target)


def save_tabulated_profile(path, t, H):
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["t", "H"])
        for ti, Hi in zip(np.asarray(t, dtype=float), np.asarray(H, dtype=float)):
            writer.writerow([format(ti, ".17g"), format(Hi, ".17g")])


class InvertedProfile(RadialProfile):
    """c / H(t): the profile of the inversion h -> c h / |h|^2.

    Maps onto [c/R_*, c/r_*] and reverses orientation; |w| is unchanged.
    """

    def __init__(self, base: RadialProfile, c: float):
        if not c > 0:
            raise ConfigError(f"inversion constant must be positive, got {c}", field="c")
        tgt = Annulus(base.n, c / base.target.outer, c / base.target.inner)
        flipped = DECREASING if base.orientation == INCREASING else INCREASING
        super().__init__(base.domain, tgt, flipped)
        self.base = base
        self.c = float(c)
        self.tag = f"inverted({base.tag})"

    def value(self, t):
        return _as_output(self.c / np.asarray(self.base.value(t)))

    def deriv(self, t):
        H = np.asarray(self.base.value(t))
        return _as_output(-self.c * np.asarray(self.base.deriv(t)) / (H * H))

    def log_derivative(self, t):
        return _as_output(-np.asarray(self.base.log_derivative(t)))


def invert_profile(profile: RadialProfile, c: float) -> InvertedProfile:
    return InvertedProfile(profile, c)


def holder_lower_bound(domain: Annulus, target: Annulus) -> float:
    """Sharp lower bound of int_r^R t^{n-1} |H'/H|^{n-1} dt over admissible H."""
    _check_pair(domain, target)
    n = domain.n
    r, R = domain.inner, domain.outer
    p = 1.0 / (n - 2)
    return (target.log_ratio ** (n - 1) / (n - 2) ** (n - 2)
            * R * r / (R ** p - r ** p) ** (n - 2))


def grid(domain: Annulus, count: int, interior: bool = False) -> np.ndarray:
    """Uniform grid on [r, R]; ``interior`` drops the end points."""
    if interior:
        return np.linspace(domain.inner, domain.outer, count + 2)[1:-1]
    return np.linspace(domain.inner, domain.outer, count)


__all__ = [
    "INCREASING", "DECREASING", "RadialProfile", "BoundaryProfile", "TabulatedProfile",
    "InvertedProfile", "alpha", "make_boundary_profile", "make_tabulated_profile",
    "load_tabulated_profile", "save_tabulated_profile", "invert_profile",
    "log_derivative", "holder_lower_bound", "grid",
]
