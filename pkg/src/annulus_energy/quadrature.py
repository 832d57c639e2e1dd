"""Deterministic adaptive quadrature.

Globally adaptive bisection driven by the embedded 7-point Gauss / 15-point
Kronrod pair.  The error estimate of a panel is |K15 - G7|, the K15 value is
kept.  Integrands are called with a numpy array of the 15 interior nodes of a
panel and must return an array of the same shape; no endpoint is ever
sampled, so integrands with removable or integrable endpoint behaviour are
safe.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .errors import ConfigError, DomainError, NonConvergence
from .geometry import unit_sphere_measure

_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate((-_XGK[:-1], [0.0], _XGK[-2::-1]))
KRONROD_WEIGHTS = np.concatenate((_WGK[:-1], [_WGK[-1]], _WGK[-2::-1]))
GAUSS_WEIGHTS = np.zeros(15)
# Gauss nodes are the odd-indexed Kronrod abscissae (xgk[1], xgk[3], ...)
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]
GAUSS_WEIGHTS[[13, 11, 9]] = _WG[:3]

SemiInfiniteTransform = Literal["rational", "exponential"]


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and limits for every integration in the package.

    ``semi_infinite_transform`` selects the map of (0, inf) onto a finite
    interval: ``"rational"`` uses y = u/(1-u) on (0, 1), ``"exponential"``
    uses y = tan(u) on (0, pi/2).
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 2000
    semi_infinite_transform: SemiInfiniteTransform = "rational"

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ConfigError(f"rel_tol must be positive, got {self.rel_tol}", field="rel_tol")
        if not self.abs_tol > 0:
            raise ConfigError(f"abs_tol must be positive, got {self.abs_tol}", field="abs_tol")
        if int(self.max_subdivisions) != self.max_subdivisions or self.max_subdivisions < 1:
            raise ConfigError("max_subdivisions must be a positive integer",
                              field="max_subdivisions")
        if self.semi_infinite_transform not in ("rational", "exponential"):
            raise ConfigError(
                f"unknown semi_infinite_transform {self.semi_infinite_transform!r}",
                field="semi_infinite_transform",
            )

    def tightened(self, factor: float) -> "QuadratureConfig":
        """Copy with both tolerances divided by ``factor``."""
        return QuadratureConfig(self.rel_tol / factor, self.abs_tol / factor,
                                self.max_subdivisions, self.semi_infinite_transform)


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error_estimate: float
    subdivisions_used: int

    def scaled(self, factor: float) -> "IntegralResult":
        return IntegralResult(self.value * factor, self.error_estimate * abs(factor),
                              self.subdivisions_used)


def _panel(f, a, b):
    half = 0.5 * (b - a)
    center = 0.5 * (a + b)
    x = center + half * NODES
    fx = np.asarray(f(x), dtype=float)
    if fx.shape != x.shape:
        fx = np.broadcast_to(fx, x.shape)
    if not np.all(np.isfinite(fx)):
        bad = int(np.flatnonzero(~np.isfinite(fx))[0])
        raise DomainError(
            f"integrand returned {fx[bad]!r} at x={x[bad]!r}", abscissa=float(x[bad])
        )
    kronrod = half * float(np.dot(KRONROD_WEIGHTS, fx))
    gauss = half * float(np.dot(GAUSS_WEIGHTS, fx))
    return kronrod, abs(kronrod - gauss)


def integrate_interval(f: Callable, a: float, b: float,
                       cfg: QuadratureConfig = DEFAULT_CONFIG) -> IntegralResult:
    """Integrate ``f`` over (a, b) to max(rel_tol*|I|, abs_tol).

    Raises NonConvergence (carrying the best estimate) when the panel budget
    ``cfg.max_subdivisions`` is exhausted, and DomainError on a non-finite
    sample.
    """
    a, b = float(a), float(b)
    if not a < b:
        raise ConfigError(f"integration requires a < b, got a={a}, b={b}", field="interval")

    value, err = _panel(f, a, b)
    # heap of (-error, insertion order, a, b, value, error); the counter keeps
    # tie-breaking, and therefore the result, deterministic
    heap = [(-err, 0, a, b, value, err)]
    counter = 1
    frozen_value, frozen_err = [], []
    running, running_err = value, err

    while True:
        if running_err <= 2.0 * max(cfg.rel_tol * abs(running), cfg.abs_tol):
            # running sums drift; confirm with exact summation before stopping
            total = math.fsum([item[4] for item in heap] + frozen_value)
            total_err = math.fsum([item[5] for item in heap] + frozen_err)
            running, running_err = total, total_err
            if total_err <= max(cfg.rel_tol * abs(total), cfg.abs_tol):
                return IntegralResult(total, total_err, len(heap) + len(frozen_value))
        if not heap or len(heap) + len(frozen_value) >= cfg.max_subdivisions:
            total = math.fsum([item[4] for item in heap] + frozen_value)
            total_err = math.fsum([item[5] for item in heap] + frozen_err)
            raise NonConvergence(
                f"quadrature on ({a}, {b}) did not reach tolerance within "
                f"{cfg.max_subdivisions} subdivisions",
                estimate=total, error=total_err,
                diagnostics={"panels": len(heap) + len(frozen_value)},
            )
        _, _, pa, pb, pv, pe = heapq.heappop(heap)
        mid = 0.5 * (pa + pb)
        if not pa < mid < pb:
            # panel at floating-point resolution: keep its contribution as is
            frozen_value.append(pv)
            frozen_err.append(pe)
            continue
        running -= pv
        running_err -= pe
        for lo, hi in ((pa, mid), (mid, pb)):
            v, e = _panel(f, lo, hi)
            heapq.heappush(heap, (-e, counter, lo, hi, v, e))
            counter += 1
            running += v
            running_err += e


def integrate_semi_axis(f: Callable, cfg: QuadratureConfig = DEFAULT_CONFIG) -> IntegralResult:
    """Integrate ``f`` over (0, inf) after mapping the axis onto a finite interval."""
    if cfg.semi_infinite_transform == "rational":
        def g(u):
            v = 1.0 - u
            return f(u / v) / (v * v)
        return integrate_interval(g, 0.0, 1.0, cfg)

    def g(u):
        c = np.cos(u)
        return f(np.tan(u)) / (c * c)
    return integrate_interval(g, 0.0, 0.5 * math.pi, cfg)


def integrate_zonal(g: Callable, n: int, cfg: QuadratureConfig = DEFAULT_CONFIG) -> IntegralResult:
    """Integral over S^{n-1} of a function of the meridian angle alone.

    Uses d sigma = omega_{n-2} sin^{n-2}(theta) dtheta ds.
    """
    weight = unit_sphere_measure(n - 1)

    def integrand(theta):
        return g(theta) * np.sin(theta) ** (n - 2)

    return integrate_interval(integrand, 0.0, math.pi, cfg).scaled(weight)
