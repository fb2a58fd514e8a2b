"""Space curves, the Frenet apparatus and related curve invariants."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np

from .errors import (
    CurvatureVanishes,
    NotArcLength,
    NotSpherical,
    SingularParametrization,
)
from .fitting import fit_direction_to_circle
from .numkit import (
    DEFAULT_TOL,
    CumulativeIntegral,
    Interval,
    Tolerances,
    fd_derive,
    invert_monotone,
)

ARCLENGTH_TOL = 1e-6


@dataclass(frozen=True)
class Curve:
    """A smooth map from ``domain`` into R^3.

    ``derivs`` holds optional analytic derivatives of orders 1, 2, 3 (a
    prefix; missing orders fall back to central differences of the highest
    analytic one). The position formula is assumed to extend a little past
    the domain so difference stencils at the ends stay valid.
    """

    position: Callable[[float], np.ndarray]
    domain: Interval
    derivs: Tuple[Callable[[float], np.ndarray], ...] = ()
    arclength: bool = False
    name: str = "custom"
    params: dict = field(default_factory=dict, compare=False)
    # parameter of the source curve, for reparametrized curves
    param_of: Optional[Callable[[float], float]] = field(default=None, compare=False)

    def __call__(self, s: float) -> np.ndarray:
        return np.asarray(self.position(s), dtype=float)

    def derivative(self, s: float, order: int, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
        if order <= len(self.derivs):
            return np.asarray(self.derivs[order - 1](s), dtype=float)
        base = len(self.derivs)
        g = self.position if base == 0 else self.derivs[base - 1]
        return fd_derive(lambda x: np.asarray(g(x), dtype=float), s, order - base,
                         tol.step(order - base))

    def contains(self, s: float, slack: float = 1e-9) -> bool:
        return self.domain[0] - slack <= s <= self.domain[1] + slack

    def sample_params(self, count: int, inset: float = 0.01) -> np.ndarray:
        lo, hi = self.domain
        pad = inset * (hi - lo)
        return np.linspace(lo + pad, hi - pad, count)


@dataclass(frozen=True)
class FrenetApparatus:
    t: np.ndarray
    n: np.ndarray
    b: np.ndarray
    kappa: float
    tau: float


def frenet_apparatus(c: Curve, s: float, tol: Tolerances = DEFAULT_TOL) -> FrenetApparatus:
    """Tangent, normal, binormal, curvature and torsion at arc length s.

    The torsion is <n', b> with n' the derivative of alpha''/|alpha''|,
    i.e. n' = (alpha''' - <n, alpha'''> n) / kappa.
    """
    d1 = c.derivative(s, 1, tol)
    speed = float(np.linalg.norm(d1))
    if abs(speed - 1.0) > ARCLENGTH_TOL:
        raise NotArcLength(f"|alpha'({s})| = {speed}")
    d2 = c.derivative(s, 2, tol)
    kappa = float(np.linalg.norm(d2))
    if kappa < tol.curvature_floor:
        raise CurvatureVanishes(f"kappa({s}) = {kappa:.3g} below floor")
    t = d1 / speed
    n = d2 - np.dot(d2, t) * t
    n = n / np.linalg.norm(n)
    b = np.cross(t, n)
    d3 = c.derivative(s, 3, tol)
    n_prime = (d3 - np.dot(n, d3) * n) / kappa
    tau = float(np.dot(n_prime, b))
    return FrenetApparatus(t, n, b, kappa, tau)


def _chain_rule(c: Curve, t: float, tol: Tolerances):
    """Arc-length derivatives of c at parameter t, orders 1-3."""
    c1, c2, c3 = (c.derivative(t, k, tol) for k in (1, 2, 3))
    sigma = float(np.linalg.norm(c1))
    T = c1 / sigma
    dsigma = float(np.dot(T, c2))
    P = c2 - dsigma * T
    dT = P / sigma
    dP = c3 - (np.dot(dT, c2) + np.dot(T, c3)) * T - dsigma * dT
    a2 = P / sigma**2
    a3 = (dP / sigma**2 - 2 * P * dsigma / sigma**3) / sigma
    return T, a2, a3


def arclength_reparam(c: Curve, tol: Tolerances = DEFAULT_TOL, panels: int = 1024,
                      check_samples: int = 2048) -> Curve:
    """Reparametrize a regular curve by arc length on [0, L].

    Arc length comes from a tabulated cumulative integral of the speed; s -> t
    is inverted per call (panel lookup, bracketed root, Newton polish) so the
    result is smooth to rounding. Derivatives are carried over by the chain
    rule from whatever derivatives ``c`` provides.
    """
    t0, t1 = c.domain
    grid = np.linspace(t0, t1, check_samples)
    speeds = np.array([np.linalg.norm(c.derivative(t, 1, tol)) for t in grid])
    if speeds.min() < 1e-9:
        raise SingularParametrization(f"speed {speeds.min():.3g} near t={grid[speeds.argmin()]}")

    def speed(t):
        return float(np.linalg.norm(c.derivative(t, 1, tol)))

    length = CumulativeIntegral(speed, t0, t1, t0, panels=panels, tol=tol.quad_tol)
    cum = np.array([float(x) for x in length._cum])
    total = float(cum[-1])

    @lru_cache(maxsize=8192)
    def param(s: float) -> float:
        if 0.0 <= s <= total:
            i = int(np.clip(np.searchsorted(cum, s, side="right") - 1, 0, panels - 1))
            t = invert_monotone(length, s, (length.edges[i], length.edges[i + 1]),
                                tol=tol.root_tol, check=False)
            polish = 2
        else:
            t = t0 + s / speed(t0) if s < 0 else t1 + (s - total) / speed(t1)
            polish = 6
        for _ in range(polish):
            t = t - (float(length(t)) - s) / speed(t)
        return t

    def pos(s):
        return c(param(float(s)))

    @lru_cache(maxsize=8192)
    def jet(s: float):
        return _chain_rule(c, param(s), tol)

    def d1(s):
        return jet(float(s))[0]

    def d2(s):
        return jet(float(s))[1]

    def d3(s):
        return jet(float(s))[2]

    return Curve(pos, (0.0, total), (d1, d2, d3), arclength=True,
                 name=c.name, params=dict(c.params), param_of=param)


def geodesic_curvature_spherical(c: Curve, s: float, tol: Tolerances = DEFAULT_TOL) -> float:
    """kappa_g = <alpha'', alpha x alpha'> for an arc-length curve on S^2."""
    a0 = c(s)
    if abs(np.linalg.norm(a0) - 1.0) > ARCLENGTH_TOL:
        raise NotSpherical(f"|alpha({s})| = {np.linalg.norm(a0)}")
    a1 = c.derivative(s, 1, tol)
    if abs(np.linalg.norm(a1) - 1.0) > ARCLENGTH_TOL:
        raise NotArcLength(f"|alpha'({s})| = {np.linalg.norm(a1)}")
    a2 = c.derivative(s, 2, tol)
    # identities forced by |alpha| = |alpha'| = 1
    if abs(np.dot(a2, a1)) > 1e-5 or abs(np.dot(a2, a0) + 1.0) > 1e-5:
        raise NotSpherical(f"curve leaves the sphere near s={s}")
    return float(np.dot(a2, np.cross(a0, a1)))


@dataclass(frozen=True)
class HelixTest:
    is_helix: bool
    axis: Optional[np.ndarray]
    theta: Optional[float]
    max_dev: float
    lancret_dev: float
    lancret_constant: bool


def helix_test(c: Curve, samples: int = 100, tol: Tolerances = DEFAULT_TOL) -> HelixTest:
    """Decide whether the binormal keeps a constant angle with some axis.

    The axis comes from the circle fit of the sampled binormals. The Lancret
    ratio tau/kappa is reported alongside but does not drive the verdict.
    """
    frames = [frenet_apparatus(c, s, tol) for s in c.sample_params(samples)]
    binormals = np.array([f.b for f in frames])
    fit = fit_direction_to_circle(binormals, tol)
    dots = binormals @ fit.axis
    max_dev = float(np.max(np.abs(np.abs(dots) - math.cos(fit.theta))))
    ratios = np.array([f.tau / f.kappa for f in frames])
    lancret_dev = float(ratios.max() - ratios.min())
    return HelixTest(
        is_helix=max_dev <= tol.angle_tol,
        axis=fit.axis,
        theta=fit.theta,
        max_dev=max_dev,
        lancret_dev=lancret_dev,
        lancret_constant=lancret_dev <= tol.angle_tol * max(1.0, float(np.abs(ratios).max())),
    )
