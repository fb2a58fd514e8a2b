"""Curve factories: circular and generalized helices, plane curves,
circles on the unit sphere, plus a few non-examples used as negative cases."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, Sequence

import numpy as np

from .curve import Curve
from .numkit import DEFAULT_TOL, CumulativeIntegral, Interval, RealFunction, Tolerances

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class HelixSpec:
    """Angle theta of the binormal with the axis and turning profile lambda.

    The horizontal speed is cos(theta) and the vertical speed sin(theta).
    """

    theta: float
    lam: RealFunction

    def __post_init__(self):
        if not 0 < self.theta < math.pi / 2:
            raise ValueError("theta must lie in (0, pi/2)")

    @property
    def horizontal(self) -> float:
        return math.cos(self.theta)

    @property
    def vertical(self) -> float:
        return math.sin(self.theta)


def circular_helix(theta: float, s_range: Interval = (0.0, TWO_PI)) -> Curve:
    """alpha(s) = (cos(theta) cos s, cos(theta) sin s, sin(theta) s)."""
    if not 0 < theta < math.pi / 2:
        raise ValueError("theta must lie in (0, pi/2)")
    a, b = math.cos(theta), math.sin(theta)

    def pos(s):
        return np.array([a * math.cos(s), a * math.sin(s), b * s])

    def d1(s):
        return np.array([-a * math.sin(s), a * math.cos(s), b])

    def d2(s):
        return np.array([-a * math.cos(s), -a * math.sin(s), 0.0])

    def d3(s):
        return np.array([a * math.sin(s), -a * math.cos(s), 0.0])

    return Curve(pos, tuple(s_range), (d1, d2, d3), arclength=True,
                 name="circular-helix", params={"theta": theta})


def generalized_helix(spec: HelixSpec, s_range: Interval, tol: Tolerances = DEFAULT_TOL,
                      panels: int = 256) -> Curve:
    """Helix with planar speed cos(theta) (sin lambda, cos lambda).

    Planar components are integrated from the left end of ``s_range``.
    Only the first derivative is analytic.
    """
    lam = spec.lam
    a, b = spec.horizontal, spec.vertical
    s0, s1 = s_range

    def planar_speed(s):
        L = lam(s)
        return np.array([math.sin(L), math.cos(L)])

    psi = CumulativeIntegral(planar_speed, s0, s1, s0, panels=panels, tol=tol.quad_tol)

    def pos(s):
        xy = psi(s)
        return np.array([a * xy[0], a * xy[1], b * s])

    def d1(s):
        L = lam(s)
        return np.array([a * math.sin(L), a * math.cos(L), b])

    return Curve(pos, (s0, s1), (d1,), arclength=True, name="generalized-helix",
                 params={"theta": spec.theta, "lambda": lam.name})


# turning profiles for generalized helices
def _profile(name, f, d1, d2, d3, domain=(-20.0, 20.0)) -> RealFunction:
    return RealFunction(f, domain, (d1, d2, d3), name=name)


LAMBDAS: Dict[str, Callable[[], RealFunction]] = {
    "-s": lambda: _profile("-s", lambda s: -s, lambda s: -1.0, lambda s: 0.0, lambda s: 0.0),
    "s": lambda: _profile("s", lambda s: s, lambda s: 1.0, lambda s: 0.0, lambda s: 0.0),
    "2s": lambda: _profile("2s", lambda s: 2 * s, lambda s: 2.0, lambda s: 0.0, lambda s: 0.0),
    "s+0.3sin": lambda: _profile(
        "s+0.3sin", lambda s: s + 0.3 * math.sin(s), lambda s: 1 + 0.3 * math.cos(s),
        lambda s: -0.3 * math.sin(s), lambda s: -0.3 * math.cos(s)),
    "s+0.2sin": lambda: _profile(
        "s+0.2sin", lambda s: s + 0.2 * math.sin(s), lambda s: 1 + 0.2 * math.cos(s),
        lambda s: -0.2 * math.sin(s), lambda s: -0.2 * math.cos(s)),
}


def lambda_profile(name: str) -> RealFunction:
    try:
        return LAMBDAS[name]()
    except KeyError:
        raise ValueError(f"unknown lambda profile {name!r}; known: {sorted(LAMBDAS)}") from None


def planar_curve(xy: Sequence[RealFunction], plane_origin=(0.0, 0.0, 0.0),
                 plane_basis=((1.0, 0.0, 0.0), (0.0, 1.0, 0.0)),
                 domain: Interval | None = None, name: str = "planar") -> Curve:
    """Embed the plane curve t -> (x(t), y(t)) into the plane spanned by
    ``plane_basis`` through ``plane_origin``.

    The result is in its own parameter; pass it through arclength_reparam.
    """
    x, y = xy
    e1, e2 = (np.asarray(e, dtype=float) for e in plane_basis)
    gram = np.array([[e1 @ e1, e1 @ e2], [e2 @ e1, e2 @ e2]])
    if not np.allclose(gram, np.eye(2), atol=1e-12):
        raise ValueError("plane_basis must be orthonormal")
    origin = np.asarray(plane_origin, dtype=float)
    if domain is None:
        domain = x.domain

    def pos(t):
        return origin + x(t) * e1 + y(t) * e2

    derivs = []
    for k in range(min(len(x.derivs), len(y.derivs))):
        dx, dy = x.derivs[k], y.derivs[k]
        derivs.append(lambda t, dx=dx, dy=dy: dx(t) * e1 + dy(t) * e2)
    return Curve(pos, tuple(domain), tuple(derivs), name=name)


def circle2d(radius: float = 1.0, domain: Interval = (0.0, TWO_PI)):
    r = radius
    x = RealFunction(lambda t: r * math.cos(t), domain,
                     (lambda t: -r * math.sin(t), lambda t: -r * math.cos(t),
                      lambda t: r * math.sin(t)))
    y = RealFunction(lambda t: r * math.sin(t), domain,
                     (lambda t: r * math.cos(t), lambda t: -r * math.sin(t),
                      lambda t: -r * math.cos(t)))
    return x, y


def parabola2d(domain: Interval = (-1.0, 1.0)):
    x = RealFunction(lambda t: t, domain, (lambda t: 1.0, lambda t: 0.0, lambda t: 0.0))
    y = RealFunction(lambda t: t * t, domain, (lambda t: 2 * t, lambda t: 2.0, lambda t: 0.0))
    return x, y


def ellipse2d(a: float = 2.0, b: float = 1.0, domain: Interval = (0.0, TWO_PI)):
    x = RealFunction(lambda t: a * math.cos(t), domain,
                     (lambda t: -a * math.sin(t), lambda t: -a * math.cos(t),
                      lambda t: a * math.sin(t)))
    y = RealFunction(lambda t: b * math.sin(t), domain,
                     (lambda t: b * math.cos(t), lambda t: -b * math.sin(t),
                      lambda t: -b * math.cos(t)))
    return x, y


PLANES = {
    "xy": ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0)),
    "xz": ((1.0, 0.0, 0.0), (0.0, 0.0, 1.0)),
    "yz": ((0.0, 1.0, 0.0), (0.0, 0.0, 1.0)),
}

SHAPES = {"circle": circle2d, "parabola": parabola2d, "ellipse": ellipse2d}


def spherical_circle(phi: float, s_range: Interval | None = None) -> Curve:
    """Circle of colatitude phi on the unit sphere, by arc length."""
    if not 0 < phi <= math.pi / 2:
        raise ValueError("phi must lie in (0, pi/2]")
    r, h = math.sin(phi), math.cos(phi)
    if s_range is None:
        s_range = (0.0, TWO_PI * r)

    def pos(s):
        u = s / r
        return np.array([r * math.cos(u), r * math.sin(u), h])

    def d1(s):
        u = s / r
        return np.array([-math.sin(u), math.cos(u), 0.0])

    def d2(s):
        u = s / r
        return np.array([-math.cos(u) / r, -math.sin(u) / r, 0.0])

    def d3(s):
        u = s / r
        return np.array([math.sin(u) / r**2, -math.cos(u) / r**2, 0.0])

    return Curve(pos, tuple(s_range), (d1, d2, d3), arclength=True,
                 name="spherical-circle", params={"phi": phi})


def twisted_cubic(t_range: Interval = (-1.0, 1.0)) -> Curve:
    """(t, t^2, t^3): tau/kappa is not constant, so not a helix."""
    return Curve(
        lambda t: np.array([t, t * t, t**3]),
        tuple(t_range),
        (lambda t: np.array([1.0, 2 * t, 3 * t * t]),
         lambda t: np.array([0.0, 2.0, 6 * t]),
         lambda t: np.array([0.0, 0.0, 6.0])),
        name="twisted-cubic",
    )


def spherical_ellipse(a: float = 1.0, b: float = 0.5, height: float = 1.0,
                      t_range: Interval = (0.0, TWO_PI)) -> Curve:
    """Radial projection of an ellipse at the given height onto S^2.

    Its geodesic curvature varies when a != b.
    """
    def raw(t):
        return np.array([a * math.cos(t), b * math.sin(t), height])

    def raw_d1(t):
        return np.array([-a * math.sin(t), b * math.cos(t), 0.0])

    def pos(t):
        u = raw(t)
        return u / np.linalg.norm(u)

    def d1(t):
        u, du = raw(t), raw_d1(t)
        norm = np.linalg.norm(u)
        p = u / norm
        return (du - np.dot(p, du) * p) / norm

    return Curve(pos, tuple(t_range), (d1,), name="spherical-ellipse",
                 params={"a": a, "b": b, "height": height})
