"""Parametric surfaces: the ruled families built on a curve, cones, the
canonical constant angle surface, and their first-order and second-order
differential data."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np

from .curve import ARCLENGTH_TOL, Curve, FrenetApparatus, frenet_apparatus
from .errors import DegenerateNormal, NotArcLength, NotSpherical
from .fitting import canonical_axis
from .numkit import DEFAULT_TOL, CumulativeIntegral, Interval, RealFunction, Tolerances

Vec = np.ndarray
CROSS_FLOOR = 1e-9
DELTA_FLOOR = 1e-18
SECOND_STEP = 1e-4


class Family(str, enum.Enum):
    TANGENT_DEVELOPABLE = "TangentDevelopable"
    NORMAL = "NormalSurface"
    BINORMAL = "BinormalSurface"
    CONE = "Cone"
    THEOREM_A = "TheoremA"
    CUSTOM = "Custom"


RULED = (Family.TANGENT_DEVELOPABLE, Family.NORMAL, Family.BINORMAL)


@dataclass(frozen=True)
class Surface:
    """(s, v) -> R^3 over ``s_range`` x ``v_range``.

    ``partials`` and ``second_partials`` are optional analytic derivative
    suppliers returning (r_s, r_v) and (r_ss, r_sv, r_vv). ``locus`` is a
    function whose zero set is the declared singular locus.
    """

    position: Callable[[float, float], Vec]
    s_range: Interval
    v_range: Interval
    family: Family = Family.CUSTOM
    partials: Optional[Callable[[float, float], Tuple[Vec, Vec]]] = None
    second_partials: Optional[Callable[[float, float], Tuple[Vec, Vec, Vec]]] = None
    locus: Optional[Callable[[float, float], float]] = None
    curve: Optional[Curve] = None
    theta: Optional[float] = None
    eta: Optional[RealFunction] = None
    name: str = "custom"

    def __call__(self, s: float, v: float) -> Vec:
        return np.asarray(self.position(s, v), dtype=float)

    def position_only(self) -> "Surface":
        """Same surface with every derivative left to finite differences."""
        return replace(self, partials=None, second_partials=None)

    def locus_distance(self, s: float, v: float) -> float:
        return math.inf if self.locus is None else abs(self.locus(s, v))

    def first(self, s: float, v: float, tol: Tolerances = DEFAULT_TOL) -> Tuple[Vec, Vec]:
        if self.partials is not None:
            rs, rv = self.partials(s, v)
            return np.asarray(rs, dtype=float), np.asarray(rv, dtype=float)
        h = tol.step(1)
        rs = (self(s + h, v) - self(s - h, v)) / (2 * h)
        rv = (self(s, v + h) - self(s, v - h)) / (2 * h)
        return rs, rv

    def second(self, s: float, v: float, tol: Tolerances = DEFAULT_TOL) -> Tuple[Vec, Vec, Vec]:
        if self.second_partials is not None:
            return tuple(np.asarray(x, dtype=float) for x in self.second_partials(s, v))
        if self.partials is not None:
            h = tol.step(1)
            rs_p, rv_p = self.first(s + h, v, tol)
            rs_m, rv_m = self.first(s - h, v, tol)
            rs_vp, rv_vp = self.first(s, v + h, tol)
            rs_vm, rv_vm = self.first(s, v - h, tol)
            rss = (rs_p - rs_m) / (2 * h)
            rsv = 0.5 * ((rv_p - rv_m) + (rs_vp - rs_vm)) / (2 * h)
            rvv = (rv_vp - rv_vm) / (2 * h)
            return rss, rsv, rvv
        h = SECOND_STEP
        r0 = self(s, v)
        rss = (self(s + h, v) - 2 * r0 + self(s - h, v)) / h**2
        rvv = (self(s, v + h) - 2 * r0 + self(s, v - h)) / h**2
        rsv = (self(s + h, v + h) - self(s + h, v - h)
               - self(s - h, v + h) + self(s - h, v - h)) / (4 * h * h)
        return rss, rsv, rvv


def orient(normal: Vec) -> Vec:
    """Fold a unit normal onto the representative with <N, (0,0,1)> >= 0."""
    return canonical_axis(normal)


def _frenet(c: Curve, tol: Tolerances):
    @lru_cache(maxsize=4096)
    def frame(s: float) -> FrenetApparatus:
        return frenet_apparatus(c, s, tol)
    return frame


def build_ruled(c: Curve, kind: Family, v_range: Interval,
                tol: Tolerances = DEFAULT_TOL) -> Surface:
    """alpha(s) + v * {t | n | b}(s) over the curve's domain."""
    if not c.arclength:
        raise NotArcLength("ruled surfaces need an arc-length generator")
    kind = Family(kind)
    if kind not in RULED:
        raise ValueError(f"{kind} is not a ruled family")
    frame = _frenet(c, tol)
    # fail early if the frame is undefined somewhere on the domain
    if kind is not Family.TANGENT_DEVELOPABLE:
        for s in c.sample_params(16, inset=0.0):
            frame(float(s))

    if kind is Family.TANGENT_DEVELOPABLE:
        def pos(s, v):
            return c(s) + v * c.derivative(s, 1, tol)

        def partials(s, v):
            d1, d2 = c.derivative(s, 1, tol), c.derivative(s, 2, tol)
            return d1 + v * d2, d1

        def second(s, v):
            d2, d3 = c.derivative(s, 2, tol), c.derivative(s, 3, tol)
            return d2 + v * d3, d2, np.zeros(3)

        return Surface(pos, c.domain, tuple(v_range), kind, partials,
                       second if len(c.derivs) >= 3 else None,
                       locus=lambda s, v: v, curve=c, name="tangent-developable")

    if kind is Family.NORMAL:
        def pos(s, v):
            return c(s) + v * frame(float(s)).n

        def partials(s, v):
            F = frame(float(s))
            return F.t + v * (-F.kappa * F.t + F.tau * F.b), F.n

        return Surface(pos, c.domain, tuple(v_range), kind, partials, curve=c,
                       name="normal-surface")

    def pos(s, v):
        return c(s) + v * frame(float(s)).b

    def partials(s, v):
        F = frame(float(s))
        return F.t - v * F.tau * F.n, F.b

    return Surface(pos, c.domain, tuple(v_range), kind, partials, curve=c,
                   name="binormal-surface")


def build_cone(director: Curve, v_range: Interval, tol: Tolerances = DEFAULT_TOL) -> Surface:
    """v * alpha(s) for a director on the unit sphere."""
    if not director.arclength:
        raise NotArcLength("cone director must be arc-length parametrized")
    for s in director.sample_params(32, inset=0.0):
        r = np.linalg.norm(director(s))
        if abs(r - 1.0) > ARCLENGTH_TOL:
            raise NotSpherical(f"|alpha({s})| = {r}")
    c = director

    def pos(s, v):
        return v * c(s)

    def partials(s, v):
        return v * c.derivative(s, 1, tol), c(s)

    def second(s, v):
        return v * c.derivative(s, 2, tol), c.derivative(s, 1, tol), np.zeros(3)

    return Surface(pos, director.domain, tuple(v_range), Family.CONE, partials, second,
                   locus=lambda s, v: v, curve=director, name="cone")


def theorem_a_surface(theta: float, eta: RealFunction, u1_range: Interval,
                      u2_range: Interval, tol: Tolerances = DEFAULT_TOL,
                      panels: int = 128) -> Surface:
    """(u1 cos(theta) (cos u2, sin u2) + gamma(u2), u1 sin(theta)) with
    gamma(u2) = cos(theta) (-int_0^u2 eta sin, int_0^u2 eta cos).

    The first surface parameter is u1, the second u2. The singular locus is
    u1 + eta(u2) = 0.
    """
    if not 0 <= theta < math.pi / 2:
        raise ValueError("theta must lie in [0, pi/2)")
    ct, st = math.cos(theta), math.sin(theta)
    lo, hi = min(0.0, u2_range[0]), max(0.0, u2_range[1])

    def integrand(tau):
        e = eta(tau)
        return np.array([-e * math.sin(tau), e * math.cos(tau)])

    gamma_int = CumulativeIntegral(integrand, lo, hi, 0.0, panels=panels, tol=tol.quad_tol)

    @lru_cache(maxsize=8192)
    def gamma(u2: float) -> Vec:
        return ct * gamma_int(u2)

    def pos(u1, u2):
        g = gamma(float(u2))
        return np.array([u1 * ct * math.cos(u2) + g[0], u1 * ct * math.sin(u2) + g[1], u1 * st])

    def partials(u1, u2):
        e = eta(u2)
        r1 = np.array([ct * math.cos(u2), ct * math.sin(u2), st])
        r2 = (u1 + e) * ct * np.array([-math.sin(u2), math.cos(u2), 0.0])
        return r1, r2

    return Surface(pos, tuple(u1_range), tuple(u2_range), Family.THEOREM_A, partials,
                   locus=lambda u1, u2: u1 + eta(u2), theta=theta, eta=eta,
                   name="theorem-a")


def surface_normal(S: Surface, s: float, v: float, tol: Tolerances = DEFAULT_TOL) -> Vec:
    """Unit normal (r_s x r_v)/|r_s x r_v|, folded to non-negative z."""
    if S.locus is not None and S.locus_distance(s, v) <= 1e-12:
        raise DegenerateNormal(f"({s}, {v}) lies on the singular locus")
    rs, rv = S.first(s, v, tol)
    cr = np.cross(rs, rv)
    norm = float(np.linalg.norm(cr))
    if norm < CROSS_FLOOR:
        raise DegenerateNormal(f"|r_s x r_v| = {norm:.3g} at ({s}, {v})")
    return orient(cr / norm)


def closed_form_ruled_normal(kind: Family, F: FrenetApparatus, v: float) -> Vec:
    """Normals of the ruled families written in the Frenet frame.

    normal surface:   ((1 - kappa v) b - tau v t) / sqrt((1 - kappa v)^2 + tau^2 v^2)
    binormal surface: (-n - tau v t) / sqrt(1 + tau^2 v^2)
    tangent surface:  -sign(v) b
    """
    kind = Family(kind)
    if kind is Family.TANGENT_DEVELOPABLE:
        if v == 0:
            raise DegenerateNormal("tangent developable is singular at v = 0")
        return orient(-math.copysign(1.0, v) * F.b)
    if kind is Family.NORMAL:
        delta = (1 - F.kappa * v) ** 2 + F.tau**2 * v**2
        vec = (1 - F.kappa * v) * F.b - F.tau * v * F.t
    elif kind is Family.BINORMAL:
        delta = 1 + F.tau**2 * v**2
        vec = -F.n - F.tau * v * F.t
    else:
        raise ValueError(f"no closed form for {kind}")
    if delta <= DELTA_FLOOR:
        raise DegenerateNormal(f"Delta = {delta:.3g}")
    return orient(vec / math.sqrt(delta))


@dataclass(frozen=True)
class FundamentalForms:
    E: float
    F: float
    G: float
    L: float
    M: float
    N2: float
    normal: Vec

    @property
    def gaussian_curvature(self) -> float:
        return (self.L * self.N2 - self.M**2) / (self.E * self.G - self.F**2)


def fundamental_forms(S: Surface, s: float, v: float,
                      tol: Tolerances = DEFAULT_TOL) -> FundamentalForms:
    N = surface_normal(S, s, v, tol)
    rs, rv = S.first(s, v, tol)
    rss, rsv, rvv = S.second(s, v, tol)
    return FundamentalForms(
        float(rs @ rs), float(rs @ rv), float(rv @ rv),
        float(rss @ N), float(rsv @ N), float(rvv @ N), N,
    )


def gaussian_curvature(S: Surface, s: float, v: float, tol: Tolerances = DEFAULT_TOL) -> float:
    return fundamental_forms(S, s, v, tol).gaussian_curvature


def plane_patch(s_range: Interval = (-1.0, 1.0), v_range: Interval = (-1.0, 1.0)) -> Surface:
    return Surface(lambda s, v: np.array([s, v, 0.0]), s_range, v_range, name="plane")


def unit_cylinder(s_range: Interval = (0.0, 2 * math.pi), v_range: Interval = (-1.0, 1.0)) -> Surface:
    return Surface(lambda s, v: np.array([math.cos(s), math.sin(s), v]), s_range, v_range,
                   name="cylinder")


def unit_sphere_patch(s_range: Interval = (0.2, math.pi / 2),
                      v_range: Interval = (0.0, 2 * math.pi)) -> Surface:
    """Colatitude s, longitude v."""
    return Surface(
        lambda s, v: np.array([math.sin(s) * math.cos(v), math.sin(s) * math.sin(v), math.cos(s)]),
        s_range, v_range, name="sphere")
