"""Numerical kernels: finite differences, quadrature, monotone inversion,
hemisphere direction grids.

Everything here is pure; vector-valued functions are handled componentwise
by letting numpy broadcast over the returned arrays.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, replace
from typing import Callable, Optional, Tuple

import numpy as np

from .errors import DomainExceeded, NoConvergence, NotBracketed, NotMonotone

Interval = Tuple[float, float]

# step per derivative order; see notes in fd_derive
DEFAULT_STEPS = {1: 1e-5, 2: 1e-4, 3: 1e-3}

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


@dataclass(frozen=True)
class RealFunction:
    """A smooth function on a closed interval.

    ``derivs`` optionally holds analytic derivatives, ``derivs[0]`` being the
    first derivative.
    """

    func: Callable[[float], object]
    domain: Interval = (-math.inf, math.inf)
    derivs: Tuple[Callable[[float], object], ...] = ()
    name: str = "custom"

    def __call__(self, t):
        return self.func(t)

    def contains(self, t: float, slack: float = 0.0) -> bool:
        lo, hi = self.domain
        return lo - slack <= t <= hi + slack

    def derivative(self, t: float, order: int = 1, h: Optional[float] = None):
        if order <= len(self.derivs):
            return self.derivs[order - 1](t)
        base = len(self.derivs)
        g = self.func if base == 0 else self.derivs[base - 1]
        return fd_derive(g, t, order - base, h)


@dataclass(frozen=True)
class Tolerances:
    fd_step: float = 1e-5
    quad_tol: float = 1e-11
    root_tol: float = 1e-13
    angle_tol: float = 1e-3
    curvature_floor: float = 1e-8
    # verdict tolerance when surface derivatives come from differencing alone
    fd_angle_tol: float = 5e-3

    def __post_init__(self):
        for name in ("fd_step", "quad_tol", "root_tol", "angle_tol", "curvature_floor", "fd_angle_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")
        if not max(self.angle_tol, self.fd_angle_tol) < math.pi / 4:
            raise ValueError("angle tolerances must be below pi/4")
        if not self.curvature_floor < 1:
            raise ValueError("curvature_floor must be below 1")

    def step(self, order: int) -> float:
        """Finite-difference step for a derivative of the given order."""
        return self.fd_step * 10.0 ** (order - 1)

    def angle_tol_for(self, analytic: bool) -> float:
        return self.angle_tol if analytic else self.fd_angle_tol

    @classmethod
    def from_env(cls, **overrides) -> "Tolerances":
        """CONSTANGLE_TOL, when set, replaces both verdict tolerances."""
        tol = cls(**overrides)
        raw = os.environ.get("CONSTANGLE_TOL")
        if raw:
            tol = replace(tol, angle_tol=float(raw), fd_angle_tol=float(raw))
        return tol


DEFAULT_TOL = Tolerances()


def _as_value(x):
    return x if np.isscalar(x) else np.asarray(x, dtype=float)


def fd_derive(f: Callable, t: float, order: int = 1, h: Optional[float] = None):
    """Central-difference estimate of the ``order``-th derivative of f at t.

    Truncation error is O(h^2). If f is a RealFunction the stencil
    [t - order*h, t + order*h] must lie in its domain.
    """
    if order not in (1, 2, 3):
        raise ValueError("order must be 1, 2 or 3")
    if h is None:
        h = DEFAULT_STEPS[order]
    if h <= 0:
        raise ValueError("h must be positive")
    if isinstance(f, RealFunction) and not (
        f.contains(t - order * h) and f.contains(t + order * h)
    ):
        raise DomainExceeded(f"stencil around t={t} leaves domain {f.domain}")

    if order == 1:
        return (_as_value(f(t + h)) - _as_value(f(t - h))) / (2 * h)
    if order == 2:
        return (_as_value(f(t + h)) - 2 * _as_value(f(t)) + _as_value(f(t - h))) / (h * h)
    return (
        _as_value(f(t + 2 * h))
        - 2 * _as_value(f(t + h))
        + 2 * _as_value(f(t - h))
        - _as_value(f(t - 2 * h))
    ) / (2 * h**3)


def quad(
    f: Callable,
    a: float,
    b: float,
    tol: float = 1e-10,
    max_evals: int = 1_000_000,
    min_depth: int = 3,
):
    """Adaptive Simpson quadrature of f over [a, b] (componentwise for arrays).

    Intervals are halved until the two-halves estimate differs from the
    whole-interval estimate by at most 15*tol_local; the accepted value gets
    the Richardson correction.
    """
    if a > b:
        raise ValueError("quad requires a <= b")
    if isinstance(f, RealFunction) and not (f.contains(a) and f.contains(b)):
        raise DomainExceeded(f"[{a}, {b}] not inside {f.domain}")
    fa = _as_value(f(a))
    if a == b:
        return fa * 0.0
    m = 0.5 * (a + b)
    fm, fb = _as_value(f(m)), _as_value(f(b))
    evals = 3
    whole = (b - a) / 6.0 * (fa + 4 * fm + fb)
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    parts = []
    while stack:
        a_, b_, fa_, fm_, fb_, whole_, tol_, depth = stack.pop()
        m_ = 0.5 * (a_ + b_)
        flm = _as_value(f(0.5 * (a_ + m_)))
        frm = _as_value(f(0.5 * (m_ + b_)))
        evals += 2
        if evals > max_evals:
            raise NoConvergence(f"quadrature budget of {max_evals} evaluations exhausted")
        left = (m_ - a_) / 6.0 * (fa_ + 4 * flm + fm_)
        right = (b_ - m_) / 6.0 * (fm_ + 4 * frm + fb_)
        delta = left + right - whole_
        if depth >= min_depth and (np.max(np.abs(delta)) <= 15 * tol_ or depth >= 60):
            parts.append(left + right + delta / 15.0)
        else:
            stack.append((m_, b_, fm_, frm, fb_, right, tol_ / 2, depth + 1))
            stack.append((a_, m_, fa_, flm, fm_, left, tol_ / 2, depth + 1))
    return sum(parts[1:], parts[0])


def gauss_legendre(f: Callable, a: float, b: float):
    """Fixed 16-point Gauss-Legendre rule; smooth in its endpoints."""
    half, mid = 0.5 * (b - a), 0.5 * (a + b)
    vals = [_as_value(f(mid + half * x)) for x in _GL_NODES]
    return half * sum(w * v for w, v in zip(_GL_WEIGHTS, vals))


class CumulativeIntegral:
    """x -> integral of f from ``origin`` to x, smooth in x.

    Panel integrals over [lo, hi] are tabulated once with ``quad``; the
    partial panel is closed with a fixed Gauss rule so the result has no
    refinement-induced jitter (finite differences of it stay clean).
    Evaluation slightly outside [lo, hi] extends the last panel.
    """

    def __init__(self, f: Callable, lo: float, hi: float, origin: float,
                 panels: int = 256, tol: float = 1e-12):
        if not lo <= origin <= hi:
            raise ValueError("origin must lie in [lo, hi]")
        self.f = f
        self.lo, self.hi, self.origin = lo, hi, origin
        self.edges = np.linspace(lo, hi, panels + 1)
        pieces = [quad(f, self.edges[i], self.edges[i + 1], tol / panels)
                  for i in range(panels)]
        zero = pieces[0] * 0.0
        cum = [zero]
        for p in pieces:
            cum.append(cum[-1] + p)
        self._cum = cum
        self._offset = self._from_lo(origin)

    def _from_lo(self, x: float):
        i = int(np.clip(np.searchsorted(self.edges, x, side="right") - 1, 0, len(self.edges) - 2))
        e = self.edges[i]
        return self._cum[i] + gauss_legendre(self.f, e, x)

    def __call__(self, x: float):
        return self._from_lo(x) - self._offset

    @property
    def total(self):
        return self._cum[-1]


def invert_monotone(
    f: Callable,
    y: float,
    bracket: Interval,
    tol: float = 1e-12,
    check: bool = True,
    samples: int = 64,
    max_iter: int = 200,
) -> float:
    """Solve f(t) = y for t in a bracket on which f is strictly monotone.

    Monotonicity is checked on ``samples`` equispaced points (skip with
    ``check=False`` when the caller already guarantees it). The root is
    found by bisection with Illinois-style secant steps.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise ValueError("bracket must satisfy lo < hi")
    if check:
        ts = np.linspace(lo, hi, samples)
        vals = np.array([float(f(t)) for t in ts])
        d = np.diff(vals)
        if not (np.all(d > 0) or np.all(d < 0)):
            raise NotMonotone("sampled values are not strictly ordered")
        if not min(vals[0], vals[-1]) - tol <= y <= max(vals[0], vals[-1]) + tol:
            raise NotBracketed(f"y={y} outside [{vals.min()}, {vals.max()}]")
        # narrow to the sample cell holding the root
        g = vals - y
        idx = np.nonzero(g[:-1] * g[1:] <= 0)[0]
        if len(idx):
            i = int(idx[0])
            lo, hi = ts[i], ts[i + 1]

    a, b = lo, hi
    ga, gb = float(f(a)) - y, float(f(b)) - y
    if abs(ga) <= tol:
        return a
    if abs(gb) <= tol:
        return b
    if ga * gb > 0:
        raise NotBracketed(f"y={y} not bracketed by f({a}), f({b})")
    last = 0
    for _ in range(max_iter):
        width = b - a
        c = (a * gb - b * ga) / (gb - ga)
        if not a < c < b:
            c = 0.5 * (a + b)
        gc = float(f(c)) - y
        if abs(gc) <= tol:
            return c
        if gc * ga < 0:
            b, gb = c, gc
            if last == -1:
                ga *= 0.5
            last = -1
        else:
            a, ga = c, gc
            if last == 1:
                gb *= 0.5
            last = 1
        if b - a > 0.5 * width:
            # secant stalled; force a bisection step
            m = 0.5 * (a + b)
            gm = float(f(m)) - y
            if abs(gm) <= tol:
                return m
            if gm * ga < 0:
                b, gb = m, gm
            else:
                a, ga = m, gm
            last = 0
        if b - a <= 4 * np.finfo(float).eps * max(1.0, abs(a), abs(b)):
            return a if abs(ga) < abs(gb) else b
    raise NoConvergence("invert_monotone did not converge")


def sphere_grid(n: int) -> np.ndarray:
    """Unit directions covering the closed upper hemisphere.

    Returns an (m, 3) array, m >= n^2, containing the pole; every direction
    with z >= 0 lies within pi/(2n) of some row.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    res = math.pi / (2 * n)
    # rings every res/2 in colatitude, points every res/2 of arc along a ring
    step = res / 2
    nrings = int(math.ceil((math.pi / 2) / step))
    colats = np.linspace(0.0, math.pi / 2, nrings + 1)
    out = [np.array([[0.0, 0.0, 1.0]])]
    for phi in colats[1:]:
        # widest circle the ring must cover within its band
        band_sin = math.sin(min(phi + step / 2, math.pi / 2))
        m = max(4, int(math.ceil(2 * math.pi * band_sin / step)))
        az = np.arange(m) * (2 * math.pi / m)
        ring = np.column_stack([
            math.sin(phi) * np.cos(az),
            math.sin(phi) * np.sin(az),
            np.full(m, math.cos(phi)),
        ])
        out.append(ring)
    pts = np.vstack(out)
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)
