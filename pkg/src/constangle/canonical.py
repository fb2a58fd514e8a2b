"""Map tangent developables of helices onto the canonical constant angle
parametrization and check that the two agree up to a horizontal shift."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from .errors import GridMismatch, NotMonotone
from .numkit import DEFAULT_TOL, RealFunction, Tolerances, invert_monotone
from .surface import Surface

HALF_PI = math.pi / 2


def _image(lam: RealFunction) -> Tuple[float, float]:
    lo, hi = lam.domain
    a, b = lam(lo), lam(hi)
    return min(a, b), max(a, b)


def eta_from_lambda(lam: RealFunction, tol: Tolerances = DEFAULT_TOL) -> RealFunction:
    """eta(tau) = -lambda^{-1}(pi/2 - tau) for a strictly monotone lambda.

    Monotonicity is checked once on the whole domain; individual evaluations
    then skip the check.
    """
    lo, hi = lam.domain
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("lambda needs a bounded domain to be inverted")
    ts = np.linspace(lo, hi, 64)
    d = np.diff([lam(t) for t in ts])
    if not (np.all(d > 0) or np.all(d < 0)):
        raise NotMonotone("lambda is not strictly monotone on its domain")
    y_lo, y_hi = _image(lam)

    def eta(tau):
        return -invert_monotone(lam, HALF_PI - tau, (lo, hi), tol=tol.root_tol, check=False)

    return RealFunction(eta, (HALF_PI - y_hi, HALF_PI - y_lo), name=f"eta[{lam.name}]")


def canonical_params(s: float, v: float, lam: RealFunction) -> Tuple[float, float]:
    """(u1, u2) = (s + v, pi/2 - lambda(s))."""
    return s + v, HALF_PI - lam(s)


@dataclass(frozen=True)
class CanonicalMap:
    forward: Callable[[float, float], Tuple[float, float]]
    lam: Optional[RealFunction] = None
    theta: Optional[float] = None
    eta: Optional[RealFunction] = None

    def __call__(self, s: float, v: float) -> Tuple[float, float]:
        return self.forward(s, v)

    @classmethod
    def from_lambda(cls, lam: RealFunction, theta: float,
                    tol: Tolerances = DEFAULT_TOL) -> "CanonicalMap":
        return cls(lambda s, v: canonical_params(s, v, lam), lam, theta, eta_from_lambda(lam, tol))

    @classmethod
    def identity(cls) -> "CanonicalMap":
        return cls(lambda s, v: (s, v))

    def inverse(self) -> "CanonicalMap":
        """(u1, u2) -> (s, v) with s = -eta(u2), v = u1 - s."""
        if self.lam is None:
            return self
        eta = self.eta

        def back(u1, u2):
            s = -eta(u2)
            return s, u1 - s

        return CanonicalMap(back, self.lam, self.theta, eta)


@dataclass(frozen=True)
class Equivalence:
    equivalent: bool
    translation: np.ndarray
    max_dev: float


def verify_translation_equivalence(A: Surface, B: Surface, cmap: CanonicalMap,
                                   grid: Tuple[int, int] = (30, 30),
                                   tol: Tolerances = DEFAULT_TOL,
                                   max_dev_tol: float = 1e-6,
                                   vertical_tol: float = 1e-6,
                                   inset: float = 0.01) -> Equivalence:
    """Check B(map(s, v)) - A(s, v) is one constant horizontal vector.

    The translation is the mean difference over the grid; ``max_dev`` is the
    largest distance of a single difference from that mean.
    """
    (s0, s1), (v0, v1) = A.s_range, A.v_range
    ps, pv = inset * (s1 - s0), inset * (v1 - v0)
    (b0, b1), (c0, c1) = B.s_range, B.v_range
    slack = 1e-9
    diffs = []
    for v in np.linspace(v0 + pv, v1 - pv, grid[1]):
        for s in np.linspace(s0 + ps, s1 - ps, grid[0]):
            u1, u2 = cmap(float(s), float(v))
            if not (b0 - slack <= u1 <= b1 + slack and c0 - slack <= u2 <= c1 + slack):
                raise GridMismatch(f"({s:.4g}, {v:.4g}) maps to ({u1:.4g}, {u2:.4g}) "
                                   f"outside {B.s_range} x {B.v_range}")
            diffs.append(B(u1, u2) - A(float(s), float(v)))
    diffs = np.array(diffs)
    translation = diffs.mean(axis=0)
    max_dev = float(np.max(np.linalg.norm(diffs - translation, axis=1)))
    ok = max_dev <= max_dev_tol and abs(translation[2]) <= vertical_tol
    return Equivalence(bool(ok), translation, max_dev)
