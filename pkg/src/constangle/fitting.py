"""Fit the circle of the unit sphere that best carries a set of unit normals.

A constant angle surface has <N, k> = cos(theta) for every normal, i.e. its
normals lie on the plane <x, k> = c. The least-squares plane through the
normals (unit k, free offset c) has k equal to the eigenvector of the normals'
covariance with the smallest eigenvalue; the 3x3 eigenproblem is solved in
closed form from the characteristic cubic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFit
from .numkit import sphere_grid

_TIE = 1e-12


@dataclass(frozen=True)
class CircleFit:
    axis: np.ndarray
    theta: float
    residual: float
    offset: float
    degenerate: bool = False


def canonical_axis(k) -> np.ndarray:
    """Pick the antipodal representative with z >= 0 (ties: y, then x)."""
    k = np.asarray(k, dtype=float)
    for comp in (k[2], k[1], k[0]):
        if comp > _TIE:
            return k
        if comp < -_TIE:
            return -k
    return k


def symmetric_eigenvalues(a: np.ndarray) -> tuple[float, float, float]:
    """Eigenvalues of a symmetric 3x3 matrix, ascending (trigonometric cubic)."""
    p1 = a[0, 1] ** 2 + a[0, 2] ** 2 + a[1, 2] ** 2
    q = np.trace(a) / 3.0
    p2 = (a[0, 0] - q) ** 2 + (a[1, 1] - q) ** 2 + (a[2, 2] - q) ** 2 + 2 * p1
    p = math.sqrt(p2 / 6.0)
    if p < 1e-300:
        return q, q, q
    b = (a - q * np.eye(3)) / p
    r = np.clip(np.linalg.det(b) / 2.0, -1.0, 1.0)
    phi = math.acos(r) / 3.0
    hi = q + 2 * p * math.cos(phi)
    lo = q + 2 * p * math.cos(phi + 2 * math.pi / 3)
    mid = 3 * q - hi - lo
    # acos near +-1 loses half the digits of a close pair; deflate the isolated
    # eigenvalue and re-solve the pair from the 2x2 block in its complement
    iso = hi if hi - mid >= mid - lo else lo
    m = a - iso * np.eye(3)
    cands = [np.cross(m[0], m[1]), np.cross(m[0], m[2]), np.cross(m[1], m[2])]
    e = max(cands, key=np.linalg.norm)
    if np.linalg.norm(e) == 0:
        return lo, mid, hi
    e = e / np.linalg.norm(e)
    u = np.cross(e, [1.0, 0.0, 0.0] if abs(e[0]) < 0.9 else [0.0, 1.0, 0.0])
    u /= np.linalg.norm(u)
    w = np.cross(e, u)
    buu, bww, buw = u @ a @ u, w @ a @ w, u @ a @ w
    centre = 0.5 * (buu + bww)
    rad = math.hypot(0.5 * (buu - bww), buw)
    vals = sorted((float(e @ a @ e), centre - rad, centre + rad))
    return vals[0], vals[1], vals[2]


def symmetric_eigenvector(a: np.ndarray, lam: float) -> np.ndarray:
    """Unit null vector of a - lam*I for a simple eigenvalue lam."""
    m = a - lam * np.eye(3)
    cands = [np.cross(m[0], m[1]), np.cross(m[0], m[2]), np.cross(m[1], m[2])]
    best = max(cands, key=np.linalg.norm)
    norm = np.linalg.norm(best)
    if norm == 0:
        raise DegenerateFit("eigenvalue is not simple")
    return best / norm


def fit_direction_to_circle(normals, tol=None) -> CircleFit:
    """Best axis k and angle theta with <N_i, k> ~ cos(theta) for all normals.

    Returns ``degenerate=True`` (axis = common normal, theta = 0) when the
    normals coincide. Raises DegenerateFit for fewer than three normals or a
    rank-deficient configuration (normals spanning only two directions).
    """
    pts = np.asarray(normals, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3 or len(pts) < 3:
        raise DegenerateFit("need at least three 3-vectors")
    mean = pts.mean(axis=0)
    centred = pts - mean
    cov = centred.T @ centred / len(pts)
    spread = math.sqrt(max(np.trace(cov), 0.0))
    if spread <= 1e-6:
        axis = canonical_axis(mean / np.linalg.norm(mean))
        dots = pts @ axis
        return CircleFit(axis, 0.0, float(np.sqrt(np.mean((dots - 1.0) ** 2))), 1.0, True)

    lo, mid, hi = symmetric_eigenvalues(cov)
    if mid <= 1e-10 * hi:
        raise DegenerateFit("normals do not determine a plane")
    axis = canonical_axis(symmetric_eigenvector(cov, lo))
    dots = pts @ axis
    c = float(dots.mean())
    residual = float(np.sqrt(np.mean((dots - c) ** 2)))
    theta = math.acos(min(1.0, abs(c)))
    return CircleFit(axis, theta, residual, c)


def brute_force_axis(normals, n: int = 200, chunk: int = 20000) -> CircleFit:
    """Exhaustive search of the plane fit over ``sphere_grid(n)`` directions."""
    pts = np.asarray(normals, dtype=float)
    dirs = sphere_grid(n)
    best_cost, best_k = math.inf, None
    for start in range(0, len(dirs), chunk):
        block = dirs[start:start + chunk]
        dots = pts @ block.T
        cost = dots.var(axis=0)
        i = int(np.argmin(cost))
        if cost[i] < best_cost:
            best_cost, best_k = float(cost[i]), block[i]
    axis = canonical_axis(best_k)
    c = float((pts @ axis).mean())
    return CircleFit(axis, math.acos(min(1.0, abs(c))), math.sqrt(best_cost), c)
