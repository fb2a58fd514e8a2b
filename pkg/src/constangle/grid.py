"""Surface sampling on parameter grids and OBJ / CSV export."""
from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import AllSingular, DegenerateNormal, IncompleteGrid
from .numkit import DEFAULT_TOL, Tolerances
from .surface import Surface, gaussian_curvature, surface_normal

FIELDS = ("normals", "K", "angle")
CSV_HEADER = "s,v,x,y,z,nx,ny,nz,K,angle"


@dataclass(frozen=True)
class SurfaceGrid:
    """Nodes in row-major order with s varying fastest.

    Absent values (not requested, or singular node) are NaN.
    """

    ns: int
    nv: int
    s: np.ndarray
    v: np.ndarray
    positions: np.ndarray
    normals: np.ndarray
    K: np.ndarray
    angle: np.ndarray

    def __len__(self) -> int:
        return self.ns * self.nv

    def index(self, i: int, j: int) -> int:
        return j * self.ns + i


def sample_grid(S: Surface, ns: int, nv: int, fields: Iterable[str] = (),
                direction=None, tol: Tolerances = DEFAULT_TOL,
                inset: float = 0.0) -> SurfaceGrid:
    """Evaluate S on an ns x nv equispaced grid of its (optionally inset)
    parameter rectangle; nodes where a requested field is undefined get NaN."""
    if ns < 2 or nv < 2:
        raise ValueError("grid needs at least 2 x 2 nodes")
    fields = set(fields)
    unknown = fields - set(FIELDS)
    if unknown:
        raise ValueError(f"unknown fields {sorted(unknown)}")
    if "angle" in fields:
        if direction is None:
            raise ValueError("angle field needs a direction")
        k = np.asarray(direction, dtype=float)
        k = k / np.linalg.norm(k)
    (s0, s1), (v0, v1) = S.s_range, S.v_range
    ps, pv = inset * (s1 - s0), inset * (v1 - v0)
    ss, vs = np.linspace(s0 + ps, s1 - ps, ns), np.linspace(v0 + pv, v1 - pv, nv)
    n = ns * nv
    pos = np.empty((n, 3))
    normals = np.full((n, 3), np.nan)
    K = np.full(n, np.nan)
    angle = np.full(n, np.nan)
    s_col, v_col = np.tile(ss, nv), np.repeat(vs, ns)
    valid = 0
    for idx in range(n):
        s, v = float(s_col[idx]), float(v_col[idx])
        pos[idx] = S(s, v)
        if not fields:
            continue
        try:
            N = surface_normal(S, s, v, tol)
            if "normals" in fields:
                normals[idx] = N
            if "angle" in fields:
                angle[idx] = math.acos(min(1.0, abs(float(N @ k))))
            if "K" in fields:
                K[idx] = gaussian_curvature(S, s, v, tol)
        except DegenerateNormal:
            continue
        valid += 1
    if fields and valid == 0:
        raise AllSingular("every grid node is singular")
    if not np.all(np.isfinite(pos)):
        raise IncompleteGrid("non-finite positions")
    return SurfaceGrid(ns, nv, s_col, v_col, pos, normals, K, angle)


def fmt(x: float) -> str:
    """Shortest round-trip text of x after rounding to 12 significant digits."""
    if not math.isfinite(x):
        return ""
    y = float(f"{x:.12g}")
    if y == 0:
        y = 0.0
    return repr(y)


def export_obj(grid: SurfaceGrid) -> str:
    """Wavefront OBJ: one vertex per node, two triangles per cell."""
    if not np.all(np.isfinite(grid.positions)):
        raise IncompleteGrid("grid has absent positions")
    out = io.StringIO()
    for p in grid.positions:
        out.write(f"v {fmt(p[0])} {fmt(p[1])} {fmt(p[2])}\n")
    for j in range(grid.nv - 1):
        for i in range(grid.ns - 1):
            a = grid.index(i, j) + 1
            b = grid.index(i + 1, j) + 1
            c = grid.index(i + 1, j + 1) + 1
            d = grid.index(i, j + 1) + 1
            out.write(f"f {a} {b} {c}\n")
            out.write(f"f {a} {c} {d}\n")
    return out.getvalue()


def export_csv(grid: SurfaceGrid) -> str:
    out = io.StringIO()
    out.write(CSV_HEADER + "\n")
    for idx in range(len(grid)):
        row = [grid.s[idx], grid.v[idx], *grid.positions[idx], *grid.normals[idx],
               grid.K[idx], grid.angle[idx]]
        out.write(",".join(fmt(float(x)) for x in row) + "\n")
    return out.getvalue()
