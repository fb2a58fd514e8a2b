"""Angle fields, constant-angle verdicts and the surface classifier."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .curve import Curve, FrenetApparatus, frenet_apparatus, geodesic_curvature_spherical, helix_test
from .errors import AllSingular, DegenerateFit, DegenerateNormal
from .fitting import CircleFit, brute_force_axis, fit_direction_to_circle
from .numkit import DEFAULT_TOL, Tolerances
from .surface import Family, Surface, surface_normal

__all__ = [
    "AngleField", "ClassificationReport", "NormalSurfaceResiduals", "Verdict",
    "angle_field", "brute_force_axis", "classify", "cone_derivative_witness",
    "constant_angle_verdict", "fit_direction_to_circle", "inset_grid",
    "normal_surface_residuals", "sample_normals",
]

K_AXIS = np.array([0.0, 0.0, 1.0])
TAU_ZERO = 1e-4
CURVE_SAMPLES = 100

# case labels
THEOREM_A_I = "TheoremA-i"
PLANE = "Plane"
CYLINDER = "Cylinder"
CIRCULAR_CONE = "CircularCone"
CONSTANT = "ConstantAngle"
NOT_CONSTANT = "NotConstantAngle"


def inset_grid(S: Surface, ns: int, nv: int, inset: float = 0.01) -> List[Tuple[float, float]]:
    """Equispaced (s, v) nodes inset from the edges and the singular locus."""
    (s0, s1), (v0, v1) = S.s_range, S.v_range
    ps, pv = inset * (s1 - s0), inset * (v1 - v0)
    margin = inset * max(s1 - s0, v1 - v0)
    nodes = []
    for v in np.linspace(v0 + pv, v1 - pv, nv):
        for s in np.linspace(s0 + ps, s1 - ps, ns):
            if S.locus_distance(s, v) >= margin:
                nodes.append((float(s), float(v)))
    return nodes


def sample_normals(S: Surface, grid: Tuple[int, int], tol: Tolerances = DEFAULT_TOL,
                   inset: float = 0.01):
    nodes, normals = [], []
    for s, v in inset_grid(S, grid[0], grid[1], inset):
        try:
            normals.append(surface_normal(S, s, v, tol))
        except DegenerateNormal:
            continue
        nodes.append((s, v))
    if not normals:
        raise AllSingular("no regular sample on the grid")
    return nodes, np.array(normals)


@dataclass(frozen=True)
class AngleField:
    samples: List[Tuple[float, float, float]]
    direction: np.ndarray
    surface: Surface = field(repr=False)

    @property
    def angles(self) -> np.ndarray:
        return np.array([a for _, _, a in self.samples])


def angle_field(S: Surface, k, grid: Tuple[int, int] = (20, 20),
                tol: Tolerances = DEFAULT_TOL) -> AngleField:
    """arccos|<N, k>| on an inset grid; values land in [0, pi/2]."""
    k = np.asarray(k, dtype=float)
    k = k / np.linalg.norm(k)
    nodes, normals = sample_normals(S, grid, tol)
    angles = np.arccos(np.clip(np.abs(normals @ k), 0.0, 1.0))
    return AngleField([(s, v, float(a)) for (s, v), a in zip(nodes, angles)], k, S)


@dataclass(frozen=True)
class Verdict:
    is_constant: bool
    theta_mean: float
    max_dev: float


def constant_angle_verdict(field_or_angles, tol: Tolerances = DEFAULT_TOL) -> Verdict:
    angles = (field_or_angles.angles if isinstance(field_or_angles, AngleField)
              else np.asarray(field_or_angles, dtype=float))
    if angles.size == 0:
        raise ValueError("empty angle field")
    mean = float(angles.mean())
    max_dev = float(np.max(np.abs(angles - mean)))
    analytic = not isinstance(field_or_angles, AngleField) or field_or_angles.surface.partials is not None
    return Verdict(max_dev <= tol.angle_tol_for(analytic), mean, max_dev)


@dataclass(frozen=True)
class NormalSurfaceResiduals:
    """Coefficients of the polynomial in v that <N, k> = cos(theta) forces
    to vanish on a normal surface."""

    c0: float
    c1: float
    c2: float
    # <b,k> = <t,k> = cos(theta) = 0: k would be orthogonal to t, n and b
    contradiction: bool = False

    @property
    def max_abs(self) -> float:
        return max(abs(self.c0), abs(self.c1), abs(self.c2))


def normal_surface_residuals(F: FrenetApparatus, k, theta: float,
                             eps: float = 1e-9) -> NormalSurfaceResiduals:
    k = np.asarray(k, dtype=float)
    bk, tk = float(F.b @ k), float(F.t @ k)
    cos2 = math.cos(theta) ** 2
    c0 = bk**2 - cos2
    c1 = F.kappa * bk**2 + F.tau * bk * tk - F.kappa * cos2
    c2 = (F.kappa * bk + F.tau * tk) ** 2 - (F.kappa**2 + F.tau**2) * cos2
    contradiction = abs(math.cos(theta)) <= eps and abs(bk) <= eps and abs(tk) <= eps
    return NormalSurfaceResiduals(c0, c1, c2, contradiction)


def cone_derivative_witness(director: Curve, k, samples: int = CURVE_SAMPLES,
                            tol: Tolerances = DEFAULT_TOL) -> float:
    """max |<alpha x alpha'', k>| along the director; zero for circles about k."""
    k = np.asarray(k, dtype=float)
    vals = [abs(float(np.cross(director(s), director.derivative(s, 2, tol)) @ k))
            for s in director.sample_params(samples)]
    return max(vals)


@dataclass(frozen=True)
class ClassificationReport:
    verdict: str
    case: Optional[str]
    theta: Optional[float]
    axis: Optional[np.ndarray]
    evidence: Dict[str, float]

    @property
    def is_constant_angle(self) -> bool:
        return self.verdict == CONSTANT

    def to_record(self) -> str:
        """Flat key=value lines."""
        lines = [f"verdict={self.verdict}", f"case={self.case or ''}"]
        lines.append(f"theta={'' if self.theta is None else repr(self.theta)}")
        axis = "" if self.axis is None else ",".join(repr(float(x)) for x in self.axis)
        lines.append(f"axis={axis}")
        for key in sorted(self.evidence):
            lines.append(f"{key}={self.evidence[key]!r}")
        return "\n".join(lines) + "\n"


def _structural_case(fit: CircleFit, tol: Tolerances) -> str:
    if fit.degenerate:
        return PLANE
    if abs(fit.theta - math.pi / 2) <= tol.angle_tol:
        return CYLINDER
    return THEOREM_A_I


def _family_case(S: Surface, fit: CircleFit, tol: Tolerances, evidence: Dict[str, float]):
    """Case implied by the surface family, or None when its test fails."""
    c = S.curve
    if S.family is Family.TANGENT_DEVELOPABLE:
        if fit.degenerate:
            return PLANE
        ht = helix_test(c, CURVE_SAMPLES, tol)
        evidence["helix_max_dev"] = ht.max_dev
        evidence["lancret_dev"] = ht.lancret_dev
        return THEOREM_A_I if ht.is_helix else None
    if S.family in (Family.NORMAL, Family.BINORMAL):
        taus = [abs(frenet_apparatus(c, s, tol).tau) for s in c.sample_params(CURVE_SAMPLES)]
        evidence["tau_max"] = max(taus)
        if max(taus) > TAU_ZERO:
            return None
        if S.family is Family.NORMAL:
            return PLANE
        return CYLINDER if abs(fit.theta - math.pi / 2) <= tol.angle_tol else None
    if S.family is Family.CONE:
        kg = [geodesic_curvature_spherical(c, s, tol) for s in c.sample_params(CURVE_SAMPLES)]
        evidence["kappa_g_variation"] = max(kg) - min(kg)
        evidence["cone_witness"] = cone_derivative_witness(c, fit.axis, CURVE_SAMPLES, tol)
        return CIRCULAR_CONE if max(kg) - min(kg) <= tol.angle_tol else None
    if S.family is Family.THEOREM_A:
        return PLANE if fit.degenerate else THEOREM_A_I
    return _structural_case(fit, tol)


def classify(S: Surface, tol: Tolerances = DEFAULT_TOL,
             grid: Tuple[int, int] = (16, 16)) -> ClassificationReport:
    """Decide whether S is a constant angle surface and name its case.

    Normals are sampled on an inset grid and fitted to a circle of the sphere;
    a poor fit means no fixed direction works. Otherwise the family tag
    selects the curve-level check (helix, zero torsion, constant geodesic
    curvature) that names the case; untagged surfaces are labelled from the
    fit alone.
    """
    _, normals = sample_normals(S, grid, tol)
    evidence: Dict[str, float] = {"samples": float(len(normals))}
    try:
        fit = fit_direction_to_circle(normals, tol)
    except DegenerateFit:
        evidence["fit_residual"] = math.inf
        return ClassificationReport(NOT_CONSTANT, None, None, None, evidence)
    angles = np.arccos(np.clip(np.abs(normals @ fit.axis), 0.0, 1.0))
    max_dev = float(np.max(np.abs(angles - fit.theta)))
    evidence["fit_residual"] = fit.residual
    evidence["max_angle_dev"] = max_dev
    gate = tol.angle_tol_for(S.partials is not None)
    if fit.residual > gate or max_dev > gate:
        if S.family is Family.CONE:
            # record the curve-level evidence for the rejection as well
            _family_case(S, fit, tol, evidence)
        return ClassificationReport(NOT_CONSTANT, None, None, fit.axis, evidence)
    case = _family_case(S, fit, tol, evidence)
    if case is None:
        case = _structural_case(fit, tol)
        evidence["family_check_failed"] = 1.0
    return ClassificationReport(CONSTANT, case, fit.theta, fit.axis, evidence)
