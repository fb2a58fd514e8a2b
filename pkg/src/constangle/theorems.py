"""End-to-end checks of the constant-angle results, shared by the CLI and the
experiment scripts."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from .analysis import CIRCULAR_CONE, CYLINDER, PLANE, angle_field, classify, constant_angle_verdict
from .canonical import CanonicalMap, verify_translation_equivalence
from .curve import arclength_reparam
from .generators import (
    HelixSpec,
    circle2d,
    circular_helix,
    generalized_helix,
    lambda_profile,
    planar_curve,
    spherical_circle,
    spherical_ellipse,
)
from .numkit import DEFAULT_TOL, RealFunction, Tolerances
from .surface import Family, build_cone, build_ruled, theorem_a_surface

HALF_PI = math.pi / 2
K_AXIS = (0.0, 0.0, 1.0)


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: Dict[str, object] = field(default_factory=dict)

    def lines(self):
        yield f"{self.name}: {'PASS' if self.passed else 'FAIL'}"
        for k, v in self.details.items():
            yield f"  {k} = {v}"


def helix_curve(theta: float, lam_name: str, s_range=(0.0, 2 * math.pi),
                tol: Tolerances = DEFAULT_TOL):
    if lam_name == "circular":
        return circular_helix(theta, s_range)
    return generalized_helix(HelixSpec(theta, lambda_profile(lam_name)), s_range, tol)


def check_tangent_developable(theta: float, lam_name: str = "s+0.3sin",
                              grid=(40, 40), tol: Tolerances = DEFAULT_TOL,
                              max_dev_tol: float = 1e-4) -> CheckResult:
    """Tangent developable of a helix has a constant angle with the z-axis."""
    S = build_ruled(helix_curve(theta, lam_name, tol=tol), Family.TANGENT_DEVELOPABLE,
                    (0.1, 1.5), tol)
    v = constant_angle_verdict(angle_field(S, K_AXIS, grid, tol), tol)
    ok = v.max_dev <= max_dev_tol and abs(v.theta_mean - theta) <= max_dev_tol
    return CheckResult("t1", ok, {"theta": theta, "lambda": lam_name,
                                  "theta_mean": v.theta_mean, "max_dev": v.max_dev})


def check_canonical_equivalence(theta: float, lam_name: str = "-s",
                                tol: Tolerances = DEFAULT_TOL) -> CheckResult:
    """Tangent developable of a helix equals the canonical surface for
    eta(tau) = -lambda^{-1}(pi/2 - tau), up to a horizontal translation."""
    if lam_name == "-s":
        s_range = (0.0, 2 * math.pi)
        A = build_ruled(circular_helix(theta, s_range), Family.TANGENT_DEVELOPABLE, (-1.0, 1.0), tol)
        eta = RealFunction(lambda t: HALF_PI - t, name="half-pi-minus")
        cmap = CanonicalMap(lambda s, v: (s + v, HALF_PI + s), lambda_profile("-s"), theta, eta)
        expected = math.cos(theta) * np.array([-HALF_PI, 1.0, 0.0])
        max_dev_tol = 1e-6
    else:
        s_range = (0.0, 4.0)
        lam = lambda_profile(lam_name)
        A = build_ruled(generalized_helix(HelixSpec(theta, lam), s_range, tol),
                        Family.TANGENT_DEVELOPABLE, (-1.0, 1.0), tol)
        cmap = CanonicalMap.from_lambda(lam, theta, tol)
        eta = cmap.eta
        expected = None
        max_dev_tol = 1e-5
    u2 = sorted(HALF_PI - cmap.lam(s) for s in s_range)
    B = theorem_a_surface(theta, eta, (s_range[0] - 1.5, s_range[1] + 1.5),
                          (u2[0] - 0.1, u2[1] + 0.1), tol)
    res = verify_translation_equivalence(A, B, cmap, (30, 30), tol, max_dev_tol=max_dev_tol)
    ok = res.equivalent
    details = {"theta": theta, "lambda": lam_name, "max_dev": res.max_dev,
               "translation": res.translation.tolist()}
    if expected is not None:
        err = float(np.max(np.abs(res.translation - expected)))
        details["translation_error"] = err
        ok = ok and err <= 1e-6
    return CheckResult("t2", ok, details)


def check_normal_surfaces(theta: float = math.pi / 4, tol: Tolerances = DEFAULT_TOL) -> CheckResult:
    """Normal surfaces with constant angle are planes; helices give none."""
    circle = arclength_reparam(planar_curve(circle2d(1.0), name="planar-circle"), tol)
    plane = classify(build_ruled(circle, Family.NORMAL, (-0.5, 0.5), tol), tol)
    helix = classify(build_ruled(circular_helix(theta), Family.NORMAL, (-1.0, 1.0), tol), tol)
    ok = (plane.case == PLANE and abs(plane.theta) <= 1e-6
          and not helix.is_constant_angle)
    return CheckResult("t3-normal", ok, {"planar": f"{plane.verdict}/{plane.case}",
                                         "helix": helix.verdict,
                                         "helix_fit_residual": helix.evidence["fit_residual"]})


def check_binormal_surfaces(theta: float = math.pi / 4, tol: Tolerances = DEFAULT_TOL) -> CheckResult:
    """Binormal surfaces with constant angle are cylinders (theta = pi/2)."""
    circle = arclength_reparam(planar_curve(circle2d(1.0), name="planar-circle"), tol)
    cyl = classify(build_ruled(circle, Family.BINORMAL, (-1.0, 1.0), tol), tol)
    helix = classify(build_ruled(circular_helix(theta), Family.BINORMAL, (-1.0, 1.0), tol), tol)
    ok = (cyl.case == CYLINDER and abs(cyl.theta - HALF_PI) <= 1e-6
          and not helix.is_constant_angle)
    return CheckResult("t3-binormal", ok, {"planar": f"{cyl.verdict}/{cyl.case}",
                                           "theta": cyl.theta, "helix": helix.verdict})


def check_cones(tol: Tolerances = DEFAULT_TOL) -> CheckResult:
    """Constant angle cones are circular: theta = pi/2 - phi over a circle of
    colatitude phi; a spherical ellipse gives no constant angle."""
    details = {}
    ok = True
    for phi in (math.pi / 6, math.pi / 3, math.pi / 2):
        r = classify(build_cone(spherical_circle(phi), (0.1, 2.0), tol), tol)
        good = r.case == CIRCULAR_CONE and abs(r.theta - (HALF_PI - phi)) <= 1e-4
        details[f"phi={phi:.4f}"] = f"{r.case} theta={r.theta}"
        ok = ok and good
    ell = classify(build_cone(arclength_reparam(spherical_ellipse(), tol), (0.1, 2.0), tol), tol)
    details["ellipse"] = ell.verdict
    ok = ok and not ell.is_constant_angle
    return CheckResult("cone", ok, details)


CHECKS = {
    "t1": lambda theta, lam: check_tangent_developable(theta, lam or "s+0.3sin"),
    "t2": lambda theta, lam: check_canonical_equivalence(theta, lam or "-s"),
    "t3-normal": lambda theta, lam: check_normal_surfaces(theta),
    "t3-binormal": lambda theta, lam: check_binormal_surfaces(theta),
    "cone": lambda theta, lam: check_cones(),
}
