"""Constant angle property of developable ruled surfaces, checked numerically."""

from .analysis import (
    AngleField,
    ClassificationReport,
    angle_field,
    classify,
    constant_angle_verdict,
    fit_direction_to_circle,
    normal_surface_residuals,
)
from .canonical import CanonicalMap, canonical_params, eta_from_lambda, verify_translation_equivalence
from .curve import (
    Curve,
    FrenetApparatus,
    arclength_reparam,
    frenet_apparatus,
    geodesic_curvature_spherical,
    helix_test,
)
from .generators import (
    HelixSpec,
    circular_helix,
    generalized_helix,
    lambda_profile,
    planar_curve,
    spherical_circle,
)
from .numkit import RealFunction, Tolerances
from .surface import (
    Family,
    Surface,
    build_cone,
    build_ruled,
    closed_form_ruled_normal,
    fundamental_forms,
    gaussian_curvature,
    surface_normal,
    theorem_a_surface,
)

__version__ = "0.1.0"

__all__ = [
    "AngleField", "CanonicalMap", "ClassificationReport", "Curve", "Family", "FrenetApparatus",
    "HelixSpec", "RealFunction", "Surface", "Tolerances", "angle_field", "arclength_reparam",
    "build_cone", "build_ruled", "canonical_params", "circular_helix", "classify",
    "closed_form_ruled_normal", "constant_angle_verdict", "eta_from_lambda",
    "fit_direction_to_circle", "frenet_apparatus", "fundamental_forms", "gaussian_curvature",
    "generalized_helix", "geodesic_curvature_spherical", "helix_test", "lambda_profile",
    "normal_surface_residuals", "planar_curve", "spherical_circle", "surface_normal",
    "theorem_a_surface", "verify_translation_equivalence",
]
