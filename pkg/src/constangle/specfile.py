"""Surface specification files.

A spec is plain ``key = value`` text; ``#`` starts a comment. Numbers may be
written as arithmetic over ``pi`` (``pi/6``, ``2*pi``), ranges as two
numbers separated by a comma. Keys:

    family      tangent-developable | normal | binormal | cone | theorem-a
    curve       circular-helix | generalized-helix | planar | spherical-circle
                | spherical-ellipse | twisted-cubic | polyline
    theta       helix / canonical-surface angle
    lambda      builtin turning profile (-s, s, 2s, s+0.3sin, s+0.2sin)
    lambda_table  CSV with columns s,lambda (cubic spline), instead of lambda
    phi         colatitude of spherical-circle
    shape       planar shape: circle | parabola | ellipse
    radius, a, b, height   shape parameters
    plane       xy | xz | yz (planar curves)
    polyline    CSV with columns t,x,y,z (cubic spline through the samples)
    s_range     curve parameter range (defaults per generator)
    v_range     ruling parameter range
    eta         theorem-a profile: zero | sin | cos | half-pi-minus | from-lambda
    u1_range, u2_range   theorem-a parameter ranges
"""
from __future__ import annotations

import ast
import csv
import math
import operator
from pathlib import Path
from typing import Dict, Tuple

import numpy as np

from .curve import Curve, arclength_reparam
from .generators import (
    PLANES,
    SHAPES,
    HelixSpec,
    circular_helix,
    generalized_helix,
    lambda_profile,
    planar_curve,
    spherical_circle,
    spherical_ellipse,
    twisted_cubic,
)
from .canonical import eta_from_lambda
from .numkit import DEFAULT_TOL, RealFunction, Tolerances
from .surface import Family, Surface, build_cone, build_ruled, theorem_a_surface


class SpecError(ValueError):
    pass


_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
        ast.Div: operator.truediv, ast.Pow: operator.pow, ast.USub: operator.neg,
        ast.UAdd: operator.pos}


def parse_number(text: str) -> float:
    """Evaluate a numeric literal or arithmetic expression over ``pi``."""
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.operand))
        raise SpecError(f"not a number: {text!r}")
    try:
        return ev(ast.parse(text.strip(), mode="eval"))
    except SyntaxError:
        raise SpecError(f"not a number: {text!r}") from None


def parse_range(text: str) -> Tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise SpecError(f"range needs two values: {text!r}")
    lo, hi = (parse_number(p) for p in parts)
    if not lo < hi:
        raise SpecError(f"empty range: {text!r}")
    return lo, hi


def parse_vector(text: str) -> np.ndarray:
    vals = [parse_number(p) for p in text.split(",")]
    if len(vals) != 3:
        raise SpecError(f"need three components: {text!r}")
    return np.array(vals)


def read_spec(text: str) -> Dict[str, str]:
    spec = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecError(f"line {lineno}: expected key = value")
        key, value = (x.strip() for x in line.split("=", 1))
        spec[key.lower()] = value
    return spec


def _spline_table(path: Path, columns):
    from scipy.interpolate import CubicSpline

    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    try:
        data = np.array([[float(r[c]) for c in columns] for r in rows])
    except KeyError as exc:
        raise SpecError(f"{path}: missing column {exc}") from None
    except ValueError as exc:
        raise SpecError(f"{path}: {exc}") from None
    return data[:, 0], CubicSpline(data[:, 0], data[:, 1:], axis=0)


def polyline_curve(path: Path) -> Curve:
    t, spl = _spline_table(path, ("t", "x", "y", "z"))
    derivs = tuple((lambda x, k=k: spl(x, k)) for k in (1, 2, 3))
    return Curve(lambda x: spl(x), (float(t[0]), float(t[-1])), derivs, name="polyline")


def lambda_table(path: Path) -> RealFunction:
    s, spl = _spline_table(path, ("s", "lambda"))
    derivs = tuple((lambda x, k=k: float(spl(x, k)[0])) for k in (1, 2, 3))
    return RealFunction(lambda x: float(spl(x)[0]), (float(s[0]), float(s[-1])), derivs,
                        name=str(path))


ETAS = {
    "zero": lambda: RealFunction(lambda t: 0.0, name="zero"),
    "sin": lambda: RealFunction(math.sin, name="sin"),
    "cos": lambda: RealFunction(math.cos, name="cos"),
    "half-pi-minus": lambda: RealFunction(lambda t: math.pi / 2 - t, name="half-pi-minus"),
}

FAMILIES = {
    "tangent-developable": Family.TANGENT_DEVELOPABLE,
    "normal": Family.NORMAL,
    "binormal": Family.BINORMAL,
}


def _lambda(spec, base: Path) -> RealFunction:
    if "lambda_table" in spec:
        return lambda_table(base / spec["lambda_table"])
    return lambda_profile(spec.get("lambda", "-s"))


def build_curve(spec: Dict[str, str], base: Path = Path("."),
                tol: Tolerances = DEFAULT_TOL) -> Curve:
    """Arc-length curve described by the spec's curve keys."""
    name = spec.get("curve")
    rng = parse_range(spec["s_range"]) if "s_range" in spec else None
    if name == "circular-helix":
        theta = parse_number(spec.get("theta", "pi/4"))
        return circular_helix(theta, rng or (0.0, 2 * math.pi))
    if name == "generalized-helix":
        theta = parse_number(spec.get("theta", "pi/4"))
        return generalized_helix(HelixSpec(theta, _lambda(spec, base)), rng or (0.0, 2 * math.pi), tol)
    if name == "spherical-circle":
        return spherical_circle(parse_number(spec.get("phi", "pi/3")), rng)
    if name == "planar":
        shape = spec.get("shape", "circle")
        if shape not in SHAPES:
            raise SpecError(f"unknown shape {shape!r}")
        kwargs = {k: parse_number(spec[k]) for k in ("radius", "a", "b") if k in spec}
        if rng:
            kwargs["domain"] = rng
        basis = PLANES.get(spec.get("plane", "xy"))
        if basis is None:
            raise SpecError(f"unknown plane {spec['plane']!r}")
        return arclength_reparam(planar_curve(SHAPES[shape](**kwargs), plane_basis=basis,
                                              name=f"planar-{shape}"), tol)
    if name == "spherical-ellipse":
        kwargs = {k: parse_number(spec[k]) for k in ("a", "b", "height") if k in spec}
        return arclength_reparam(spherical_ellipse(**kwargs, **({"t_range": rng} if rng else {})), tol)
    if name == "twisted-cubic":
        return arclength_reparam(twisted_cubic(rng or (-1.0, 1.0)), tol)
    if name == "polyline":
        return arclength_reparam(polyline_curve(base / spec["polyline"]), tol)
    raise SpecError(f"unknown curve {name!r}")


def build_surface(spec: Dict[str, str], base: Path = Path("."),
                  tol: Tolerances = DEFAULT_TOL) -> Surface:
    family = spec.get("family")
    if family in FAMILIES:
        c = build_curve(spec, base, tol)
        return build_ruled(c, FAMILIES[family], parse_range(spec.get("v_range", "-1, 1")), tol)
    if family == "cone":
        c = build_curve(spec, base, tol)
        return build_cone(c, parse_range(spec.get("v_range", "0, 2")), tol)
    if family == "theorem-a":
        theta = parse_number(spec.get("theta", "pi/4"))
        name = spec.get("eta", "zero")
        if name == "from-lambda":
            eta = eta_from_lambda(_lambda(spec, base), tol)
        elif name in ETAS:
            eta = ETAS[name]()
        else:
            raise SpecError(f"unknown eta {name!r}")
        return theorem_a_surface(theta, eta, parse_range(spec.get("u1_range", "0.5, 2")),
                                 parse_range(spec.get("u2_range", "0, 2*pi")), tol)
    raise SpecError(f"unknown family {family!r}")


def load_surface(path, tol: Tolerances = DEFAULT_TOL) -> Surface:
    path = Path(path)
    try:
        return build_surface(read_spec(path.read_text()), path.parent, tol)
    except KeyError as exc:
        raise SpecError(f"{path}: missing key {exc}") from None
