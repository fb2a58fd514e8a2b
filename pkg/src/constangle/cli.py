"""Command-line interface: ``constangle <command> ...``."""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from .analysis import angle_field, classify, constant_angle_verdict, sample_normals
from .fitting import brute_force_axis, fit_direction_to_circle
from .grid import export_csv, export_obj, sample_grid
from .numkit import Tolerances
from .specfile import SpecError, load_surface, parse_number, parse_vector
from .theorems import CHECKS


def parse_grid(text: str):
    try:
        ns, nv = (int(x) for x in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 20x20, got {text!r}") from None
    if ns < 2 or nv < 2:
        raise argparse.ArgumentTypeError("grid needs at least 2x2 nodes")
    return ns, nv


def _vector(text: str):
    try:
        return parse_vector(text)
    except SpecError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def cmd_generate(args, tol):
    S = load_surface(args.surface, tol)
    fields = [f for f in (args.fields or "").split(",") if f]
    grid = sample_grid(S, *args.grid, fields=fields, direction=args.direction, tol=tol)
    Path(args.out).write_text(export_obj(grid))
    if args.csv:
        Path(args.csv).write_text(export_csv(grid))
    print(f"wrote {len(grid)} vertices to {args.out}")
    return 0


def cmd_analyze(args, tol):
    S = load_surface(args.surface, tol)
    v = constant_angle_verdict(angle_field(S, args.direction, args.grid, tol), tol)
    grid = sample_grid(S, *args.grid, fields=["K"], tol=tol, inset=0.01)
    K = grid.K[np.isfinite(grid.K)]
    print(f"theta_mean={v.theta_mean!r}")
    print(f"max_dev={v.max_dev!r}")
    print(f"is_constant={v.is_constant}")
    print(f"K_min={float(K.min())!r}")
    print(f"K_max={float(K.max())!r}")
    print(f"K_max_abs={float(np.abs(K).max())!r}")
    return 0


def cmd_classify(args, tol):
    report = classify(load_surface(args.surface, tol), tol, args.grid)
    sys.stdout.write(report.to_record())
    return 0


def cmd_fit_axis(args, tol):
    S = load_surface(args.surface, tol)
    _, normals = sample_normals(S, args.grid, tol)
    fit = brute_force_axis(normals, args.resolution) if args.brute_force \
        else fit_direction_to_circle(normals, tol)
    print("axis=" + ",".join(repr(float(x)) for x in fit.axis))
    print(f"theta={fit.theta!r}")
    print(f"residual={fit.residual!r}")
    return 0


def cmd_verify(args, tol):
    theta = parse_number(args.theta) if args.theta else math.pi / 4
    result = CHECKS[args.which](theta, args.lam)
    for line in result.lines():
        print(line)
    return 0 if result.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="constangle",
                                description="Constant angle ruled surfaces toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="sample a surface and export a mesh")
    g.add_argument("--surface", required=True, help="surface spec file")
    g.add_argument("--grid", type=parse_grid, default=(20, 20))
    g.add_argument("--out", required=True, help="OBJ output path")
    g.add_argument("--fields", help="comma list of normals,K,angle")
    g.add_argument("--direction", type=_vector, default=np.array([0.0, 0.0, 1.0]))
    g.add_argument("--csv", help="per-node field CSV output path")
    g.set_defaults(func=cmd_generate)

    a = sub.add_parser("analyze", help="angle field and Gaussian curvature statistics")
    a.add_argument("--surface", required=True)
    a.add_argument("--direction", type=_vector, required=True)
    a.add_argument("--grid", type=parse_grid, default=(20, 20))
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("classify", help="print the classification record")
    c.add_argument("--surface", required=True)
    c.add_argument("--grid", type=parse_grid, default=(16, 16))
    c.set_defaults(func=cmd_classify)

    f = sub.add_parser("fit-axis", help="fit the Gauss-map circle")
    f.add_argument("--surface", required=True)
    f.add_argument("--grid", type=parse_grid, default=(16, 16))
    f.add_argument("--brute-force", action="store_true",
                   help="exhaustive search over a hemisphere grid instead")
    f.add_argument("--resolution", type=int, default=200)
    f.set_defaults(func=cmd_fit_axis)

    v = sub.add_parser("verify-theorem", help="run one of the built-in theorem checks")
    v.add_argument("--which", required=True, choices=sorted(CHECKS))
    v.add_argument("--theta")
    v.add_argument("--lambda", dest="lam")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        tol = Tolerances.from_env()
        return args.func(args, tol)
    # GeometryError and SpecError are both ValueErrors
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
