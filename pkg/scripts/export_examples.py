"""Export OBJ meshes and per-node field CSVs for the spec files in specs/.

    python scripts/export_examples.py [--out meshes] [--grid 40x20]
"""
import argparse
import sys
from pathlib import Path

import numpy as np

from constangle.cli import parse_grid
from constangle.grid import export_csv, export_obj, sample_grid
from constangle.specfile import load_surface

ROOT = Path(__file__).resolve().parent.parent


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--specs", default=str(ROOT / "specs"))
    p.add_argument("--out", default="meshes")
    p.add_argument("--grid", type=parse_grid, default=(40, 20))
    args = p.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    for spec in sorted(Path(args.specs).glob("*.spec")):
        S = load_surface(spec)
        grid = sample_grid(S, *args.grid, fields=["normals", "K", "angle"], direction=(0, 0, 1))
        (out / f"{spec.stem}.obj").write_text(export_obj(grid))
        (out / f"{spec.stem}.csv").write_text(export_csv(grid))
        angle, K = grid.angle[np.isfinite(grid.angle)], grid.K[np.isfinite(grid.K)]
        print(f"{spec.stem:18s} {len(grid):5d} nodes  angle spread {np.ptp(angle):.2e}  "
              f"max|K| {np.abs(K).max():.1e}  singular nodes {int(np.isnan(grid.angle).sum())}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
