"""Error budget of the numerical kernels.

Prints finite-difference errors and observed orders on sin, and the Gaussian
curvature of a helix tangent developable computed with analytic partials
versus pure finite differences.

    python scripts/numerics_study.py
"""
import math

import numpy as np

from constangle.generators import circular_helix
from constangle.numkit import fd_derive
from constangle.surface import Family, build_ruled, gaussian_curvature


def fd_table(t=0.7):
    exact = {1: math.cos(t), 2: -math.sin(t), 3: -math.cos(t)}
    hs = [10.0 ** -k for k in np.arange(1.0, 6.5, 0.5)]
    print("finite differences of sin at t = 0.7")
    print(f"{'h':>10} " + " ".join(f"{'order ' + str(o):>12}" for o in exact))
    for h in hs:
        errs = [abs(fd_derive(math.sin, t, o, h) - exact[o]) for o in exact]
        print(f"{h:10.1e} " + " ".join(f"{e:12.2e}" for e in errs))
    print("observed order between h = 1e-2 and 5e-3:")
    for o in exact:
        e1 = abs(fd_derive(math.sin, t, o, 1e-2) - exact[o])
        e2 = abs(fd_derive(math.sin, t, o, 5e-3) - exact[o])
        print(f"  order {o}: {math.log2(e1 / e2):.3f}")


def curvature_table(samples=200, seed=0):
    rng = np.random.default_rng(seed)
    S = build_ruled(circular_helix(math.pi / 6), Family.TANGENT_DEVELOPABLE, (0.1, 1.5))
    fd = S.position_only()
    pts = zip(rng.uniform(0.1, 6.2, samples), rng.uniform(0.15, 1.45, samples))
    k_an, k_fd = zip(*[(gaussian_curvature(S, s, v), gaussian_curvature(fd, s, v)) for s, v in pts])
    print(f"\nGaussian curvature of a helix tangent developable, {samples} random points")
    print(f"  analytic partials: max |K| = {np.max(np.abs(k_an)):.2e}")
    print(f"  finite differences: max |K| = {np.max(np.abs(k_fd)):.2e}")


if __name__ == "__main__":
    fd_table()
    curvature_table()
