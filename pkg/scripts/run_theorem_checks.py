"""Run every built-in theorem check over a sweep of angles and profiles.

    python scripts/run_theorem_checks.py [--thetas pi/6,pi/4,pi/3]

Exits non-zero if any check fails.
"""
import argparse
import math
import sys
import time

from constangle.specfile import parse_number
from constangle.theorems import (
    check_binormal_surfaces,
    check_canonical_equivalence,
    check_cones,
    check_normal_surfaces,
    check_tangent_developable,
)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--thetas", default="pi/6,pi/4,pi/3")
    args = p.parse_args(argv)
    thetas = [parse_number(x) for x in args.thetas.split(",")]

    jobs = []
    for th in thetas:
        for lam in ("-s", "s", "s+0.3sin"):
            jobs.append((f"tangent developable theta={th:.4f} lambda={lam}",
                         lambda th=th, lam=lam: check_tangent_developable(th, lam)))
        jobs.append((f"canonical form theta={th:.4f} circular",
                     lambda th=th: check_canonical_equivalence(th, "-s")))
    jobs.append(("canonical form theta=pi/5 lambda=s+0.2sin",
                 lambda: check_canonical_equivalence(math.pi / 5, "s+0.2sin")))
    jobs.append(("normal surfaces", check_normal_surfaces))
    jobs.append(("binormal surfaces", check_binormal_surfaces))
    jobs.append(("cones", check_cones))

    failed = 0
    for label, job in jobs:
        t0 = time.perf_counter()
        res = job()
        failed += not res.passed
        print(f"{'PASS' if res.passed else 'FAIL'}  {label}  ({time.perf_counter() - t0:.2f}s)")
        for key, val in res.details.items():
            print(f"        {key}: {val}")
    print(f"{len(jobs) - failed}/{len(jobs)} checks passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
