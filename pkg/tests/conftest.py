import math
import time

import numpy as np
import pytest

from constangle.curve import arclength_reparam
from constangle.generators import (
    PLANES,
    HelixSpec,
    circle2d,
    circular_helix,
    ellipse2d,
    generalized_helix,
    lambda_profile,
    parabola2d,
    planar_curve,
    spherical_ellipse,
    twisted_cubic,
)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def helices():
    """Every helix generator used across the suite, keyed by a label."""
    out = {}
    for th in (math.pi / 6, math.pi / 4, math.pi / 3):
        out[f"circular-{th:.3f}"] = circular_helix(th)
        for lam in ("s", "s+0.3sin"):
            out[f"{lam}-{th:.3f}"] = generalized_helix(
                HelixSpec(th, lambda_profile(lam)), (0.0, 2 * math.pi))
    return out


@pytest.fixture(scope="session")
def planar_curves():
    return {
        "circle-xy": arclength_reparam(planar_curve(circle2d(1.0))),
        "circle3-xy": arclength_reparam(planar_curve(circle2d(3.0))),
        "parabola-xz": arclength_reparam(planar_curve(parabola2d(), plane_basis=PLANES["xz"])),
        "ellipse-yz": arclength_reparam(
            planar_curve(ellipse2d(2.0, 1.0), plane_origin=(1.0, 0.0, 0.0),
                         plane_basis=PLANES["yz"])),
    }


@pytest.fixture(scope="session")
def twisted():
    return arclength_reparam(twisted_cubic((-1.5, 1.5)))


@pytest.fixture(scope="session")
def sph_ellipse():
    return arclength_reparam(spherical_ellipse())


def interior(domain, rng, count, inset=0.05):
    lo, hi = domain
    pad = inset * (hi - lo)
    return rng.uniform(lo + pad, hi - pad, count)


# -- acceptance reporting -----------------------------------------------------
# test_acceptance records one line per criterion; the lines are printed at the
# end of the run together with the wall time of the whole suite.

ACCEPTANCE = {}
SUITE_BUDGET = 120.0


def record_criterion(number, title, ok, detail=""):
    ACCEPTANCE[number] = (title, bool(ok), detail)


def pytest_sessionstart(session):
    session.config._constangle_t0 = time.perf_counter()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    elapsed = time.perf_counter() - config._constangle_t0
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[number]
        if number == 10:
            ok = ok and elapsed < SUITE_BUDGET
            detail = f"{detail}; suite wall time {elapsed:.1f}s (< {SUITE_BUDGET:.0f}s)"
        tr.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}")
