import math
import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from reldiam import make_disc, make_regular_kgon, make_reuleaux, optimal_body

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def disc():
    return make_disc()


@pytest.fixture(scope="session")
def square():
    # side 2, centered at the origin
    return make_regular_kgon(4, math.sqrt(2), phase=math.pi / 4)


@pytest.fixture(scope="session")
def hexagon():
    return make_regular_kgon(6)


@pytest.fixture(scope="session")
def triangle():
    return make_regular_kgon(3)


@pytest.fixture(scope="session")
def reuleaux3():
    return make_reuleaux(3)


def suite_bodies():
    """(name, body, k) triples covering every body family."""
    out = [("disc", make_disc(), k) for k in (3, 4, 5, 6, 8)]
    out += [(f"E{k}", make_regular_kgon(k), k) for k in (3, 4, 5, 6, 7)]
    out += [(f"reuleaux{k}", make_reuleaux(k), k) for k in (3, 5)]
    out += [(f"optimal{k}", optimal_body(k), k) for k in (3, 5)]
    return out


def stratified_area(inside, bbox, n=1500, seed=0):
    """Jittered-grid Monte Carlo area of {inside(x, y)} within bbox."""
    rng = np.random.default_rng(seed)
    x0, y0, x1, y1 = bbox
    hx, hy = (x1 - x0) / n, (y1 - y0) / n
    i, j = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    xs = x0 + (i + rng.random(i.shape)) * hx
    ys = y0 + (j + rng.random(j.shape)) * hy
    return float(inside(xs, ys).sum()) * hx * hy
