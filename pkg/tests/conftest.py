from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from diagratio.geom import Polygon, is_convex_ccw
from diagratio.qfield import QuadExt

settings.register_profile(
    "default", deadline=None, max_examples=200, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

small_fractions = st.fractions(min_value=-50, max_value=50, max_denominator=60)
quadext = st.builds(QuadExt, small_fractions, small_fractions)
nonzero_quadext = quadext.filter(lambda v: v != 0)


@st.composite
def float_affine(draw):
    """Rotation times an upper-triangular matrix with positive diagonal (det > 0)."""
    s1, s2 = draw(st.floats(0.2, 3)), draw(st.floats(0.2, 3))
    k = draw(st.floats(-3, 3))
    th = draw(st.floats(0, 2 * math.pi))
    cs, sn = math.cos(th), math.sin(th)
    return (cs * s1, cs * k - sn * s2, sn * s1, sn * k + cs * s2)


@st.composite
def exact_affine(draw):
    """Integer matrix with positive determinant: a quarter turn times an upper-triangular one."""
    s1, s2 = draw(st.integers(1, 4)), draw(st.integers(1, 4))
    k = draw(st.integers(-4, 4))
    turns = draw(st.integers(0, 3))
    m = (s1, k, 0, s2)
    for _ in range(turns):
        m = (-m[2], -m[3], m[0], m[1])
    return m


@st.composite
def convex_polygons(draw, min_n=3, max_n=10, exact=False):
    """Distinct points on the unit circle under a random orientation-preserving
    affine map; strictly convex by construction. Exact mode uses the rational
    parametrisation ((1-t^2)/(1+t^2), 2t/(1+t^2)), which is monotone in t."""
    n = draw(st.integers(min_n, max_n))
    if exact:
        ts = sorted(draw(st.lists(st.fractions(-12, 12, max_denominator=16), min_size=n, max_size=n, unique=True)))
        pts = [((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)) for t in ts]
        m = draw(exact_affine())
        off = (draw(st.integers(-5, 5)), draw(st.integers(-5, 5)))
    else:
        slots = sorted(draw(st.lists(st.integers(0, 719), min_size=n, max_size=n, unique=True)))
        jitter = draw(st.floats(0, 0.4))
        angles = [2 * math.pi * (k + jitter) / 720 for k in slots]
        pts = [(math.cos(a), math.sin(a)) for a in angles]
        m = draw(float_affine())
        off = (draw(st.floats(-5, 5)), draw(st.floats(-5, 5)))
    P = Polygon(tuple(pts)).affine(((m[0], m[1]), (m[2], m[3])), off)
    assume(is_convex_ccw(P))
    return P


@st.composite
def valid_params(draw, exact=False):
    """(a, b, c, d) inside the convex-pentagon domain."""
    from diagratio.pentagon import PentagonParams

    if exact:
        num = st.fractions(min_value=Fraction(1, 20), max_value=20, max_denominator=50)
        a, b = draw(num), draw(num)
        c = 1 + draw(st.fractions(min_value=0, max_value=10, max_denominator=50))
        d = 1 + draw(st.fractions(min_value=0, max_value=10, max_denominator=50))
    else:
        a = math.exp(draw(st.floats(math.log(0.05), math.log(20))))
        b = math.exp(draw(st.floats(math.log(0.05), math.log(20))))
        c = 1 + math.exp(draw(st.floats(math.log(1e-3), math.log(19))))
        d = 1 + math.exp(draw(st.floats(math.log(1e-3), math.log(19))))
    p = PentagonParams(a, b, c, d)
    assume(p.is_valid())
    return p


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    # expose per-phase reports so fixtures can see the call outcome
    outcome = yield
    rep = outcome.get_result()
    setattr(item, "rep_" + rep.when, rep)
