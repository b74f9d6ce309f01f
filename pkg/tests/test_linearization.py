import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridmender.linearization import (
    default_tangents,
    fit_piecewise,
    polygon_allowance,
    polygon_cuts,
    weymouth_envelope,
)


# ---- piecewise fuel curves -------------------------------------------------

def test_two_point_line():
    c = fit_piecewise([(0, 0), (100, 30)])
    assert len(c.segments) == 1
    seg = c.segments[0]
    assert seg.a == pytest.approx(0.3) and seg.b == 0.0
    assert (seg.p_lo, seg.p_hi) == (0.0, 100.0)


def test_three_points_interpolate_at_25():
    c = fit_piecewise([(0, 5), (50, 18), (100, 30)])
    assert len(c.segments) == 2
    assert c(25) == pytest.approx(11.5, rel=1e-12)


@pytest.mark.parametrize("pts", [[(0, 7), (0, 8)], [(0, 1), (10, 2), (5, 3)], [(0, 1)], [(0, -1), (1, 2)],
                                 [(0, 1), (1, 0)], [(0, 0), (10, 1), (20, 100)]])
def test_bad_points_rejected(pts):
    with pytest.raises(ValueError):
        fit_piecewise(pts)


def test_load_outside_domain_rejected():
    with pytest.raises(ValueError):
        fit_piecewise([(0, 0), (10, 3)])(11)


@st.composite
def curve_points(draw):
    """Concave nondecreasing samples: every segment then has a >= 0 and b >= 0."""
    n = draw(st.integers(2, 6))
    steps = draw(st.lists(st.floats(1.0, 200.0), min_size=n - 1, max_size=n - 1))
    slopes = sorted(draw(st.lists(st.floats(0.0, 2.0), min_size=n - 1, max_size=n - 1)), reverse=True)
    f0 = draw(st.floats(0.0, 50.0))
    loads = np.concatenate([[0.0], np.cumsum(steps)])
    fuel = np.concatenate([[f0], f0 + np.cumsum(np.array(slopes) * np.array(steps))])
    return list(zip(loads.tolist(), fuel.tolist()))


@settings(max_examples=60, deadline=None)
@given(curve_points(), st.integers(0, 2**32 - 1))
def test_curve_matches_interpolation_oracle(points, seed):
    c = fit_piecewise(points)
    loads = [p for p, _ in points]
    fuel = [f for _, f in points]
    p = np.random.default_rng(seed).uniform(loads[0], loads[-1], 1000)
    expected = np.interp(p, loads, fuel)
    got = c(p)
    assert np.all(np.abs(got - expected) <= 1e-9 * np.maximum(1.0, np.abs(expected)))
    for (pl, fl) in points:
        assert c(pl) == pytest.approx(fl, rel=1e-9, abs=1e-9)


# ---- polygonal capacity cuts -----------------------------------------------

def test_square_case():
    cuts = polygon_cuts(1.0, 4)
    got = sorted((c.alpha, c.beta, c.rhs) for c in cuts)
    assert got == sorted([(1.0, 0.0, 1.0), (0.0, 1.0, 1.0), (-1.0, 0.0, 1.0), (0.0, -1.0, 1.0)])


def test_octagon_points():
    cuts = polygon_cuts(1.0, 8)
    assert not all(c.admits(1.08, 0.0) for c in cuts)
    assert all(c.admits(0.9, 0.3) for c in cuts)


@pytest.mark.parametrize("n", [4, 6, 8, 12, 32])
def test_origin_strictly_inside(n):
    assert all(c.alpha * 0 + c.beta * 0 < c.rhs for c in polygon_cuts(3.0, n))


def test_cuts_are_unit_normalised():
    for c in polygon_cuts(2.0, 12):
        assert math.hypot(c.alpha, c.beta) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("S,n", [(0.0, 8), (-1.0, 8), (1.0, 3), (1.0, 7), (1.0, 2)])
def test_bad_polygon_arguments(S, n):
    with pytest.raises(ValueError):
        polygon_cuts(S, n)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([4, 6, 8, 10, 12, 16, 32]), st.floats(0.1, 1e4), st.floats(0, 2 * math.pi))
def test_circle_inside_polygon_inside_outer_circle(n, S, theta):
    cuts = polygon_cuts(S, n)
    p, q = S * math.cos(theta), S * math.sin(theta)
    assert all(c.admits(p, q, tol=1e-9 * S) for c in cuts)
    # the polygon vertex in direction theta
    r = S / max(c.alpha * math.cos(theta) + c.beta * math.sin(theta) for c in cuts)
    assert r <= S / math.cos(math.pi / n) * (1 + 1e-12)
    assert r >= S * (1 - 1e-12)


def test_allowance_at_twelve_sides():
    assert polygon_allowance(12) == pytest.approx(0.0353, abs=1e-4)


# ---- Weymouth envelope -----------------------------------------------------

def test_default_tangents_increasing_inside_range():
    t = default_tangents(100.0, 5)
    assert len(t) == 6 and t[0] == 0.0 and np.all(np.diff(t) > 0) and t[-1] <= 100
    # interior spacing and the distance from the last point to F_max balance the gap
    assert np.allclose(np.diff(t), 200.0 / 11) and 100.0 - t[-1] == pytest.approx(100.0 / 11)


def test_zero_flow_fixed_point():
    env = weymouth_envelope(0.5, 10.0, m=3, pressure_range=2.0)
    assert env.min_gap(0.0, 0.0) == 0.0
    for y in (0, 1):
        ok, gap = env._eval(0.0, 0.0, y)
        assert ok and gap == 0.0


def test_minimal_gap_zero_at_tangent_points():
    K, fmax = 0.02, 50.0
    env = weymouth_envelope(K, fmax, m=5, pressure_range=1.0)
    for Fh in env.tangents:
        assert env.min_gap(Fh, K * Fh ** 2) == pytest.approx(0.0, abs=1e-12)
        assert env.min_gap(-Fh, -K * Fh ** 2) == pytest.approx(0.0, abs=1e-12)


def test_two_tangent_stencil_value():
    # tangents {0, 10}, K=1, F=5, d=25.  Enumerated by hand over both stencils:
    # forward direction, tangent 0: 25 - 0 = 25; tangent 10: 25 - (2*10*5 - 100) = 25.
    # The reverse direction is cut off by the flow sign rows.  Minimal Y = 25.
    env = weymouth_envelope(1.0, 10.0, tangents=[0.0, 10.0], pressure_range=100.0)
    assert env.min_gap(5.0, 25.0) == pytest.approx(25.0, abs=1e-12)
    assert env._eval(5.0, 25.0, 0)[0] is False


def test_true_points_are_envelope_feasible_with_small_gap():
    K, fmax, m = 3e-4, 120.0, 5
    env = weymouth_envelope(K, fmax, m=m, pressure_range=2.0)
    worst = K * (fmax / (2 * m + 1)) ** 2
    for F in np.linspace(-fmax, fmax, 401):
        gap = env.min_gap(F, math.copysign(K * F * F, F))
        assert gap is not None
        assert gap <= worst * (1 + 1e-9) + 1e-15


@pytest.mark.parametrize("kw", [dict(K=0, f_max=1), dict(K=1, f_max=0), dict(K=1, f_max=1, m=1),
                                dict(K=1, f_max=1, tangents=[0.5]), dict(K=1, f_max=1, tangents=[0.2, 2.0]),
                                dict(K=1, f_max=1, tangents=[0.5, 0.5])])
def test_bad_envelope_arguments(kw):
    with pytest.raises(ValueError):
        weymouth_envelope(**kw)
