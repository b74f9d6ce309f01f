"""Piecewise fuel curves, polygonal capacity cuts and the Weymouth envelope.

Everything here is a pure function of its arguments.  The formulation turns
these objects into rows; the tests and the validator use them to reason
about what the linear model admits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .scenario import Segment

__all__ = [
    "PiecewiseCurve",
    "HalfPlaneCut",
    "WeymouthEnvelope",
    "fit_piecewise",
    "polygon_cuts",
    "polygon_allowance",
    "weymouth_envelope",
    "default_tangents",
]


@dataclass(frozen=True)
class PiecewiseCurve:
    segments: tuple[Segment, ...]

    def __post_init__(self):
        if not self.segments:
            raise ValueError("curve needs at least one segment")
        for s in self.segments:
            if not s.p_hi > s.p_lo:
                raise ValueError(f"segment [{s.p_lo}, {s.p_hi}] is empty")
            if s.a < 0 or s.b < 0:
                raise ValueError("fuel curve coefficients must be >= 0")
        for s1, s2 in zip(self.segments, self.segments[1:]):
            if s1.p_hi != s2.p_lo:
                raise ValueError(f"segments not contiguous at {s1.p_hi} / {s2.p_lo}")
            y1 = s1.a * s1.p_hi + s1.b
            y2 = s2.a * s2.p_lo + s2.b
            if abs(y1 - y2) > 1e-9 * max(1.0, abs(y1), abs(y2)):
                raise ValueError(f"curve discontinuous at p={s1.p_hi}: {y1} vs {y2}")

    @property
    def p_max(self) -> float:
        return self.segments[-1].p_hi

    @property
    def breakpoints(self) -> np.ndarray:
        return np.array([self.segments[0].p_lo] + [s.p_hi for s in self.segments])

    def __call__(self, p):
        """Fuel rate at load ``p`` (scalar or array); loads outside the domain raise."""
        p_arr = np.asarray(p, dtype=float)
        lo, hi = self.segments[0].p_lo, self.p_max
        if np.any(p_arr < lo - 1e-9) or np.any(p_arr > hi + 1e-9):
            raise ValueError(f"load outside curve domain [{lo}, {hi}]")
        idx = np.searchsorted(self.breakpoints[1:-1], p_arr, side="right")
        a = np.array([s.a for s in self.segments])[idx]
        b = np.array([s.b for s in self.segments])[idx]
        out = a * p_arr + b
        return float(out) if out.ndim == 0 else out

    @property
    def max_value(self) -> float:
        return max(max(s.a * s.p_lo + s.b, s.a * s.p_hi + s.b) for s in self.segments)


def fit_piecewise(points: Sequence[tuple[float, float]]) -> PiecewiseCurve:
    """Piecewise-linear interpolant through ``(load, fuel rate)`` samples.

    >>> fit_piecewise([(0, 0), (100, 30)]).segments[0].a
    0.3
    """
    if len(points) < 2:
        raise ValueError("need at least two (load, fuel) points")
    loads = [float(p[0]) for p in points]
    fuel = [float(p[1]) for p in points]
    for l1, l2 in zip(loads, loads[1:]):
        if l2 == l1:
            raise ValueError(f"duplicate load {l1}")
        if l2 < l1:
            raise ValueError("loads must be strictly increasing")
    if min(fuel) < 0:
        raise ValueError("fuel rates must be >= 0")
    segs = []
    for (p0, f0), (p1, f1) in zip(zip(loads, fuel), zip(loads[1:], fuel[1:])):
        a = (f1 - f0) / (p1 - p0)
        b = f0 - a * p0
        if b < 0 and b > -1e-12 * max(1.0, abs(f0)):
            b = 0.0
        segs.append(Segment(a, b, p0, p1))
    return PiecewiseCurve(tuple(segs))


@dataclass(frozen=True)
class HalfPlaneCut:
    """``alpha * P + beta * Q <= rhs`` with ``(alpha, beta)`` of unit length."""

    alpha: float
    beta: float
    rhs: float

    def admits(self, p, q, tol=0.0):
        return self.alpha * np.asarray(p) + self.beta * np.asarray(q) <= self.rhs + tol


def polygon_cuts(S: float, n: int) -> list[HalfPlaneCut]:
    """``n`` tangent half-planes of the circle of radius ``S`` (a regular circumscribed n-gon)."""
    if not (isinstance(n, (int, np.integer)) and n >= 4 and n % 2 == 0):
        raise ValueError(f"polygon needs an even number of sides >= 4, got {n}")
    if not S > 0:
        raise ValueError(f"apparent capacity must be > 0, got {S}")
    cuts = []
    for k in range(n):
        th = 2.0 * math.pi * k / n
        a, b = math.cos(th), math.sin(th)
        # snap the axis-aligned directions so the n=4 square is exact
        a = 0.0 if abs(a) < 1e-15 else a
        b = 0.0 if abs(b) < 1e-15 else b
        cuts.append(HalfPlaneCut(a, b, float(S)))
    return cuts


def polygon_allowance(n: int) -> float:
    """Worst relative over-admission of the n-gon against its inscribed circle."""
    return 1.0 / math.cos(math.pi / n) - 1.0


def default_tangents(f_max: float, m: int) -> np.ndarray:
    """Zero flow plus ``m`` evenly spaced points ``2k F_max / (2m+1)``, k = 1..m.

    The interior points are shifted so the gap is balanced at both ends of
    ``[0, F_max]``; together with the zero-flow tangent the worst
    underestimation error anywhere is ``K (F_max / (2m+1))**2``.
    """
    if m < 2:
        raise ValueError("need at least two tangent points")
    return f_max * 2.0 * np.arange(0, m + 1) / (2 * m + 1)


@dataclass(frozen=True)
class WeymouthEnvelope:
    """Linear envelope of ``d = sgn(F) K F**2`` for one passive pipeline.

    With ``d = pi2_from - pi2_to`` and a direction binary ``y`` (1 for flow
    from -> to), the envelope consists of

    * flow sign:      ``-F_max (1-y) <= F <= F_max y``
    * pressure sign:  ``-M (1-y) <= d <= M y``
    * tangent cuts:   ``K (2 Fh F - Fh**2) <= d + M (1-y)`` and the mirror
      ``K (-2 Fh F - Fh**2) <= -d + M y`` for every tangent point ``Fh``
    * gap slack:      one selector binary per tangent and direction,
      ``sum(sel_fwd) = y``, ``sum(sel_rev) = 1 - y`` and
      ``Y >= d - K (2 Fh F - Fh**2) - M (1 - sel_fwd[h])`` (mirrored).

    ``Y`` therefore bounds the distance from ``d`` to the chosen tangent;
    its minimum is the gap to the best tangent, zero at every tangent point.
    """

    K: float
    f_max: float
    tangents: np.ndarray
    big_m: float

    def tangent_value(self, F):
        """Best tangent underestimate of ``K F**2`` (for F >= 0), floored at zero."""
        F = np.asarray(F, dtype=float)
        vals = self.K * (2.0 * np.multiply.outer(F, self.tangents) - self.tangents ** 2)
        return np.maximum(vals.max(axis=-1), 0.0)

    def min_gap(self, F: float, d: float) -> float | None:
        """Smallest feasible ``Y`` for a given ``(F, d)``, or None if the point is cut off.

        Both directions are tried; this is the reference evaluation of the
        envelope rows, by direct enumeration of the binaries.
        """
        best = None
        for y in (1, 0):
            rows_ok, gap = self._eval(F, d, y)
            if rows_ok and (best is None or gap < best):
                best = gap
        return best

    def _eval(self, F, d, y):
        tol = 1e-9 * max(1.0, self.big_m)
        M = self.big_m
        if F > self.f_max * y + tol or F < -self.f_max * (1 - y) - tol:
            return False, None
        if d < -M * (1 - y) - tol or d > M * y + tol:
            return False, None
        Fh = self.tangents
        if np.any(self.K * (2 * Fh * F - Fh ** 2) > d + M * (1 - y) + tol):
            return False, None
        if np.any(self.K * (-2 * Fh * F - Fh ** 2) > -d + M * y + tol):
            return False, None
        if y == 1:
            gaps = d - self.K * (2 * Fh * F - Fh ** 2)
        else:
            gaps = -d - self.K * (-2 * Fh * F - Fh ** 2)
        return True, max(0.0, float(gaps.min()))


def weymouth_envelope(K: float, f_max: float, m: int = 5, big_m: float | None = None,
                      tangents: Sequence[float] | None = None, pressure_range: float = 0.0) -> WeymouthEnvelope:
    """Build the envelope for a pipe with constant ``K`` and capacity ``f_max``.

    ``pressure_range`` is the largest possible ``|pi2_from - pi2_to|``; the
    big-M defaults to ``pressure_range + 3 K f_max**2``, which bounds every
    released row.
    """
    if not K > 0 or not f_max > 0:
        raise ValueError("K and f_max must be > 0")
    if tangents is None:
        pts = default_tangents(f_max, m)
    else:
        pts = np.asarray(sorted(float(v) for v in tangents))
        if len(pts) < 2 or np.any(np.diff(pts) <= 0):
            raise ValueError("need at least two strictly increasing tangent points")
        if pts[0] < 0 or pts[-1] > f_max:
            raise ValueError("tangent points must lie in [0, f_max]")
    if big_m is None:
        big_m = pressure_range + 3.0 * K * f_max ** 2
    return WeymouthEnvelope(float(K), float(f_max), pts, float(big_m))
