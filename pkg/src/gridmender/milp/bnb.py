"""Best-first branch-and-bound over binaries, on top of :mod:`.simplex`."""
from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass

import numpy as np

from .model import MilpModel, Solution
from .simplex import solve_lp

INT_TOL = 1e-6


class SizeGuardError(ValueError):
    pass


@dataclass
class Limits:
    node_cap: int = 200_000
    time_cap: float = 600.0
    gap_tol: float = 1e-6
    size_guard: int = 2000


def solve_builtin(m: MilpModel, limits: Limits | None = None) -> Solution:
    """Solve ``m`` to optimality (relative gap ``gap_tol``) or until a limit hits.

    Branching picks the most fractional binary, lowest column id on ties;
    the ``x <= 0`` child is explored before ``x >= 1`` when bounds tie.
    """
    lim = limits or Limits()
    if m.n_cols > lim.size_guard:
        raise SizeGuardError(f"model has {m.n_cols} columns; builtin solver is limited to {lim.size_guard}")
    c, A, senses, rhs, lo, hi, isbin = m.arrays()
    A = A.toarray()
    cmin = -c
    bins = np.flatnonzero(isbin)
    start = time.monotonic()

    def lp(lo_, hi_):
        return solve_lp(cmin, A, senses, rhs, lo_, hi_)

    root = lp(lo, hi)
    if root.status == "infeasible":
        return Solution(None, math.nan, "infeasible", 1)
    if root.status == "unbounded":
        return Solution(None, math.inf, "unbounded", 1)
    if root.status != "optimal":
        return Solution(None, math.nan, "limit", 1)

    best_x, best_obj = None, -math.inf
    seq = 0
    heap = [(-(-root.objective), seq, lo.copy(), hi.copy(), root.x)]
    nodes = 1
    status = "optimal"
    while heap:
        negb, _, nlo, nhi, x = heapq.heappop(heap)
        bound = -negb
        if best_x is not None and bound <= best_obj + lim.gap_tol * max(1.0, abs(best_obj)):
            continue
        if nodes >= lim.node_cap or time.monotonic() - start > lim.time_cap:
            status = "limit"
            break
        xb = x[bins]
        frac = np.abs(xb - np.round(xb))
        if frac.max(initial=0.0) <= INT_TOL:
            cand = _polish(lp, x, bins, nlo, nhi)
            if cand is not None:
                obj = float(c @ cand)
                if obj > best_obj:
                    best_obj, best_x = obj, cand
            continue
        score = np.minimum(frac, 1.0 - frac)
        k = int(np.argmax(score))  # first max -> lowest column id
        j = int(bins[k])
        for val in (0.0, 1.0):
            clo, chi = nlo.copy(), nhi.copy()
            clo[j] = chi[j] = val
            res = lp(clo, chi)
            nodes += 1
            if res.status != "optimal":
                continue
            child_bound = -res.objective
            if best_x is not None and child_bound <= best_obj + lim.gap_tol * max(1.0, abs(best_obj)):
                continue
            seq += 1
            heapq.heappush(heap, (-child_bound, seq, clo, chi, res.x))
    if best_x is None:
        return Solution(None, math.nan, "infeasible" if status == "optimal" else "limit", nodes)
    return Solution(best_x, best_obj, status, nodes)


def _polish(lp, x, bins, lo, hi):
    """Round the binaries of an integral LP point and re-solve the continuous part."""
    flo, fhi = lo.copy(), hi.copy()
    r = np.round(x[bins])
    flo[bins] = r
    fhi[bins] = r
    res = lp(flo, fhi)
    if res.status != "optimal":
        return None
    out = res.x
    out[bins] = r
    return out
