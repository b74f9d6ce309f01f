"""Independent reference computations for the test suite.

Nothing here calls the package's own solvers: leaf LPs go through
``scipy.optimize.linprog`` (HiGHS) and binaries are enumerated explicitly.
"""
import math

import numpy as np
from scipy.optimize import linprog


def _split(m):
    c, A, senses, rhs, lo, hi, isbin = m.arrays()
    A = A.toarray()
    le = senses == "<="
    ge = senses == ">="
    eq = senses == "="
    return c, A, le, ge, eq, rhs, lo, hi, isbin


def leaf_lp(m, fixed: dict[int, float], parts=None):
    """Best objective with the binaries in ``fixed`` pinned (maximisation), or None if infeasible."""
    c, A, le, ge, eq, rhs, lo, hi, isbin = parts or _split(m)
    lo, hi = lo.copy(), hi.copy()
    for j, v in fixed.items():
        lo[j] = hi[j] = v
    A_ub = np.vstack([A[le], -A[ge]])
    b_ub = np.concatenate([rhs[le], -rhs[ge]])
    bounds = [(lo[j] if math.isfinite(lo[j]) else None, hi[j] if math.isfinite(hi[j]) else None)
              for j in range(len(c))]
    res = linprog(-c, A_ub=A_ub if len(b_ub) else None, b_ub=b_ub if len(b_ub) else None,
                  A_eq=A[eq] if eq.any() else None, b_eq=rhs[eq] if eq.any() else None,
                  bounds=bounds, method="highs")
    if res.status == 2:
        return None
    if res.status == 3:
        return math.inf
    assert res.status == 0, res.message
    return -res.fun


def brute_force(m, prune_binary_rows=True):
    """Maximum over every binary assignment of the leaf LP optimum.

    Returns ``(best objective or None, leaves solved)``.  With
    ``prune_binary_rows`` an assignment is skipped early once a row that
    involves binaries only can no longer hold; such leaves are infeasible,
    so the maximum is unchanged.
    """
    parts = _split(m)
    c, A, le, ge, eq, rhs, lo, hi, isbin = parts
    bins = [int(j) for j in np.flatnonzero(isbin) if lo[j] != hi[j]]
    pinned = {int(j): lo[j] for j in np.flatnonzero(isbin) if lo[j] == hi[j]}
    pure = np.flatnonzero(np.all(A[:, ~isbin] == 0, axis=1) & np.any(A != 0, axis=1)) if prune_binary_rows else []
    P = A[pure][:, bins] if len(pure) else np.zeros((0, len(bins)))
    base = A[pure][:, list(pinned)] @ np.array(list(pinned.values())) if len(pure) and pinned else np.zeros(len(pure))
    prhs = rhs[pure] if len(pure) else np.zeros(0)
    psense = np.array([("le" if le[r] else "ge" if ge[r] else "eq") for r in pure])
    pos_tail = np.zeros((len(bins) + 1, len(pure)))
    neg_tail = np.zeros((len(bins) + 1, len(pure)))
    for k in range(len(bins) - 1, -1, -1):
        pos_tail[k] = pos_tail[k + 1] + np.maximum(P[:, k], 0)
        neg_tail[k] = neg_tail[k + 1] + np.minimum(P[:, k], 0)

    best = [None]
    leaves = [0]
    assign = np.zeros(len(bins))

    def ok(k, act):
        lo_act, hi_act = act + neg_tail[k], act + pos_tail[k]
        tol = 1e-9
        bad = ((psense == "le") & (lo_act > prhs + tol)) | ((psense == "ge") & (hi_act < prhs - tol)) | \
              ((psense == "eq") & ((lo_act > prhs + tol) | (hi_act < prhs - tol)))
        return not bad.any()

    def rec(k, act):
        if not ok(k, act):
            return
        if k == len(bins):
            fixed = dict(pinned)
            fixed.update({j: float(v) for j, v in zip(bins, assign)})
            leaves[0] += 1
            val = leaf_lp(m, fixed, parts)
            if val is not None and (best[0] is None or val > best[0]):
                best[0] = val
            return
        for v in (0.0, 1.0):
            assign[k] = v
            rec(k + 1, act + v * P[:, k])
        assign[k] = 0.0

    rec(0, base.astype(float))
    return best[0], leaves[0]


def trip_simulator(path, initial_site, tau) -> bool:
    """Accept or reject a park/travel itinerary by replaying it trip by trip.

    A resource parked at ``a`` may set off towards ``b``; it then spends at
    least ``tau(a, b)`` steps on the road (more is allowed) before parking at
    ``b``.  Heading back to the current site counts as a zero-length trip.
    """
    if not path or path[0] != ("park", initial_site):
        return False
    here, dest, since = initial_site, None, 0
    for kind, site in path[1:]:
        if dest is None:
            if kind == "park":
                if site != here:
                    return False
            else:
                dest, since = site, 1
            continue
        if kind == "travel":
            if site != dest:
                return False
            since += 1
        else:
            if site != dest or (dest != here and since < tau(here, dest)):
                return False
            here, dest = dest, None
    return True
