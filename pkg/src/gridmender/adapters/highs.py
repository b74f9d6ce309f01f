"""Solve an MPS file with SciPy's HiGHS and write a gridmender solution file.

Use as a solver command template::

    GRIDMENDER_SOLVER_CMD="python3 -m gridmender.adapters.highs {mps} {sol}"
"""
from __future__ import annotations

import argparse
import sys

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from ..milp import EQ, GE, LE, MilpModel, Solution, read_mps, write_solution

_STATUS = {0: "optimal", 1: "limit", 2: "infeasible", 3: "unbounded", 4: "limit"}


def solve_highs(m: MilpModel, time_limit: float | None = None, gap: float = 1e-9) -> Solution:
    c, A, senses, rhs, lo, hi, isbin = m.arrays()
    lb_row = np.where((senses == GE) | (senses == EQ), rhs, -np.inf).astype(float)
    ub_row = np.where((senses == LE) | (senses == EQ), rhs, np.inf).astype(float)
    opts = {"mip_rel_gap": gap, "presolve": True}
    if time_limit:
        opts["time_limit"] = time_limit
    cons = [LinearConstraint(A, lb_row, ub_row)] if m.n_rows else []
    res = milp(-c, constraints=cons, integrality=isbin.astype(int), bounds=Bounds(lo, hi), options=opts)
    status = _STATUS.get(res.status, "infeasible")
    if res.x is None:
        return Solution(None, float("nan"), status)
    x = np.asarray(res.x, dtype=float)
    x[isbin] = np.round(x[isbin])
    if status == "limit":
        status = "feasible"
    return Solution(x, m.evaluate(x), status)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="python -m gridmender.adapters.highs", description=__doc__.splitlines()[0])
    ap.add_argument("mps")
    ap.add_argument("sol")
    ap.add_argument("--time-limit", type=float, default=None)
    args = ap.parse_args(argv)
    m = read_mps(args.mps)
    sol = solve_highs(m, args.time_limit)
    write_solution(m, sol, args.sol)
    print(f"{sol.status} {sol.objective!r}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
