"""Dense bounded-variable primal simplex (two phases, explicit basis inverse).

Small and slow on purpose: it is the reference LP engine underneath the
builtin branch-and-bound, sized for desk-scale models.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

PIVOT_MIN = 1e-10
_PIV_TOL = 1e-9
_OPT_TOL = 1e-9
_REFACTOR_EVERY = 64


class NumericalError(RuntimeError):
    pass


@dataclass
class LpResult:
    status: str  # optimal | infeasible | unbounded | limit
    x: np.ndarray | None
    objective: float
    iterations: int


def solve_lp(c, A, senses, b, lo, hi, max_iter: int = 50_000) -> LpResult:
    """Minimise ``c @ x`` s.t. ``A x (senses) b`` and ``lo <= x <= hi``.

    ``senses`` holds "<=", ">=" or "=" per row; bounds may be infinite.
    """
    c = np.asarray(c, dtype=float)
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    m, n = A.shape
    if np.any(lo > hi + 1e-12):
        return LpResult("infeasible", None, math.nan, 0)
    if m == 0:
        x = np.where(c > 0, lo, np.where(c < 0, hi, np.where(np.isfinite(lo), lo, np.where(np.isfinite(hi), hi, 0.0))))
        if np.any(~np.isfinite(x)):
            return LpResult("unbounded", None, -math.inf, 0)
        return LpResult("optimal", x, float(c @ x), 0)

    # columns: structurals | slacks | artificials
    slo = np.array([0.0 if s == "<=" else (-math.inf if s == ">=" else 0.0) for s in senses])
    shi = np.array([math.inf if s == "<=" else 0.0 for s in senses])
    x0 = np.where(np.isfinite(lo), lo, np.where(np.isfinite(hi), hi, 0.0))
    res = b - A @ x0
    need_art = (res < slo - 1e-12) | (res > shi + 1e-12)
    sign = np.where(res >= 0, 1.0, -1.0)

    N = n + 2 * m
    M = np.zeros((m, N))
    M[:, :n] = A
    M[:, n:n + m] = np.eye(m)
    M[:, n + m:] = np.diag(sign)
    L = np.concatenate([lo, slo, np.zeros(m)])
    U = np.concatenate([hi, shi, np.where(need_art, math.inf, 0.0)])
    x = np.concatenate([x0, np.zeros(m), np.zeros(m)])
    basis = np.empty(m, dtype=int)
    for i in range(m):
        if need_art[i]:
            basis[i] = n + m + i
            x[n + m + i] = abs(res[i])
        else:
            basis[i] = n + i
            x[n + i] = res[i]

    eng = _Engine(M, b, L, U, x, basis)
    cost1 = np.zeros(N)
    cost1[n + m:] = np.where(need_art, 1.0, 0.0)
    iters = 0
    if need_art.any():
        st, it = eng.run(cost1, max_iter)
        iters += it
        if st == "limit":
            return LpResult("limit", None, math.nan, iters)
        infeas = float(eng.x[n + m:].sum())
        if infeas > 1e-7 * max(1.0, float(np.abs(b).max(initial=0.0))):
            return LpResult("infeasible", None, math.nan, iters)
    eng.U[n + m:] = 0.0
    eng.L[n + m:] = 0.0
    cost2 = np.concatenate([c, np.zeros(2 * m)])
    st, it = eng.run(cost2, max_iter - iters)
    iters += it
    if st != "optimal":
        return LpResult(st, None, -math.inf if st == "unbounded" else math.nan, iters)
    xs = eng.x[:n].copy()
    # snap values that drifted just past a bound
    xs = np.minimum(np.maximum(xs, lo), hi)
    return LpResult("optimal", xs, float(c @ xs), iters)


class _Engine:
    def __init__(self, M, b, L, U, x, basis):
        self.M, self.b, self.L, self.U, self.x = M, b, L, U, x
        self.basis = basis
        self.m, self.N = M.shape
        self.is_basic = np.zeros(self.N, dtype=bool)
        self.is_basic[basis] = True
        self.Binv = None
        self.refactor()

    def refactor(self):
        B = self.M[:, self.basis]
        try:
            self.Binv = np.linalg.inv(B)
        except np.linalg.LinAlgError as exc:
            raise NumericalError("singular basis") from exc
        nb = ~self.is_basic
        rhs = self.b - self.M[:, nb] @ self.x[nb]
        self.x[self.basis] = self.Binv @ rhs

    def run(self, cost, max_iter):
        m = self.m
        degenerate = 0
        bland = False
        since_refactor = 0
        for it in range(max_iter):
            y = cost[self.basis] @ self.Binv
            d = cost - y @ self.M
            d[self.is_basic] = 0.0
            xv, L, U = self.x, self.L, self.U
            can_up = (xv < U - 1e-12) & (d < -_OPT_TOL)
            can_dn = (xv > L + 1e-12) & (d > _OPT_TOL)
            cand = np.flatnonzero(can_up | can_dn)
            if cand.size == 0:
                return "optimal", it
            if bland:
                j = int(cand[0])
            else:
                j = int(cand[np.argmax(np.abs(d[cand]))])
            direction = 1.0 if can_up[j] else -1.0
            alpha = self.Binv @ self.M[:, j]
            delta = -direction * alpha  # rate of change of basic values
            xb = xv[self.basis]
            lb, ub = L[self.basis], U[self.basis]
            theta = U[j] - L[j]
            leave = -1
            with np.errstate(divide="ignore", invalid="ignore"):
                dec = delta < -_PIV_TOL
                inc = delta > _PIV_TOL
                ratios = np.full(m, math.inf)
                ratios[dec] = (xb[dec] - lb[dec]) / -delta[dec]
                ratios[inc] = (ub[inc] - xb[inc]) / delta[inc]
            ratios = np.maximum(ratios, 0.0)
            rmin = ratios.min() if m else math.inf
            if rmin < theta:
                ties = np.flatnonzero(ratios <= rmin + 1e-12)
                if bland:
                    leave = int(ties[np.argmin(self.basis[ties])])
                else:
                    leave = int(ties[np.argmax(np.abs(alpha[ties]))])
                theta = ratios[leave]
            if not math.isfinite(theta):
                return "unbounded", it
            # move
            xv[j] += direction * theta
            xv[self.basis] = xb + theta * delta
            if leave < 0:
                pass  # bound flip of the entering column
            else:
                piv = alpha[leave]
                if abs(piv) < PIVOT_MIN:
                    raise NumericalError(f"pivot {piv:.3e} below {PIVOT_MIN}")
                out = self.basis[leave]
                xv[out] = L[out] if delta[leave] < 0 else U[out]
                self.basis[leave] = j
                self.is_basic[out] = False
                self.is_basic[j] = True
                row = self.Binv[leave] / piv
                self.Binv -= np.outer(alpha, row)
                self.Binv[leave] = row
                since_refactor += 1
                if since_refactor >= _REFACTOR_EVERY:
                    self.refactor()
                    since_refactor = 0
            if theta <= 1e-12:
                degenerate += 1
                if degenerate > 10 * m:
                    bland = True
            else:
                degenerate = 0
                bland = False
        return "limit", max_iter
