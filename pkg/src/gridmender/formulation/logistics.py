"""Mobile resources on the time-expanded site graph, and branch repair."""
from __future__ import annotations

from ..milp import EQ, LE, MilpModel
from ..scenario import Scenario
from .rows import emit


class LogisticsError(ValueError):
    pass


def encode_mobility(s: Scenario, m: MilpModel) -> None:
    """Park-or-travel state machine for every mobile resource.

    * exactly one state per step: parked at a site or travelling towards one
    * parkings at different sites are more than the travel time apart
    * a parking continues a parking or ends a trip to the same site
    * a trip continues until the resource parks at its destination
    * step 1 finds the resource parked at its initial site (column bounds)
    """
    T = list(s.time.steps)
    D = len(T)
    table = set(s.travel.sites)
    for j in s.mobiles:
        sites = j.all_sites
        missing = [i for i in sites if i not in table]
        if missing:
            raise LogisticsError(f"mobile {j.id}: site {missing[0]!r} not in travel table")
        for t in T:
            terms = {m.col("x", (j.id, i), t): 1.0 for i in sites}
            terms.update({m.col("y", (j.id, i), t): 1.0 for i in sites})
            emit(m, "mob_state", j.id, t, terms, EQ, 1.0)
        for a in sites:
            for b in sites:
                if a == b:
                    continue
                tau = s.travel(a, b)
                for t in T:
                    for k in range(1, tau + 1):
                        if t + k > D:
                            break
                        emit(m, "mob_separation", (j.id, a, b), t,
                             {m.col("x", (j.id, a), t): 1.0, m.col("x", (j.id, b), t + k): 1.0}, LE, 1.0, f"k{k}")
        for i in sites:
            for t in T[1:]:
                x_now, x_prev = m.col("x", (j.id, i), t), m.col("x", (j.id, i), t - 1)
                y_now, y_prev = m.col("y", (j.id, i), t), m.col("y", (j.id, i), t - 1)
                emit(m, "mob_arrival", (j.id, i), t, {x_now: 1.0, x_prev: -1.0, y_prev: -1.0}, LE, 0.0)
                emit(m, "mob_persist", (j.id, i), t, {y_prev: 1.0, y_now: -1.0, x_now: -1.0}, LE, 0.0)


def encode_repair(s: Scenario, m: MilpModel) -> None:
    """Crew-count dependent repair progress and the return-to-service gate."""
    crews = s.repair_units
    n = len(crews)
    T = list(s.time.steps)
    for br in s.damaged:
        beta = s.repair.get(br.id)
        if beta is None or len(beta) < n + 1:
            raise LogisticsError(f"branch {br.id}: repair table shorter than fleet size + 1")
        here = [j for j in crews if br.id in j.all_sites]
        for t in T:
            bs = [m.col("b", (br.id, f"y{k}"), t) for k in range(n + 1)]
            terms = {m.col("x", (j.id, br.id), t): 1.0 for j in here}
            for k, c in enumerate(bs):
                terms[c] = terms.get(c, 0.0) - k
            emit(m, "repair_count", br.id, t, terms, EQ, 0.0)
            terms = {m.col("eta", br.id, t): 1.0}
            for k, c in enumerate(bs):
                if beta[k]:
                    terms[c] = -beta[k]
            emit(m, "repair_eff", br.id, t, terms, EQ, 0.0)
            emit(m, "repair_select", br.id, t, {c: 1.0 for c in bs}, EQ, 1.0)
        for t in T[1:]:
            kap = m.col("kappa", br.id, t)
            for j in here:
                emit(m, "repair_abandon", (br.id, j.id), t,
                     {m.col("x", (j.id, br.id), t - 1): 1.0, m.col("x", (j.id, br.id), t): -1.0, kap: -1.0}, LE, 0.0)
            terms = {kap: 1.0}
            for tau in range(1, t):
                terms[m.col("eta", br.id, tau)] = -1.0
            emit(m, "repair_gate", br.id, t, terms, LE, 0.0)
            emit(m, "repair_monotone", br.id, t, {m.col("kappa", br.id, t - 1): 1.0, kap: -1.0}, LE, 0.0)


__all__ = ["encode_mobility", "encode_repair", "LogisticsError"]
