"""Demand-response checks with a direct event-based window-rule checker."""
from __future__ import annotations

from typing import Sequence

from ..scenario import Scenario, WindowRules, build_incidence
from .base import Collector, Tolerances


def events(pattern: Sequence[int]) -> list[tuple[int, int]]:
    """Maximal runs of active steps as (first step, length), steps counted from 1."""
    runs, start = [], None
    for t, g in enumerate(list(pattern) + [0], 1):
        if g and start is None:
            start = t
        elif not g and start is not None:
            runs.append((start, t - start))
            start = None
    return runs


def window_violations(pattern: Sequence[int], rules: WindowRules) -> list[tuple[int, str]]:
    """Rule breaches of one activation pattern, as ``(step, rule)``.

    An event may not last longer than ``du_max`` and the active steps may not
    exceed ``t_max`` in total.  An event must last ``du_min`` steps and a
    pause after an event must last ``int_min`` steps, unless the horizon ends
    first.  The pattern is taken as inactive before step 1.
    """
    D = len(pattern)
    bad = []
    if sum(pattern) > rules.t_max:
        bad.append((D, "total duration"))
    runs = events(pattern)
    for start, length in runs:
        if length > rules.du_max:
            bad.append((start, "event too long"))
        if length < rules.du_min and start + rules.du_min - 1 <= D:
            bad.append((start, "event too short"))
    for start, length in runs:
        gap_start = start + length
        if gap_start > D:
            continue
        nxt = [s for s, _ in runs if s > gap_start]
        gap = (nxt[0] if nxt else D + 1) - gap_start
        if gap < rules.int_min and gap_start + rules.int_min - 1 <= D:
            bad.append((gap_start, "interval too short"))
    return bad


def check_dr(s: Scenario, sched, tol: Tolerances | None = None) -> list:
    tol = tol or Tolerances.for_scenario(s)
    out = Collector("dr")
    ab = tol.linear_abs
    T = range(1, s.time.horizon_steps + 1)
    inc = build_incidence(s.zones, [g.id for g in s.gas_nodes], [p.id for p in s.power_nodes])
    for z in s.zones:
        for kind, fam, node_fam, node, rules in (("P", "gP", "dP", z.pn, z.tp), ("N", "gN", "dN", z.gn, z.tn)):
            pattern = []
            for t in T:
                g = sched.get(fam, z.id, t)
                out.binary("dr activation", z.id, t, g)
                pattern.append(1 if g >= 0.5 else 0)
                if g >= 0.5 and sched.get(node_fam, node, t) < 0.5:
                    out.add("dr at unserved node", (z.id, kind), t, 1.0, 0.0)
            for t, why in window_violations(pattern, rules):
                out.add(f"dr window: {why}", (z.id, kind), t, 1.0, 0.0)
        for t in T:
            pb, fb = z.p_base[t - 1], z.f_base[t - 1]
            gp, gn = sched.get("gP", z.id, t) >= 0.5, sched.get("gN", z.id, t) >= 0.5
            pdr, fdr = sched.get("PDRz", z.id, t), sched.get("FDRz", z.id, t)
            out.at_least("dr band", (z.id, "P"), t, pdr, z.sigma_p[0] * pb * gp, ab)
            out.at_most("dr band", (z.id, "P"), t, pdr, z.sigma_p[1] * pb * gp, ab)
            out.at_least("dr band", (z.id, "N"), t, fdr, z.sigma_n[0] * fb * gn, ab)
            out.at_most("dr band", (z.id, "N"), t, fdr, z.sigma_n[1] * fb * gn, ab)
            out.equal("dr reactive", z.id, t, sched.get("QDRz", z.id, t), z.power_factor * pdr, ab)
            ratio = (pdr / pb if pb > 0 else 0.0) + (fdr / fb if fb > 0 else 0.0)
            out.at_most("dr cap", z.id, t, ratio, z.h_cap, ab)
    zone_ids = {(z.gn, z.pn): z.id for z in s.zones}
    for j, pn in enumerate(inc.pns):
        node = s.pn(pn)
        members = [zone_ids[(gn, pn)] for i, gn in enumerate(inc.gns) if inc.matrix[i, j]]
        if not node.dr:
            if members:
                out.add("aggregation mismatch", pn, None, 1.0, 0.0)
            continue
        for t in T:
            out.equal("aggregation mismatch", (pn, "P"), t, sched.get("PDR", pn, t),
                      sum(sched.get("PDRz", z, t) for z in members), ab)
            out.equal("aggregation mismatch", (pn, "Q"), t, sched.get("QDR", pn, t),
                      sum(sched.get("QDRz", z, t) for z in members), ab)
    for i, gn in enumerate(inc.gns):
        node = s.gn(gn)
        members = [zone_ids[(gn, pn)] for j, pn in enumerate(inc.pns) if inc.matrix[i, j]]
        if not node.dr:
            if members:
                out.add("aggregation mismatch", gn, None, 1.0, 0.0)
            continue
        for t in T:
            out.equal("aggregation mismatch", (gn, "F"), t, sched.get("FDR", gn, t),
                      sum(sched.get("FDRz", z, t) for z in members), ab)
    return out.findings
