"""Zone-wise power and gas demand response."""
from __future__ import annotations

from ..milp import EQ, GE, LE, MilpModel
from ..scenario import DrZone, Scenario, WindowRules
from .rows import emit


class DrEncodingError(ValueError):
    pass


def encode_windows(m: MilpModel, zone_id: str, family: str, rules: WindowRules, D: int, tag: str) -> None:
    """Duration rules on the activation sequence ``family[zone, 1..D]`` (inactive before step 1)."""
    g = [None] + [m.col(family, zone_id, t) for t in range(1, D + 1)]
    emit(m, "dr_total", (zone_id, tag), None, {g[t]: 1.0 for t in range(1, D + 1)}, LE, float(rules.t_max))
    # no run of du_max + 1 consecutive active steps
    dmax = rules.du_max
    for t in range(1, D - dmax + 1):
        emit(m, "dr_event_max", (zone_id, tag), t, {g[t + k]: 1.0 for k in range(dmax + 1)}, LE, float(dmax))
    # an event starting at t lasts at least du_min steps
    dmin = rules.du_min
    if dmin > 0:
        for t in range(1, D - dmin + 2):
            terms = {g[t + k]: 1.0 for k in range(dmin)}
            terms[g[t]] = terms.get(g[t], 0.0) - dmin
            if t > 1:
                terms[g[t - 1]] = terms.get(g[t - 1], 0.0) + dmin
            emit(m, "dr_event_min", (zone_id, tag), t, terms, GE, 0.0)
    # a gap opening at t (event ended at t-1) lasts at least int_min steps
    imin = rules.int_min
    if imin > 0:
        for t in range(2, D - imin + 2):
            # sum(1 - g[t+k]) >= (g[t-1] - g[t]) imin
            terms = {g[t + k]: -1.0 for k in range(imin)}
            terms[g[t - 1]] = terms.get(g[t - 1], 0.0) - imin
            terms[g[t]] = terms.get(g[t], 0.0) + imin
            emit(m, "dr_interval", (zone_id, tag), t, terms, GE, -float(imin))


def _zone_checks(z: DrZone) -> None:
    if max(z.p_base) == 0 and z.sigma_p[1] > 0 and max(z.f_base) == 0 and z.sigma_n[1] > 0:
        raise DrEncodingError(f"zone {z.id}: all-zero base loads with a nonzero reduction ratio")


def encode_dr(s: Scenario, m: MilpModel) -> None:
    D = s.time.horizon_steps
    inc = s.incidence
    for z in s.zones:
        _zone_checks(z)
        for t in s.time.steps:
            emit(m, "dr_gate", (z.id, "P"), t, {m.col("gP", z.id, t): 1.0, m.col("dP", z.pn, t): -1.0}, LE, 0.0)
            emit(m, "dr_gate", (z.id, "N"), t, {m.col("gN", z.id, t): 1.0, m.col("dN", z.gn, t): -1.0}, LE, 0.0)
        encode_windows(m, z.id, "gP", z.tp, D, "P")
        encode_windows(m, z.id, "gN", z.tn, D, "N")
        for t in s.time.steps:
            pb, fb = z.p_base[t - 1], z.f_base[t - 1]
            pdr, fdr = m.col("PDRz", z.id, t), m.col("FDRz", z.id, t)
            gp, gn = m.col("gP", z.id, t), m.col("gN", z.id, t)
            emit(m, "dr_band", (z.id, "P"), t, {pdr: 1.0, gp: -z.sigma_p[0] * pb}, GE, 0.0, "lo")
            emit(m, "dr_band", (z.id, "P"), t, {pdr: 1.0, gp: -z.sigma_p[1] * pb}, LE, 0.0, "hi")
            emit(m, "dr_band", (z.id, "N"), t, {fdr: 1.0, gn: -z.sigma_n[0] * fb}, GE, 0.0, "lo")
            emit(m, "dr_band", (z.id, "N"), t, {fdr: 1.0, gn: -z.sigma_n[1] * fb}, LE, 0.0, "hi")
            emit(m, "dr_reactive", z.id, t, {m.col("QDRz", z.id, t): 1.0, pdr: -z.power_factor}, EQ, 0.0)
            terms = {}
            if pb > 0:
                terms[pdr] = 1.0 / pb
            if fb > 0:
                terms[fdr] = 1.0 / fb
            if terms:
                emit(m, "dr_hcap", z.id, t, terms, LE, z.h_cap)
    for p in s.power_nodes:
        if not p.dr:
            continue
        members = inc.col_members(p.id)
        for t in s.time.steps:
            for fam, zfam in (("PDR", "PDRz"), ("QDR", "QDRz")):
                terms = {m.col(fam, p.id, t): 1.0}
                for gn in members:
                    terms[m.col(zfam, f"{gn}~{p.id}", t)] = -1.0
                emit(m, "dr_aggregate", (p.id, fam), t, terms, EQ, 0.0)
    for g in s.gas_nodes:
        if not g.dr:
            continue
        members = inc.row_members(g.id)
        for t in s.time.steps:
            terms = {m.col("FDR", g.id, t): 1.0}
            for pn in members:
                terms[m.col("FDRz", f"{g.id}~{pn}", t)] = -1.0
            emit(m, "dr_aggregate", (g.id, "FDR"), t, terms, EQ, 0.0)
