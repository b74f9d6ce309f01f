"""Power-side checks: balances, DistFlow voltages, capacities, units and storage."""
from __future__ import annotations

import math

from ..scenario import Scenario
from .base import Collector, Tolerances


def circle_allowance(n_sides: int) -> float:
    """Relative radius by which a circumscribed n-gon may exceed its circle."""
    return 1.0 / math.cos(math.pi / n_sides) - 1.0


def fuel_rate(segments, p: float) -> float:
    """Exact piecewise-linear fuel rate at output ``p`` (nan outside the curve)."""
    for sg in segments:
        if sg.p_lo - 1e-9 <= p <= sg.p_hi + 1e-9:
            return sg.a * p + sg.b
    return math.nan


def circle_excess(s: Scenario, sched) -> list[dict]:
    """Apparent power of every branch and unit measured against the exact circle."""
    allow = circle_allowance(s.settings.polygon_sides)
    rows = []
    items = [("branch", b.id, "Pbr", "Qbr", b.s_max) for b in s.branches]
    items += [("unit", g.id, "P", "Q", g.s_max) for g in s.generators]
    items += [("unit", e.id, "P", "Q", e.s_max) for e in s.energy_storages]
    for kind, ident, pf, qf, cap in items:
        for t in range(1, s.time.horizon_steps + 1):
            mag = math.hypot(sched.get(pf, ident, t), sched.get(qf, ident, t))
            if mag > cap:
                rows.append({"kind": kind, "entity": ident, "t": t, "excess_rel": mag / cap - 1.0,
                             "within_allowance": mag / cap - 1.0 <= allow})
    return rows


def check_power(s: Scenario, sched, tol: Tolerances | None = None) -> list:
    tol = tol or Tolerances.for_scenario(s)
    out = Collector("power")
    T = range(1, s.time.horizon_steps + 1)
    base = s.settings.s_base_kva
    ab = tol.linear_abs
    allow = circle_allowance(s.settings.polygon_sides)
    kappa = {br.id: [sched.get("kappa", br.id, t) for t in T] for br in s.damaged}

    def within_circle(family, ident, t, p, q, cap):
        mag = math.hypot(p, q)
        out.at_most(family, ident, t, mag, cap * (1.0 + allow) * (1.0 + tol.circle_rel), ab)

    for node in s.power_nodes:
        gens = [g.id for g in s.generators if g.node == node.id] + \
               [e.id for e in s.energy_storages if e.node == node.id]
        comps = [p for p in s.pipelines if p.is_compressor and p.supply_pn == node.id]
        stores = [d for d in s.depots if d.kind == "ngds_storage" and d.supply_pn == node.id]
        for t in T:
            dp = sched.get("dP", node.id, t)
            out.binary("pickup value", node.id, t, dp)
            p_in = q_in = 0.0
            for br in s.branches:
                sign = (br.to_node == node.id) - (br.from_node == node.id)
                p_in += sign * sched.get("Pbr", br.id, t)
                q_in += sign * sched.get("Qbr", br.id, t)
            p_gen = sum(sched.get("P", g, t) for g in gens)
            q_gen = sum(sched.get("Q", g, t) for g in gens)
            p_sub = sched.get("Psub", node.id, t) if node.substation else 0.0
            q_sub = sched.get("Qsub", node.id, t) if node.substation else 0.0
            p_dr = sched.get("PDR", node.id, t) if node.dr else 0.0
            q_dr = sched.get("QDR", node.id, t) if node.dr else 0.0
            p_fac = sum(sched.get("Pcom", c.id, t) for c in comps) + sum(sched.get("Pstg", d.id, t) for d in stores)
            q_fac = sum(c.power_factor * sched.get("Pcom", c.id, t) for c in comps) + \
                sum(d.power_factor * sched.get("Pstg", d.id, t) for d in stores)
            supply_p = p_in + p_gen + p_sub + p_dr
            use_p = dp * node.p_demand[t - 1] + p_fac
            out.equal("active balance", node.id, t, supply_p, use_p, ab)
            out.equal("reactive balance", node.id, t, q_in + q_gen + q_sub + q_dr,
                      dp * node.q_demand[t - 1] + q_fac, ab)
            u2 = sched.get("u2", node.id, t)
            out.at_least("voltage band", node.id, t, u2, node.v2_min, ab)
            out.at_most("voltage band", node.id, t, u2, node.v2_max, ab)
            if node.substation:
                out.at_least("substation limit", node.id, t, p_sub, 0.0, ab)
                out.at_most("substation limit", node.id, t, p_sub, node.grid_p_max, ab)
                out.at_most("substation limit", node.id, t, abs(q_sub), node.grid_q_max, ab)
        for t in list(T)[1:]:
            out.at_most("pickup monotonicity", node.id, t, sched.get("dP", node.id, t - 1),
                        sched.get("dP", node.id, t), ab)

    for br in s.branches:
        for t in T:
            p, q = sched.get("Pbr", br.id, t), sched.get("Qbr", br.id, t)
            live = (not br.damaged) or kappa[br.id][t - 1] >= 0.5
            if live:
                drop = sched.get("u2", br.from_node, t) - 2.0 * (br.r * p + br.x * q) / base
                out.equal("voltage drop", br.id, t, sched.get("u2", br.to_node, t), drop, ab)
                within_circle("branch capacity", br.id, t, p, q, br.s_max)
            else:
                out.at_most("damaged branch flow", br.id, t, math.hypot(p, q), 0.0, ab)

    for g in s.generators:
        _check_generator(s, sched, g, out, tol, within_circle)
    for e in s.energy_storages:
        _check_storage(s, sched, e, out, tol, within_circle)
    return out.findings


def _check_generator(s, sched, g, out, tol, within_circle):
    dt = s.time.step_hours
    ab = tol.linear_abs
    T = range(1, s.time.horizon_steps + 1)
    switches = 0
    prev_mode = None
    for t in T:
        p, q = sched.get("P", g.id, t), sched.get("Q", g.id, t)
        out.at_least("unit reactive band", g.id, t, q, 0.0, ab)
        out.at_most("unit reactive band", g.id, t, q, g.q_max, ab)
        within_circle("unit capacity", g.id, t, p, q, g.s_max)
        if g.fuel == "dual":
            zn, zd = sched.get("zN", g.id, t), sched.get("zD", g.id, t)
            out.binary("dual mode", g.id, t, zn)
            out.equal("dual mode", g.id, t, zn + zd, 1.0, ab)
            active = "gas" if zn >= 0.5 else "diesel"
            outputs = {"gas": sched.get("PN", g.id, t), "diesel": sched.get("PD", g.id, t)}
            out.equal("dual output", g.id, t, p, outputs["gas"] + outputs["diesel"], ab)
            if prev_mode is not None and prev_mode != active:
                switches += 1
            prev_mode = active
        else:
            active = g.modes[0]
            outputs = {active: p}
        for mode in g.modes:
            burnt = sched.get("CN" if mode == "gas" else "CD", g.id, t)
            if mode != active:
                out.at_most("inactive mode", g.id, t, abs(outputs[mode]), 0.0, ab)
                out.at_most("inactive mode", g.id, t, abs(burnt), 0.0, ab)
                continue
            pm = outputs[mode]
            out.at_least("unit output band", g.id, t, pm, 0.0, ab)
            out.at_most("unit output band", g.id, t, pm, g.p_max[mode], ab)
            rate = fuel_rate(g.curves[mode], min(max(pm, 0.0), g.p_max[mode]))
            out.equal("fuel curve", g.id, t, burnt, dt * rate, ab)
    if g.fuel == "dual":
        out.at_most("switch limit", g.id, None, switches, g.max_switches, ab)


def _check_storage(s, sched, e, out, tol, within_circle):
    dt = s.time.step_hours
    ab = tol.linear_abs
    soc = e.soc_initial
    for t in range(1, s.time.horizon_steps + 1):
        pch, pdch = sched.get("Pch", e.id, t), sched.get("Pdch", e.id, t)
        p, q = sched.get("P", e.id, t), sched.get("Q", e.id, t)
        out.at_most("storage exclusivity", e.id, t, min(abs(pch), abs(pdch)), 0.0, ab)
        out.at_least("storage power band", e.id, t, min(pch, pdch), 0.0, ab)
        out.at_most("storage power band", e.id, t, pch, e.p_ch_max, ab)
        out.at_most("storage power band", e.id, t, pdch, e.p_dch_max, ab)
        out.at_most("storage power band", e.id, t, abs(q), e.q_max, ab)
        out.equal("storage output", e.id, t, p, pdch - pch, ab)
        within_circle("unit capacity", e.id, t, p, q, e.s_max)
        soc = soc + e.eff_ch * pch * dt / e.capacity_kwh - pdch * dt / (e.eff_dch * e.capacity_kwh)
        got = sched.get("soc", e.id, t)
        out.equal("state of charge", e.id, t, got, soc, tol.ledger_abs)
        out.at_least("state of charge band", e.id, t, got, e.soc_min, ab)
        out.at_most("state of charge band", e.id, t, got, e.soc_max, ab)
        soc = got
