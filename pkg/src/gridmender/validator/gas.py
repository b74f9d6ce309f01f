"""Gas-side checks: balances, exact Weymouth residual, compressors, storages and bands."""
from __future__ import annotations

import math

from ..scenario import Scenario
from .base import Collector, Tolerances


def weymouth_residual(K: float, f_max: float, flow: float, d: float) -> float:
    """|d - sgn(F) K F^2| relative to max(K F_max^2, 1)."""
    return abs(d - math.copysign(K * flow * flow, flow)) / max(K * f_max * f_max, 1.0)


def weymouth_profile(s: Scenario, sched) -> dict[str, list[float]]:
    """Per passive pipeline, the exact Weymouth residual of each step."""
    out = {}
    for p in s.pipelines:
        if p.is_compressor:
            continue
        out[p.id] = [weymouth_residual(p.K, p.f_max, sched.get("F", p.id, t),
                                       sched.get("pi2", p.from_node, t) - sched.get("pi2", p.to_node, t))
                     for t in range(1, s.time.horizon_steps + 1)]
    return out


def check_gas(s: Scenario, sched, tol: Tolerances | None = None) -> list:
    tol = tol or Tolerances.for_scenario(s)
    out = Collector("gas")
    ab = tol.linear_abs
    T = range(1, s.time.horizon_steps + 1)

    for g in s.gas_nodes:
        for t in T:
            dn = sched.get("dN", g.id, t)
            out.binary("pickup value", g.id, t, dn)
            inflow = 0.0
            for p in s.pipelines:
                inflow += ((p.to_node == g.id) - (p.from_node == g.id)) * sched.get("F", p.id, t)
            inflow += sum(sched.get("Lsrc", src.id, t) for src in s.sources if src.node == g.id)
            inflow += sum(sched.get("Lstg", d.id, t) for d in s.depots
                          if d.kind == "ngds_storage" and d.gas_node == g.id)
            if g.dr:
                inflow += sched.get("FDR", g.id, t)
            draw = sum(sched.get("L", u.id, t) for u in s.generators if u.gas_node == g.id)
            out.equal("gas balance", g.id, t, inflow, dn * g.f_demand[t - 1] + draw, ab)
            pi2 = sched.get("pi2", g.id, t)
            out.at_least("pressure band", g.id, t, pi2, g.pi2_min, ab)
            out.at_most("pressure band", g.id, t, pi2, g.pi2_max, ab)
        for t in list(T)[1:]:
            out.at_most("gas pickup monotonicity", g.id, t, sched.get("dN", g.id, t - 1), sched.get("dN", g.id, t), ab)

    for src in s.sources:
        for t in T:
            v = sched.get("Lsrc", src.id, t)
            out.at_least("source band", src.id, t, v, src.out_min[t - 1], ab)
            out.at_most("source band", src.id, t, v, src.out_max[t - 1], ab)

    for p in s.pipelines:
        for t in T:
            f = sched.get("F", p.id, t)
            pa, pb = sched.get("pi2", p.from_node, t), sched.get("pi2", p.to_node, t)
            if not p.is_compressor:
                out.at_most("pipeline flow band", p.id, t, abs(f), p.f_max, ab)
                r = weymouth_residual(p.K, p.f_max, f, pa - pb)
                if r > tol.weymouth_rel:
                    out.add("weymouth residual", p.id, t, r, tol.weymouth_rel)
                continue
            lam = sched.get("Lam", p.id, t)
            pc = sched.get("Pcom", p.id, t)
            out.binary("compressor state", p.id, t, lam)
            out.at_least("pipeline flow band", p.id, t, f, 0.0, ab)
            out.at_most("pipeline flow band", p.id, t, f, p.f_max, ab)
            if lam >= 0.5:
                out.at_least("compression ratio", p.id, t, pb, p.ratio_min ** 2 * pa, ab)
                out.at_most("compression ratio", p.id, t, pb, p.ratio_max ** 2 * pa, ab)
                out.equal("compressor power", p.id, t, pc, p.power_coeff * f, ab)
                out.at_most("compressor unpowered", p.id, t, 1.0, sched.get("dP", p.supply_pn, t), ab)
            else:
                out.equal("bypass violated", p.id, t, pa, pb, ab)
                out.at_most("compressor power off", p.id, t, abs(pc), 0.0, ab)

    for d in s.depots:
        if d.kind != "ngds_storage":
            continue
        for t in T:
            li, lw = sched.get("Linj", d.id, t), sched.get("Lwd", d.id, t)
            out.at_most("storage exclusivity", d.id, t, min(abs(li), abs(lw)), 0.0, ab)
            out.at_least("storage rate band", d.id, t, min(li, lw), 0.0, ab)
            out.at_most("storage rate band", d.id, t, li, d.inj_max, ab)
            out.at_most("storage rate band", d.id, t, lw, d.wd_max, ab)
            out.equal("storage net release", d.id, t, sched.get("Lstg", d.id, t), lw - li, ab)
            pw = d.power_coeff_inj * li + d.power_coeff_wd * lw
            out.equal("storage power", d.id, t, sched.get("Pstg", d.id, t), pw, ab)
            if max(li, lw) > ab and sched.get("dP", d.supply_pn, t) < 0.5:
                out.add("storage unpowered", d.id, t, max(li, lw), ab)

    dt = s.time.step_hours
    for u in s.generators:
        if u.gas_node is None:
            continue
        for t in T:
            lc, cn = sched.get("L", u.id, t), sched.get("CN", u.id, t)
            out.at_least("unit gas draw", u.id, t, lc, 0.0, ab)
            if "gas" in u.onsite:
                out.at_most("unit gas draw", u.id, t, dt * lc, cn, ab)
            else:
                out.equal("unit gas draw", u.id, t, dt * lc, cn, ab)
    return out.findings
