"""Linearised DistFlow for the power side, flow balance and Weymouth envelope for gas."""
from __future__ import annotations

from ..linearization import polygon_cuts, weymouth_envelope
from ..milp import EQ, GE, LE, MilpModel
from ..scenario import Scenario
from .rows import emit


class NetworkError(ValueError):
    pass


def voltage_big_m(s: Scenario, br) -> float:
    a, b = s.pn(br.from_node), s.pn(br.to_node)
    span = max(a.v2_max, b.v2_max) - min(a.v2_min, b.v2_min)
    return span + 2.0 * (abs(br.r) + abs(br.x)) * br.s_max / s.settings.s_base_kva


def encode_epds(s: Scenario, m: MilpModel) -> None:
    base = s.settings.s_base_kva
    pns = {p.id for p in s.power_nodes}
    for pipe in s.pipelines:
        if pipe.is_compressor and pipe.supply_pn not in pns:
            raise NetworkError(f"compressor {pipe.id}: supply node {pipe.supply_pn!r} unresolved")
    for d in s.depots:
        if d.kind == "ngds_storage" and d.supply_pn not in pns:
            raise NetworkError(f"storage {d.id}: supply node {d.supply_pn!r} unresolved")

    for node in s.power_nodes:
        units = [g for g in s.generators if g.node == node.id] + [e for e in s.energy_storages if e.node == node.id]
        comps = [p for p in s.pipelines if p.is_compressor and p.supply_pn == node.id]
        stgs = [d for d in s.depots if d.kind == "ngds_storage" and d.supply_pn == node.id]
        for t in s.time.steps:
            # injections - withdrawals = 0
            pt, qt = {}, {}

            def add(terms, col, v):
                terms[col] = terms.get(col, 0.0) + v

            for br in s.branches:
                if br.to_node == node.id:
                    add(pt, m.col("Pbr", br.id, t), 1.0)
                    add(qt, m.col("Qbr", br.id, t), 1.0)
                if br.from_node == node.id:
                    add(pt, m.col("Pbr", br.id, t), -1.0)
                    add(qt, m.col("Qbr", br.id, t), -1.0)
            for u in units:
                add(pt, m.col("P", u.id, t), 1.0)
                add(qt, m.col("Q", u.id, t), 1.0)
            if node.substation:
                add(pt, m.col("Psub", node.id, t), 1.0)
                add(qt, m.col("Qsub", node.id, t), 1.0)
            dp = m.col("dP", node.id, t)
            add(pt, dp, -node.p_demand[t - 1])
            add(qt, dp, -node.q_demand[t - 1])
            if node.dr:
                add(pt, m.col("PDR", node.id, t), 1.0)
                add(qt, m.col("QDR", node.id, t), 1.0)
            for c in comps:
                add(pt, m.col("Pcom", c.id, t), -1.0)
                add(qt, m.col("Pcom", c.id, t), -c.power_factor)
            for d in stgs:
                add(pt, m.col("Pstg", d.id, t), -1.0)
                add(qt, m.col("Pstg", d.id, t), -d.power_factor)
            emit(m, "p_balance", node.id, t, pt, EQ, 0.0)
            emit(m, "q_balance", node.id, t, qt, EQ, 0.0)
        for t in list(s.time.steps)[1:]:
            emit(m, "pickup_p", node.id, t, {m.col("dP", node.id, t - 1): 1.0, m.col("dP", node.id, t): -1.0},
                 LE, 0.0)

    n = s.settings.polygon_sides
    for br in s.branches:
        cuts = polygon_cuts(br.s_max, n)
        big = voltage_big_m(s, br)
        for t in s.time.steps:
            p, q = m.col("Pbr", br.id, t), m.col("Qbr", br.id, t)
            # u2_to - u2_from + 2 (r P + x Q) / base  (= 0 on an energised branch)
            terms = {m.col("u2", br.to_node, t): 1.0, m.col("u2", br.from_node, t): -1.0,
                     p: 2.0 * br.r / base, q: 2.0 * br.x / base}
            if br.damaged:
                kap = m.col("kappa", br.id, t)
                lo = dict(terms)
                lo[kap] = -big
                emit(m, "v_drop", br.id, t, lo, GE, -big, "lo")
                hi = dict(terms)
                hi[kap] = big
                emit(m, "v_drop", br.id, t, hi, LE, big, "hi")
            else:
                emit(m, "v_drop", br.id, t, terms, EQ, 0.0)
            for k, c in enumerate(cuts):
                terms = {p: c.alpha, q: c.beta}
                if br.damaged:
                    terms[m.col("kappa", br.id, t)] = -c.rhs
                    emit(m, "branch_capacity", br.id, t, terms, LE, 0.0, f"k{k}")
                else:
                    emit(m, "branch_capacity", br.id, t, terms, LE, c.rhs, f"k{k}")


def encode_ngds(s: Scenario, m: MilpModel) -> None:
    T = list(s.time.steps)
    gns = {g.id: g for g in s.gas_nodes}
    for g in s.gas_nodes:
        for t in T:
            terms = {}

            def add(col, v):
                terms[col] = terms.get(col, 0.0) + v

            for p in s.pipelines:
                if p.to_node == g.id:
                    add(m.col("F", p.id, t), 1.0)
                if p.from_node == g.id:
                    add(m.col("F", p.id, t), -1.0)
            for src in s.sources:
                if src.node == g.id:
                    add(m.col("Lsrc", src.id, t), 1.0)
            for d in s.depots:
                if d.kind == "ngds_storage" and d.gas_node == g.id:
                    add(m.col("Lstg", d.id, t), 1.0)
            add(m.col("dN", g.id, t), -g.f_demand[t - 1])
            if g.dr:
                add(m.col("FDR", g.id, t), 1.0)
            for u in s.generators:
                if u.gas_node == g.id:
                    add(m.col("L", u.id, t), -1.0)
            emit(m, "g_balance", g.id, t, terms, EQ, 0.0)
        for t in T[1:]:
            emit(m, "pickup_n", g.id, t, {m.col("dN", g.id, t - 1): 1.0, m.col("dN", g.id, t): -1.0}, LE, 0.0)

    m_tan = s.settings.weymouth_tangents
    for p in s.pipelines:
        a, b = gns[p.from_node], gns[p.to_node]
        if p.is_compressor:
            if p.supply_pn is None:
                raise NetworkError(f"compressor {p.id} has no supply node")
            zmin2, zmax2 = p.ratio_min ** 2, p.ratio_max ** 2
            m_ratio = max(zmin2 * a.pi2_max - b.pi2_min, b.pi2_max - zmax2 * a.pi2_min, 0.0)
            m_eq = max(a.pi2_max - b.pi2_min, b.pi2_max - a.pi2_min, 0.0)
            m_pow = p.power_coeff * p.f_max
            for t in T:
                lam, pc, f = m.col("Lam", p.id, t), m.col("Pcom", p.id, t), m.col("F", p.id, t)
                pa, pb = m.col("pi2", p.from_node, t), m.col("pi2", p.to_node, t)
                emit(m, "comp_ratio", p.id, t, {pa: zmin2, pb: -1.0, lam: m_ratio}, LE, m_ratio, "min")
                emit(m, "comp_ratio", p.id, t, {pb: 1.0, pa: -zmax2, lam: m_ratio}, LE, m_ratio, "max")
                emit(m, "comp_power", p.id, t, {pc: 1.0, f: -p.power_coeff, lam: m_pow}, LE, m_pow, "up")
                emit(m, "comp_power", p.id, t, {pc: 1.0, f: -p.power_coeff, lam: -m_pow}, GE, -m_pow, "dn")
                emit(m, "comp_bypass", p.id, t, {pa: 1.0, pb: -1.0, lam: -m_eq}, LE, 0.0, "up")
                emit(m, "comp_bypass", p.id, t, {pa: 1.0, pb: -1.0, lam: m_eq}, GE, 0.0, "dn")
                emit(m, "comp_power_off", p.id, t, {pc: 1.0, lam: -m_pow}, LE, 0.0)
                emit(m, "comp_link", p.id, t, {lam: 1.0, m.col("dP", p.supply_pn, t): -1.0}, LE, 0.0)
            continue
        span = max(a.pi2_max - b.pi2_min, b.pi2_max - a.pi2_min)
        env = weymouth_envelope(p.K, p.f_max, m_tan, pressure_range=span)
        M, K, fmax = env.big_m, env.K, env.f_max
        for t in T:
            y, Y, f = m.col("yw", p.id, t), m.col("Yw", p.id, t), m.col("F", p.id, t)
            pa, pb = m.col("pi2", p.from_node, t), m.col("pi2", p.to_node, t)
            emit(m, "wey_flow_sign", p.id, t, {f: 1.0, y: -fmax}, LE, 0.0, "fwd")
            emit(m, "wey_flow_sign", p.id, t, {f: 1.0, y: -fmax}, GE, -fmax, "rev")
            emit(m, "wey_press_sign", p.id, t, {pa: 1.0, pb: -1.0, y: -M}, GE, -M, "fwd")
            emit(m, "wey_press_sign", p.id, t, {pa: 1.0, pb: -1.0, y: -M}, LE, 0.0, "rev")
            sp = [m.col("swp", (p.id, f"h{h}"), t) for h in range(m_tan + 1)]
            sn = [m.col("swn", (p.id, f"h{h}"), t) for h in range(m_tan + 1)]
            emit(m, "wey_select", p.id, t, {**{c: 1.0 for c in sp}, y: -1.0}, EQ, 0.0, "fwd")
            emit(m, "wey_select", p.id, t, {**{c: 1.0 for c in sn}, y: 1.0}, EQ, 1.0, "rev")
            for h, fh in enumerate(env.tangents):
                if fh > 0:
                    # K (2 fh F - fh^2) <= d + M (1 - y); at fh = 0 this is the pressure sign row
                    emit(m, "wey_tangent", p.id, t, {f: 2 * K * fh, pa: -1.0, pb: 1.0, y: M}, LE,
                         M + K * fh * fh, f"fwd{h}")
                    # K (-2 fh F - fh^2) <= -d + M y
                    emit(m, "wey_tangent", p.id, t, {f: -2 * K * fh, pa: 1.0, pb: -1.0, y: -M}, LE,
                         K * fh * fh, f"rev{h}")
                # Y >= d - K (2 fh F - fh^2) - M (1 - swp_h)
                emit(m, "wey_gap", p.id, t, {Y: 1.0, pa: -1.0, pb: 1.0, f: 2 * K * fh, sp[h]: -M}, GE,
                     -M + K * fh * fh, f"fwd{h}")
                # Y >= -d - K (-2 fh F - fh^2) - M (1 - swn_h)
                emit(m, "wey_gap", p.id, t, {Y: 1.0, pa: 1.0, pb: -1.0, f: -2 * K * fh, sn[h]: -M}, GE,
                     -M + K * fh * fh, f"rev{h}")

    for d in s.depots:
        if d.kind != "ngds_storage":
            continue
        for t in T:
            emit(m, "storage_power", d.id, t, {m.col("Pstg", d.id, t): 1.0, m.col("Linj", d.id, t): -d.power_coeff_inj,
                                              m.col("Lwd", d.id, t): -d.power_coeff_wd}, EQ, 0.0)
            dp = m.col("dP", d.supply_pn, t)
            emit(m, "storage_power_link", d.id, t, {m.col("ainj", d.id, t): 1.0, dp: -1.0}, LE, 0.0, "inj")
            emit(m, "storage_power_link", d.id, t, {m.col("awd", d.id, t): 1.0, dp: -1.0}, LE, 0.0, "wd")
