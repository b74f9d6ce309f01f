"""Variable families and the declaration pass.

Every column is declared here, before any row is written, so the column
order depends only on the scenario: family by family, entity by entity
(in scenario order), then time step.
"""
from __future__ import annotations

import math

from ..linearization import PiecewiseCurve
from ..milp import MilpModel
from ..scenario import GeneratorSpec, Scenario

MODE_TAG = {"gas": "N", "diesel": "D"}

# family -> one-line meaning; the order is the declaration order
FAMILIES = {
    "P": "active output of a generator or energy storage (kW)",
    "Q": "reactive output of a generator or energy storage (kvar)",
    "PN": "gas-mode output of a dual-fuel unit (kW)",
    "PD": "diesel-mode output of a dual-fuel unit (kW)",
    "CN": "gas burnt in a time step",
    "CD": "diesel burnt in a time step",
    "zN": "dual-fuel unit runs on gas",
    "zD": "dual-fuel unit runs on diesel",
    "lam": "dual-fuel unit switched fuel since the previous step",
    "tauN": "gas-curve segment selector",
    "tauD": "diesel-curve segment selector",
    "L": "gas drawn by a unit straight from its gas node (per hour)",
    "Pch": "storage charging power (kW)",
    "Pdch": "storage discharging power (kW)",
    "ach": "storage is charging",
    "adch": "storage is discharging",
    "soc": "storage state of charge",
    "psi": "fuel held by a depot or tanker at the end of a step",
    "Linj": "gas injected into an NGDS storage (per hour)",
    "Lwd": "gas withdrawn from an NGDS storage (per hour)",
    "ainj": "NGDS storage is injecting",
    "awd": "NGDS storage is withdrawing",
    "Lstg": "net release of an NGDS storage into its gas node (per hour)",
    "Pstg": "electric power drawn by an NGDS storage (kW)",
    "Dtr": "diesel handed from a tanker to a site (negative: taken in)",
    "Ntr": "gas handed from a tanker to a site (negative: taken in)",
    "chi": "tanker may exchange fuel at a site",
    "x": "mobile resource parked at a site",
    "y": "mobile resource travelling towards a site",
    "b": "number-of-crews selector at a damaged branch",
    "eta": "repair progress gained in a step",
    "kappa": "damaged branch back in service",
    "dP": "power load picked up",
    "u2": "squared voltage magnitude (p.u.)",
    "Psub": "active import at the substation (kW)",
    "Qsub": "reactive import at the substation (kvar)",
    "Pbr": "active branch flow, from -> to (kW)",
    "Qbr": "reactive branch flow, from -> to (kvar)",
    "gP": "power demand response active in a zone",
    "gN": "gas demand response active in a zone",
    "PDRz": "zone power reduction (kW)",
    "QDRz": "zone reactive reduction (kvar)",
    "FDRz": "zone gas reduction (per hour)",
    "PDR": "nodal power reduction (kW)",
    "QDR": "nodal reactive reduction (kvar)",
    "FDR": "nodal gas reduction (per hour)",
    "dN": "gas load picked up",
    "pi2": "squared pressure",
    "F": "pipeline flow, from -> to (per hour)",
    "Lsrc": "gas source output (per hour)",
    "Lam": "compressor powered",
    "Pcom": "compressor power draw (kW)",
    "yw": "passive pipeline flows from -> to",
    "Yw": "Weymouth gap slack",
    "swp": "tangent selector, forward direction",
    "swn": "tangent selector, reverse direction",
}

BINARY_FAMILIES = frozenset({"zN", "zD", "lam", "tauN", "tauD", "ach", "adch", "ainj", "awd", "chi", "x", "y",
                             "b", "kappa", "dP", "gP", "gN", "dN", "Lam", "yw", "swp", "swn"})


def curve(gen: GeneratorSpec, mode: str) -> PiecewiseCurve:
    return PiecewiseCurve(tuple(gen.curves[mode]))


def fuel_cap(s: Scenario, gen: GeneratorSpec, mode: str) -> float:
    """Largest fuel amount the unit can burn in one step in ``mode``."""
    return s.time.step_hours * curve(gen, mode).max_value


def always_served(series) -> bool:
    """Nodes without demand are treated as picked up from the start."""
    return max(series) == 0.0


def declare(s: Scenario, m: MilpModel) -> None:
    """Add every column of the model, fully indexed over entities x steps."""
    T = list(s.time.steps)
    dt = s.time.step_hours

    def fam(name, entities, lower, upper, fixed=None):
        binary = name in BINARY_FAMILIES
        for ent in entities:
            lo = lower(ent) if callable(lower) else lower
            hi = upper(ent) if callable(upper) else upper
            for t in T:
                lo_t, hi_t = lo, hi
                if fixed is not None:
                    val = fixed(ent, t)
                    if val is not None:
                        lo_t = hi_t = val
                m.var(name, ent, t, lower=lo_t, upper=hi_t, binary=binary)

    gens = {g.id: g for g in s.generators}
    ess = {e.id: e for e in s.energy_storages}
    duals = [g for g in s.generators if g.fuel == "dual"]

    fam("P", [(g.id,) for g in s.generators] + [(e.id,) for e in s.energy_storages],
        lambda e: -ess[e[0]].p_ch_max if e[0] in ess else 0.0,
        lambda e: ess[e[0]].p_dch_max if e[0] in ess else gens[e[0]].p_cap)
    fam("Q", [(g.id,) for g in s.generators] + [(e.id,) for e in s.energy_storages],
        lambda e: -ess[e[0]].q_max if e[0] in ess else 0.0,
        lambda e: ess[e[0]].q_max if e[0] in ess else gens[e[0]].q_max)
    fam("PN", [(g.id,) for g in duals], 0.0, lambda e: gens[e[0]].p_max["gas"])
    fam("PD", [(g.id,) for g in duals], 0.0, lambda e: gens[e[0]].p_max["diesel"])
    fam("CN", [(g.id,) for g in s.generators if "gas" in g.modes], 0.0,
        lambda e: fuel_cap(s, gens[e[0]], "gas"))
    fam("CD", [(g.id,) for g in s.generators if "diesel" in g.modes], 0.0,
        lambda e: fuel_cap(s, gens[e[0]], "diesel"))
    fam("zN", [(g.id,) for g in duals], 0, 1)
    fam("zD", [(g.id,) for g in duals], 0, 1)
    fam("lam", [(g.id,) for g in duals], 0, 1, fixed=lambda e, t: 0.0 if t == 1 else None)
    for mode in ("gas", "diesel"):
        ents = [(g.id, f"l{l}") for g in s.generators if mode in g.modes
                for l in range(1, len(g.curves[mode]) + 1)]
        fam("tau" + MODE_TAG[mode], ents, 0, 1)
    fam("L", [(g.id,) for g in s.generators if g.gas_node is not None], 0.0,
        lambda e: fuel_cap(s, gens[e[0]], "gas") / dt)

    es = [(e.id,) for e in s.energy_storages]
    fam("Pch", es, 0.0, lambda e: ess[e[0]].p_ch_max)
    fam("Pdch", es, 0.0, lambda e: ess[e[0]].p_dch_max)
    fam("ach", es, 0, 1)
    fam("adch", es, 0, 1)
    fam("soc", es, lambda e: ess[e[0]].soc_min, lambda e: ess[e[0]].soc_max)

    deps = {d.id: d for d in s.depots}
    tankers = {j.id: j for j in s.tankers}
    fam("psi", [(d.id,) for d in s.depots] + [(j.id,) for j in s.tankers], 0.0,
        lambda e: deps[e[0]].capacity if e[0] in deps else tankers[e[0]].capacity)
    stg = [(d.id,) for d in s.depots if d.kind == "ngds_storage"]
    fam("Linj", stg, 0.0, lambda e: deps[e[0]].inj_max)
    fam("Lwd", stg, 0.0, lambda e: deps[e[0]].wd_max)
    fam("ainj", stg, 0, 1)
    fam("awd", stg, 0, 1)
    fam("Lstg", stg, lambda e: -deps[e[0]].inj_max, lambda e: deps[e[0]].wd_max)
    fam("Pstg", stg, 0.0, lambda e: deps[e[0]].power_coeff_inj * deps[e[0]].inj_max
        + deps[e[0]].power_coeff_wd * deps[e[0]].wd_max)

    for tag, kind in (("Dtr", "diesel_tanker"), ("Ntr", "gas_tanker")):
        ents = [(j.id, i) for j in s.tankers if j.kind == kind for i in j.sites]
        fam(tag, ents, lambda e: -tankers[e[0]].in_max, lambda e: tankers[e[0]].out_max)
    fam("chi", [(j.id, i) for j in s.tankers for i in j.sites], 0, 1)

    mob_sites = [(j.id, i) for j in s.mobiles for i in j.all_sites]
    inits = {j.id: j.initial_site for j in s.mobiles}
    fam("x", mob_sites, 0, 1, fixed=lambda e, t: (1.0 if inits[e[0]] == e[1] else 0.0) if t == 1 else None)
    fam("y", mob_sites, 0, 1, fixed=lambda e, t: 0.0 if t == 1 else None)

    n_ru = len(s.repair_units)
    fam("b", [(br.id, f"y{k}") for br in s.damaged for k in range(n_ru + 1)], 0, 1)
    fam("eta", [(br.id,) for br in s.damaged], 0.0, lambda e: max(s.repair[e[0]]))
    fam("kappa", [(br.id,) for br in s.damaged], 0, 1, fixed=lambda e, t: 0.0 if t == 1 else None)

    pns = {p.id: p for p in s.power_nodes}
    fam("dP", [(p.id,) for p in s.power_nodes], 0, 1,
        fixed=lambda e, t: 1.0 if always_served(pns[e[0]].p_demand) else None)
    fam("u2", [(p.id,) for p in s.power_nodes], lambda e: pns[e[0]].v2_min, lambda e: pns[e[0]].v2_max)
    subs = [(p.id,) for p in s.power_nodes if p.substation]
    fam("Psub", subs, 0.0, lambda e: pns[e[0]].grid_p_max)
    fam("Qsub", subs, lambda e: -pns[e[0]].grid_q_max, lambda e: pns[e[0]].grid_q_max)
    brs = {b.id: b for b in s.branches}
    fam("Pbr", [(b.id,) for b in s.branches], lambda e: -brs[e[0]].s_max, lambda e: brs[e[0]].s_max)
    fam("Qbr", [(b.id,) for b in s.branches], lambda e: -brs[e[0]].s_max, lambda e: brs[e[0]].s_max)

    zones = {z.id: z for z in s.zones}
    zs = [(z.id,) for z in s.zones]
    fam("gP", zs, 0, 1)
    fam("gN", zs, 0, 1)
    fam("PDRz", zs, 0.0, lambda e: zones[e[0]].sigma_p[1] * max(zones[e[0]].p_base))

    def q_range(e, side):
        z = zones[e[0]]
        hi = z.sigma_p[1] * max(z.p_base)
        lo, up = sorted((0.0, z.power_factor * hi))
        return lo if side == 0 else up

    fam("QDRz", zs, lambda e: q_range(e, 0), lambda e: q_range(e, 1))
    fam("FDRz", zs, 0.0, lambda e: zones[e[0]].sigma_n[1] * max(zones[e[0]].f_base))
    fam("PDR", [(p.id,) for p in s.power_nodes if p.dr], 0.0, lambda e: max(pns[e[0]].p_demand))
    fam("QDR", [(p.id,) for p in s.power_nodes if p.dr], -math.inf, math.inf)
    gns = {g.id: g for g in s.gas_nodes}
    fam("FDR", [(g.id,) for g in s.gas_nodes if g.dr], 0.0, lambda e: max(gns[e[0]].f_demand))

    fam("dN", [(g.id,) for g in s.gas_nodes], 0, 1,
        fixed=lambda e, t: 1.0 if always_served(gns[e[0]].f_demand) else None)
    fam("pi2", [(g.id,) for g in s.gas_nodes], lambda e: gns[e[0]].pi2_min, lambda e: gns[e[0]].pi2_max)
    pipes = {p.id: p for p in s.pipelines}
    fam("F", [(p.id,) for p in s.pipelines], lambda e: 0.0 if pipes[e[0]].is_compressor else -pipes[e[0]].f_max,
        lambda e: pipes[e[0]].f_max)
    for src in s.sources:
        for t in T:
            m.var("Lsrc", (src.id,), t, lower=src.out_min[t - 1], upper=src.out_max[t - 1])
    comps = [(p.id,) for p in s.pipelines if p.is_compressor]
    fam("Lam", comps, 0, 1)
    fam("Pcom", comps, 0.0, lambda e: pipes[e[0]].power_coeff * pipes[e[0]].f_max)
    passive = [p for p in s.pipelines if not p.is_compressor]
    fam("yw", [(p.id,) for p in passive], 0, 1)
    fam("Yw", [(p.id,) for p in passive], 0.0, math.inf)
    m_tan = s.settings.weymouth_tangents
    # one selector per tangent point, h0 being the zero-flow tangent
    fam("swp", [(p.id, f"h{h}") for p in passive for h in range(m_tan + 1)], 0, 1)
    fam("swn", [(p.id, f"h{h}") for p in passive for h in range(m_tan + 1)], 0, 1)
