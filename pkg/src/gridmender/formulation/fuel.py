"""Fuel burn, dual-fuel switching and fuel exchange between facilities."""
from __future__ import annotations

from ..milp import EQ, GE, LE, MilpModel
from ..scenario import GeneratorSpec, Scenario
from .catalog import MODE_TAG, curve, fuel_cap
from .rows import emit


class EncodingError(ValueError):
    pass


def _output_col(m: MilpModel, gen: GeneratorSpec, mode: str, t: int) -> int:
    if gen.fuel == "dual":
        return m.col("P" + MODE_TAG[mode], gen.id, t)
    return m.col("P", gen.id, t)


def encode_fuel_consumption(s: Scenario, m: MilpModel, gen: GeneratorSpec) -> None:
    """Piecewise fuel curve per fuel mode, selected by segment binaries.

    Fuel is an amount per step, ``C = dt (a P + b)`` on the active segment.
    For dual-fuel units the selectors sum to the mode indicator, so an
    unused mode burns nothing.
    """
    dt = s.time.step_hours
    for mode in gen.modes:
        if mode not in gen.curves or not gen.curves[mode]:
            raise EncodingError(f"generator {gen.id}: missing {mode} fuel curve")
        tag = MODE_TAG[mode]
        segs = gen.curves[mode]
        p_big = gen.p_max[mode]
        c_big = fuel_cap(s, gen, mode) + dt * max(max(sg.b, sg.a * p_big + sg.b) for sg in segs)
        for t in s.time.steps:
            p = _output_col(m, gen, mode, t)
            c = m.col("C" + tag, gen.id, t)
            taus = [m.col("tau" + tag, (gen.id, f"l{l}"), t) for l in range(1, len(segs) + 1)]
            terms = {k: 1.0 for k in taus}
            if gen.fuel == "dual":
                terms[m.col("z" + tag, gen.id, t)] = -1.0
                emit(m, "fuel_seg_sum", (gen.id, tag), t, terms, EQ, 0.0)
            else:
                emit(m, "fuel_seg_sum", (gen.id, tag), t, terms, EQ, 1.0)
            for l, (sg, tau) in enumerate(zip(segs, taus), 1):
                # p_lo - P <= M (1 - tau);  P - p_hi <= M (1 - tau)
                emit(m, "fuel_seg_window", (gen.id, tag, f"l{l}"), t, {p: -1.0, tau: p_big}, LE,
                     p_big - sg.p_lo, "lo")
                emit(m, "fuel_seg_window", (gen.id, tag, f"l{l}"), t, {p: 1.0, tau: p_big}, LE,
                     p_big + sg.p_hi, "hi")
                # |C - dt (a P + b)| <= M (1 - tau)
                emit(m, "fuel_seg_rate", (gen.id, tag, f"l{l}"), t, {c: 1.0, p: -dt * sg.a, tau: c_big}, LE,
                     c_big + dt * sg.b, "up")
                emit(m, "fuel_seg_rate", (gen.id, tag, f"l{l}"), t, {c: 1.0, p: -dt * sg.a, tau: -c_big}, GE,
                     -c_big + dt * sg.b, "dn")


def encode_dual_fuel(s: Scenario, m: MilpModel, gen: GeneratorSpec) -> None:
    """Mode exclusivity, mode-gated output/fuel, switch counting and output sum."""
    if gen.fuel != "dual":
        raise EncodingError(f"generator {gen.id} is not dual-fuel")
    if gen.max_switches is None:
        raise EncodingError(f"generator {gen.id}: max_switches missing")
    T = list(s.time.steps)
    for t in T:
        zn, zd = m.col("zN", gen.id, t), m.col("zD", gen.id, t)
        emit(m, "dual_mode", gen.id, t, {zn: 1.0, zd: 1.0}, EQ, 1.0)
        for mode, z in (("gas", zn), ("diesel", zd)):
            tag = MODE_TAG[mode]
            emit(m, "dual_gate", (gen.id, "P" + tag), t, {m.col("P" + tag, gen.id, t): 1.0, z: -gen.p_max[mode]},
                 LE, 0.0)
            emit(m, "dual_gate", (gen.id, "C" + tag), t,
                 {m.col("C" + tag, gen.id, t): 1.0, z: -fuel_cap(s, gen, mode)}, LE, 0.0)
        emit(m, "dual_output", gen.id, t, {m.col("P", gen.id, t): 1.0, m.col("PN", gen.id, t): -1.0,
                                           m.col("PD", gen.id, t): -1.0}, EQ, 0.0)
    for t in T[1:]:
        lam = m.col("lam", gen.id, t)
        for tag in ("N", "D"):
            # lam >= z[t-1] - z[t]
            emit(m, "dual_switch", (gen.id, tag), t,
                 {lam: 1.0, m.col("z" + tag, gen.id, t - 1): -1.0, m.col("z" + tag, gen.id, t): 1.0}, GE, 0.0)
    if len(T) > 1:
        emit(m, "dual_switch_cap", gen.id, None, {m.col("lam", gen.id, t): 1.0 for t in T[1:]}, LE,
             float(gen.max_switches))


def encode_fuel_exchange(s: Scenario, m: MilpModel) -> None:
    """Ledgers of tankers and depots, parked-only exchange and direct gas draw."""
    dt = s.time.step_hours
    T = list(s.time.steps)
    depots = {d.id: d for d in s.depots}
    for j in s.tankers:
        fuel = "gas" if j.kind == "gas_tanker" else "diesel"
        for i in j.sites:
            if i not in depots or depots[i].fuel != fuel:
                raise EncodingError(f"tanker {j.id}: site {i!r} is not a {fuel} depot")

    def transfers_into(depot_id, t):
        out = {}
        for j in s.tankers:
            tag = "Ntr" if j.kind == "gas_tanker" else "Dtr"
            if depot_id in j.sites:
                out[m.col(tag, (j.id, depot_id), t)] = 1.0
        return out

    for j in s.tankers:
        tag = "Ntr" if j.kind == "gas_tanker" else "Dtr"
        for t in T:
            terms = {m.col("psi", j.id, t): 1.0}
            if t > 1:
                terms[m.col("psi", j.id, t - 1)] = -1.0
            for i in j.sites:
                terms[m.col(tag, (j.id, i), t)] = 1.0
            emit(m, "tanker_ledger", j.id, t, terms, EQ, j.initial_fill if t == 1 else 0.0)
            for i in j.sites:
                chi, tr = m.col("chi", (j.id, i), t), m.col(tag, (j.id, i), t)
                emit(m, "transfer_gate", (j.id, i), t, {chi: 1.0, m.col("x", (j.id, i), t): -1.0}, LE, 0.0)
                emit(m, "transfer_bound", (j.id, i), t, {tr: 1.0, chi: -j.out_max}, LE, 0.0, "out")
                emit(m, "transfer_bound", (j.id, i), t, {tr: 1.0, chi: j.in_max}, GE, 0.0, "in")

    burners = {}  # depot -> [(generator, fuel)]
    for g in s.generators:
        for fuel, dep in g.onsite.items():
            burners.setdefault(dep, []).append((g, fuel))

    for d in s.depots:
        for t in T:
            terms = {m.col("psi", d.id, t): 1.0}
            if t > 1:
                terms[m.col("psi", d.id, t - 1)] = -1.0
            for c, v in transfers_into(d.id, t).items():
                terms[c] = terms.get(c, 0.0) - v
            if d.kind == "ngds_storage":
                terms[m.col("Linj", d.id, t)] = -d.eff_inj * dt
                terms[m.col("Lwd", d.id, t)] = dt / d.eff_wd
            for g, fuel in burners.get(d.id, []):
                tag = MODE_TAG[fuel]
                terms[m.col("C" + tag, g.id, t)] = terms.get(m.col("C" + tag, g.id, t), 0.0) + 1.0
                if fuel == "gas" and g.gas_node is not None:
                    terms[m.col("L", g.id, t)] = -dt
            emit(m, "depot_ledger", d.id, t, terms, EQ, d.initial_fill if t == 1 else 0.0)
        if d.kind == "ngds_storage":
            for t in T:
                ai, aw = m.col("ainj", d.id, t), m.col("awd", d.id, t)
                li, lw = m.col("Linj", d.id, t), m.col("Lwd", d.id, t)
                emit(m, "storage_mode", d.id, t, {ai: 1.0, aw: 1.0}, LE, 1.0)
                emit(m, "storage_gate", d.id, t, {li: 1.0, ai: -d.inj_max}, LE, 0.0, "inj")
                emit(m, "storage_gate", d.id, t, {lw: 1.0, aw: -d.wd_max}, LE, 0.0, "wd")
                emit(m, "storage_net", d.id, t, {m.col("Lstg", d.id, t): 1.0, lw: -1.0, li: 1.0}, EQ, 0.0)

    for g in s.generators:
        if g.gas_node is None:
            continue
        for t in T:
            lc, cn = m.col("L", g.id, t), m.col("CN", g.id, t)
            if "gas" in g.onsite:
                # dt L <= C_N; the onsite ledger absorbs the difference
                emit(m, "unit_draw", g.id, t, {lc: dt, cn: -1.0}, LE, 0.0)
            else:
                # no onsite gas: everything burnt comes through the pipe
                emit(m, "unit_draw", g.id, t, {lc: dt, cn: -1.0}, EQ, 0.0)
