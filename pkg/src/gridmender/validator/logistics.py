"""Fuel ledgers, fuel exchange, mobile itineraries and repair progress."""
from __future__ import annotations

from typing import Callable, Sequence

from ..scenario import Scenario
from .base import Collector, Tolerances

State = tuple  # ("park", site) or ("travel", site)


def itinerary_problems(path: Sequence[State], initial_site: str, tau: Callable[[str, str], int]) -> list[tuple[int, str]]:
    """Replay a park/travel itinerary and return ``(step, reason)`` for each broken rule.

    Step 1 must be parked at the initial site.  A trip heads to one site and
    keeps that destination until the resource parks there.  A trip may only
    start from a parking, and parkings at two different sites must be more
    than the travel time apart.  A trip that runs past the horizon is fine.
    """
    bad = []
    if not path:
        return bad
    if path[0] != ("park", initial_site):
        bad.append((1, "not parked at the initial site"))
    for t in range(1, len(path)):
        (k0, s0), (k1, s1) = path[t - 1], path[t]
        if k1 == "park" and s1 != s0:
            bad.append((t + 1, "parked without arriving"))
        if k0 == "travel" and k1 == "travel" and s1 != s0:
            bad.append((t + 1, "changed destination"))
    parks = [(t, site) for t, (k, site) in enumerate(path, 1) if k == "park"]
    for a in range(len(parks)):
        for b in range(a + 1, len(parks)):
            (ta, sa), (tb, sb) = parks[a], parks[b]
            if sa != sb and tb - ta <= tau(sa, sb):
                bad.append((tb, f"reached {sb} from {sa} faster than the travel time"))
    return bad


def read_itinerary(sched, mobile) -> tuple[list[State], list[tuple[int, str]]]:
    """Turn the x/y columns of one mobile into a state list (and report ambiguous steps)."""
    path, bad = [], []
    for t in range(1, sched.horizon + 1):
        on = [("park", i) for i in mobile.all_sites if sched.get("x", (mobile.id, i), t) >= 0.5]
        on += [("travel", i) for i in mobile.all_sites if sched.get("y", (mobile.id, i), t) >= 0.5]
        if len(on) != 1:
            bad.append((t, f"{len(on)} simultaneous states"))
            on = on[:1] or [("travel", "?")]
        path.append(on[0])
    return path, bad


def repair_history(s: Scenario, sched) -> dict[str, dict[str, list[float]]]:
    """Per damaged branch: crews present, progress gained and cumulative health per step."""
    out = {}
    for br in s.damaged:
        beta = s.repair[br.id]
        crews, gain, health = [], [], []
        acc = 0.0
        for t in range(1, sched.horizon + 1):
            n = sum(1 for j in s.repair_units if br.id in j.all_sites and sched.get("x", (j.id, br.id), t) >= 0.5)
            crews.append(n)
            gain.append(beta[n])
            acc += beta[n]
            health.append(acc)
        out[br.id] = {"crews": crews, "gain": gain, "health": health}
    return out


def check_logistics(s: Scenario, sched, tol: Tolerances | None = None) -> list:
    tol = tol or Tolerances.for_scenario(s)
    out = Collector("logistics")
    ab, led = tol.linear_abs, tol.ledger_abs
    dt = s.time.step_hours
    T = range(1, s.time.horizon_steps + 1)

    itineraries = {}
    for j in s.mobiles:
        path, bad = read_itinerary(sched, j)
        itineraries[j.id] = path
        for t, why in bad:
            out.add("mobile state", j.id, t, 1.0, 0.0)
        for t, why in itinerary_problems(path, j.initial_site, s.travel):
            out.add("travel time", j.id, t, 1.0, 0.0)

    # tankers: ledger, exchange only while parked
    for j in s.tankers:
        tag = "Ntr" if j.kind == "gas_tanker" else "Dtr"
        fill = j.initial_fill
        for t in T:
            handed = 0.0
            for i in j.sites:
                tr = sched.get(tag, (j.id, i), t)
                handed += tr
                parked = itineraries[j.id][t - 1] == ("park", i)
                if abs(tr) > ab and not parked:
                    out.add("transfer while unparked", (j.id, i), t, abs(tr), ab)
                if sched.get("chi", (j.id, i), t) >= 0.5 and not parked:
                    out.add("transfer while unparked", (j.id, i), t, 1.0, 0.0)
                out.at_most("transfer band", (j.id, i), t, tr, j.out_max, ab)
                out.at_least("transfer band", (j.id, i), t, tr, -j.in_max, ab)
            fill -= handed
            got = sched.get("psi", j.id, t)
            out.equal("fuel ledger", j.id, t, got, fill, led)
            out.at_least("fill band", j.id, t, got, 0.0, led)
            out.at_most("fill band", j.id, t, got, j.capacity, led)
            fill = got

    burners = {}
    for g in s.generators:
        for fuel, dep in g.onsite.items():
            burners.setdefault(dep, []).append((g, fuel))
    for d in s.depots:
        fill = d.initial_fill
        for t in T:
            delta = 0.0
            for j in s.tankers:
                if d.id in j.sites:
                    delta += sched.get("Ntr" if j.kind == "gas_tanker" else "Dtr", (j.id, d.id), t)
            if d.kind == "ngds_storage":
                delta += d.eff_inj * dt * sched.get("Linj", d.id, t) - dt / d.eff_wd * sched.get("Lwd", d.id, t)
            for g, fuel in burners.get(d.id, []):
                delta -= sched.get("CN" if fuel == "gas" else "CD", g.id, t)
                if fuel == "gas" and g.gas_node is not None:
                    delta += dt * sched.get("L", g.id, t)
            fill += delta
            got = sched.get("psi", d.id, t)
            out.equal("fuel ledger", d.id, t, got, fill, led)
            out.at_least("fill band", d.id, t, got, 0.0, led)
            out.at_most("fill band", d.id, t, got, d.capacity, led)
            fill = got

    # repair: health re-accumulated from crew counts
    hist = repair_history(s, sched)
    for br in s.damaged:
        h = hist[br.id]
        prev = 0.0
        for t in T:
            k = sched.get("kappa", br.id, t)
            out.binary("repair state", br.id, t, k)
            if t == 1:
                out.at_most("repair state", br.id, t, k, 0.0, ab)
            done_before = h["health"][t - 2] if t > 1 else 0.0
            if k >= 0.5 and done_before < 1.0 - ab:
                out.add("repaired early", br.id, t, 1.0 - done_before, ab)
            if k < prev:
                out.add("repair monotonicity", br.id, t, prev - k, 0.0)
            out.equal("repair progress", br.id, t, sched.get("eta", br.id, t), h["gain"][t - 1], ab)
            if t > 1:
                for j in s.repair_units:
                    if br.id not in j.all_sites:
                        continue
                    left = sched.get("x", (j.id, br.id), t - 1) >= 0.5 and sched.get("x", (j.id, br.id), t) < 0.5
                    if left and k < 0.5:
                        out.add("crew abandoned repair", (br.id, j.id), t, 1.0, 0.0)
            prev = k
    return out.findings
