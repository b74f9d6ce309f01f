"""Scenario model for coupled power/gas distribution restoration problems.

A :class:`Scenario` is an immutable snapshot of both networks, the
resources that can act on them and the scheduling horizon.  Scenarios are
read from (and written to) a JSON document; see ``docs/scenario_format.md``
for the schema.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "ScenarioError",
    "ScenarioParseError",
    "DanglingReferenceError",
    "InvariantError",
    "DuplicateZoneError",
    "TimeGrid",
    "PowerNode",
    "Branch",
    "GasNode",
    "Pipeline",
    "GasSource",
    "Segment",
    "GeneratorSpec",
    "EnergyStorageSpec",
    "StorageDepot",
    "MobileResource",
    "TravelTimeTable",
    "DrZone",
    "IncidenceMatrix",
    "ObjectiveWeights",
    "Settings",
    "Scenario",
    "load_scenario",
    "save_scenario",
    "scenario_from_dict",
    "scenario_to_dict",
    "build_incidence",
    "validate_topology",
]

_ID_RE = re.compile(r"^[A-Za-z0-9_\-]+$")


class ScenarioError(ValueError):
    """Base class for problems found while reading a scenario."""


class ScenarioParseError(ScenarioError):
    pass


class DanglingReferenceError(ScenarioError):
    pass


class InvariantError(ScenarioError):
    pass


class DuplicateZoneError(ScenarioError):
    pass


Series = tuple  # tuple[float, ...], one entry per time step


@dataclass(frozen=True)
class TimeGrid:
    horizon_steps: int
    step_hours: float = 1.0

    def __post_init__(self):
        if int(self.horizon_steps) != self.horizon_steps or self.horizon_steps < 1:
            raise InvariantError(f"time: horizon_steps must be a positive integer, got {self.horizon_steps}")
        if not self.step_hours > 0:
            raise InvariantError(f"time: step_hours must be > 0, got {self.step_hours}")

    @property
    def steps(self) -> range:
        """1-based time-step indices."""
        return range(1, self.horizon_steps + 1)


@dataclass(frozen=True)
class PowerNode:
    id: str
    p_demand: Series
    q_demand: Series
    weight: float = 1.0
    v2_min: float = 0.9025
    v2_max: float = 1.1025
    dr: bool = False
    substation: bool = False
    grid_p_max: float = 0.0
    grid_q_max: float = 0.0


@dataclass(frozen=True)
class Branch:
    id: str
    from_node: str
    to_node: str
    r: float
    x: float
    s_max: float
    damaged: bool = False


@dataclass(frozen=True)
class GasNode:
    id: str
    f_demand: Series
    weight: float = 1.0
    pi2_min: float = 0.0
    pi2_max: float = 1.0
    dr: bool = False


@dataclass(frozen=True)
class Pipeline:
    id: str
    from_node: str
    to_node: str
    kind: str  # "passive" | "compressor"
    f_max: float
    K: float = 0.0
    ratio_min: float = 1.0
    ratio_max: float = 1.0
    power_coeff: float = 0.0
    power_factor: float = 0.0
    supply_pn: str | None = None

    @property
    def is_compressor(self) -> bool:
        return self.kind == "compressor"


@dataclass(frozen=True)
class GasSource:
    id: str
    node: str
    out_min: Series
    out_max: Series


@dataclass(frozen=True)
class Segment:
    """One piece ``fuel = a * p + b`` of a fuel curve, valid on ``[p_lo, p_hi]``."""

    a: float
    b: float
    p_lo: float
    p_hi: float


@dataclass(frozen=True)
class GeneratorSpec:
    id: str
    node: str
    fuel: str  # "gas" | "diesel" | "dual"
    curves: Mapping[str, tuple]  # fuel -> tuple[Segment, ...]
    p_max: Mapping[str, float]  # fuel -> max active output in that mode
    q_max: float
    s_max: float
    max_switches: int | None = None
    gas_node: str | None = None
    onsite: Mapping[str, str] = field(default_factory=dict)  # fuel -> depot id

    @property
    def modes(self) -> tuple[str, ...]:
        return {"gas": ("gas",), "diesel": ("diesel",), "dual": ("gas", "diesel")}[self.fuel]

    @property
    def p_cap(self) -> float:
        return max(self.p_max[m] for m in self.modes)


@dataclass(frozen=True)
class EnergyStorageSpec:
    id: str
    node: str
    capacity_kwh: float
    eff_ch: float
    eff_dch: float
    p_ch_max: float
    p_dch_max: float
    soc_min: float
    soc_max: float
    soc_initial: float
    q_max: float
    s_max: float


@dataclass(frozen=True)
class StorageDepot:
    id: str
    fuel: str  # "gas" | "diesel"
    kind: str  # "onsite" | "diesel_reservoir" | "ngds_storage"
    capacity: float
    initial_fill: float = 0.0
    gas_node: str | None = None
    supply_pn: str | None = None
    eff_inj: float = 1.0
    eff_wd: float = 1.0
    inj_max: float = 0.0
    wd_max: float = 0.0
    power_coeff_inj: float = 0.0
    power_coeff_wd: float = 0.0
    power_factor: float = 0.0


@dataclass(frozen=True)
class MobileResource:
    id: str
    kind: str  # "repair_unit" | "gas_tanker" | "diesel_tanker"
    initial_site: str
    sites: tuple[str, ...]  # accessible sites
    capacity: float = 0.0
    initial_fill: float = 0.0
    in_max: float = 0.0
    out_max: float = 0.0

    @property
    def all_sites(self) -> tuple[str, ...]:
        """Accessible sites plus the starting location, starting location first if new."""
        if self.initial_site in self.sites:
            return self.sites
        return (self.initial_site,) + self.sites

    @property
    def is_tanker(self) -> bool:
        return self.kind in ("gas_tanker", "diesel_tanker")


@dataclass(frozen=True)
class TravelTimeTable:
    sites: tuple[str, ...]
    times: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.sites)
        if len(set(self.sites)) != n:
            raise InvariantError("travel: duplicate site ids")
        if len(self.times) != n or any(len(row) != n for row in self.times):
            raise InvariantError("travel: time matrix must be square over the site list")
        for a in range(n):
            if self.times[a][a] != 0:
                raise InvariantError(f"travel: tau({self.sites[a]},{self.sites[a]}) must be 0")
            for b in range(n):
                if a != b:
                    if self.times[a][b] != self.times[b][a]:
                        raise InvariantError(f"travel: asymmetric entry {self.sites[a]}/{self.sites[b]}")
                    if self.times[a][b] < 1:
                        raise InvariantError(f"travel: tau({self.sites[a]},{self.sites[b]}) must be >= 1")

    def __call__(self, a: str, b: str) -> int:
        idx = {s: i for i, s in enumerate(self.sites)}
        return self.times[idx[a]][idx[b]]


@dataclass(frozen=True)
class WindowRules:
    """Duration limits (in time steps) for one kind of demand response."""

    t_max: int
    du_max: int
    du_min: int
    int_min: int


@dataclass(frozen=True)
class DrZone:
    gn: str
    pn: str
    p_base: Series
    f_base: Series
    power_factor: float
    sigma_p: tuple[float, float]
    sigma_n: tuple[float, float]
    tp: WindowRules
    tn: WindowRules
    h_cap: float

    @property
    def id(self) -> str:
        return f"{self.gn}~{self.pn}"


@dataclass(frozen=True)
class IncidenceMatrix:
    gns: tuple[str, ...]
    pns: tuple[str, ...]
    matrix: np.ndarray

    def row_members(self, gn: str) -> list[str]:
        i = self.gns.index(gn)
        return [p for p, v in zip(self.pns, self.matrix[i]) if v]

    def col_members(self, pn: str) -> list[str]:
        j = self.pns.index(pn)
        return [g for g, v in zip(self.gns, self.matrix[:, j]) if v]


@dataclass(frozen=True)
class ObjectiveWeights:
    zeta1: float = 1.0
    zeta2: float = 1.0
    o1: float = 1e-3
    o2: float = 1e-3
    o3: float = 1e-3
    o4: float = 1e-3


@dataclass(frozen=True)
class Settings:
    """Linearisation, big-M and validation tolerances carried by a scenario."""

    weymouth_tangents: int = 5
    polygon_sides: int = 12
    big_m: float = 1e6
    s_base_kva: float = 1000.0
    default_max_switches: int = 3
    linear_abs: float = 1e-6
    circle_rel: float = 1e-6
    weymouth_rel: float = 1e-2
    ledger_abs: float = 1e-6


@dataclass(frozen=True)
class Scenario:
    name: str
    time: TimeGrid
    power_nodes: tuple[PowerNode, ...]
    branches: tuple[Branch, ...]
    gas_nodes: tuple[GasNode, ...]
    pipelines: tuple[Pipeline, ...]
    sources: tuple[GasSource, ...]
    generators: tuple[GeneratorSpec, ...]
    energy_storages: tuple[EnergyStorageSpec, ...]
    depots: tuple[StorageDepot, ...]
    mobiles: tuple[MobileResource, ...]
    travel: TravelTimeTable
    zones: tuple[DrZone, ...]
    repair: Mapping[str, tuple[float, ...]]
    weights: ObjectiveWeights = ObjectiveWeights()
    settings: Settings = Settings()

    # lookups ---------------------------------------------------------------
    def pn(self, node_id: str) -> PowerNode:
        return _find(self.power_nodes, node_id, "power node")

    def gn(self, node_id: str) -> GasNode:
        return _find(self.gas_nodes, node_id, "gas node")

    def depot(self, depot_id: str) -> StorageDepot:
        return _find(self.depots, depot_id, "depot")

    def branch(self, branch_id: str) -> Branch:
        return _find(self.branches, branch_id, "branch")

    @property
    def damaged(self) -> tuple[Branch, ...]:
        return tuple(b for b in self.branches if b.damaged)

    @property
    def repair_units(self) -> tuple[MobileResource, ...]:
        return tuple(m for m in self.mobiles if m.kind == "repair_unit")

    @property
    def tankers(self) -> tuple[MobileResource, ...]:
        return tuple(m for m in self.mobiles if m.is_tanker)

    @property
    def incidence(self) -> IncidenceMatrix:
        return build_incidence(self.zones, [g.id for g in self.gas_nodes], [p.id for p in self.power_nodes])


def _find(items, key, what):
    for it in items:
        if it.id == key:
            return it
    raise KeyError(f"unknown {what} {key!r}")


# ---------------------------------------------------------------------------
# ingestion
# ---------------------------------------------------------------------------

_TOP_KEYS = ("time", "power_nodes", "branches", "gas_nodes", "pipelines", "sources", "generators",
             "energy_storages", "depots", "mobiles", "travel", "zones", "repair", "weights", "tolerances")


def load_scenario(path: str | Path) -> Scenario:
    """Read, cross-link and check a scenario JSON file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioParseError(f"{path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(f"{path}: malformed JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise ScenarioParseError(f"{path}: top level must be an object")
    doc.setdefault("name", path.stem)
    return scenario_from_dict(doc)


def save_scenario(s: Scenario, path: str | Path) -> None:
    Path(path).write_text(json.dumps(scenario_to_dict(s), indent=1) + "\n", encoding="utf-8")


def _series(value, n: int, what: str, curve: Sequence[float] | None = None) -> Series:
    if isinstance(value, (int, float)):
        mult = curve if curve is not None else [1.0] * n
        out = [float(value) * float(c) for c in mult]
    elif isinstance(value, list):
        out = [float(v) for v in value]
    else:
        raise ScenarioParseError(f"{what}: expected a number or a list, got {type(value).__name__}")
    if len(out) != n:
        raise ScenarioParseError(f"{what}: expected {n} time steps, got {len(out)}")
    if any(not math.isfinite(v) for v in out):
        raise ScenarioParseError(f"{what}: non-finite value")
    return tuple(out)


def _req(d: Mapping, key: str, what: str):
    if key not in d:
        raise ScenarioParseError(f"{what}: missing field {key!r}")
    return d[key]


def _check_id(ident, what):
    if not isinstance(ident, str) or not _ID_RE.match(ident):
        raise ScenarioParseError(f"{what}: invalid id {ident!r} (use letters, digits, '_' or '-')")
    return ident


def _segments_from(spec: Mapping, what: str) -> tuple[Segment, ...]:
    from .linearization import PiecewiseCurve, fit_piecewise

    if "points" in spec:
        try:
            curve = fit_piecewise([tuple(p) for p in spec["points"]])
        except ValueError as exc:
            raise InvariantError(f"{what}: {exc}") from exc
    else:
        segs = [Segment(float(s["a"]), float(s["b"]), float(s["p_lo"]), float(s["p_hi"]))
                for s in _req(spec, "segments", what)]
        try:
            curve = PiecewiseCurve(tuple(segs))
        except ValueError as exc:
            raise InvariantError(f"{what}: {exc}") from exc
    return curve.segments


def scenario_from_dict(doc: Mapping[str, Any]) -> Scenario:
    """Build a :class:`Scenario` from an already-parsed JSON document."""
    for key in ("time", "power_nodes"):
        _req(doc, key, "scenario")
    unknown = set(doc) - set(_TOP_KEYS) - {"name", "description"}
    if unknown:
        raise ScenarioParseError(f"scenario: unknown top-level keys {sorted(unknown)}")

    t = doc["time"]
    time = TimeGrid(int(_req(t, "horizon_steps", "time")), float(t.get("step_hours", 1.0)))
    n = time.horizon_steps
    curves = t.get("load_curves", {})
    pcurve = curves.get("power")
    gcurve = curves.get("gas")
    for nm, c in (("power", pcurve), ("gas", gcurve)):
        if c is not None and len(c) != n:
            raise ScenarioParseError(f"time.load_curves.{nm}: expected {n} multipliers")

    pns = []
    for d in doc.get("power_nodes", []):
        nid = _check_id(_req(d, "id", "power node"), "power node")
        what = f"power node {nid}"
        p = _series(d.get("p_demand", 0.0), n, what + " p_demand", pcurve)
        q = _series(d.get("q_demand", 0.0), n, what + " q_demand", pcurve)
        node = PowerNode(nid, p, q, float(d.get("weight", 1.0)), float(d.get("v2_min", 0.9025)),
                         float(d.get("v2_max", 1.1025)), bool(d.get("dr", False)),
                         bool(d.get("substation", False)), float(d.get("grid_p_max", 0.0)),
                         float(d.get("grid_q_max", 0.0)))
        if not 0 < node.v2_min < node.v2_max:
            raise InvariantError(f"{what}: need 0 < v2_min < v2_max")
        if min(p) < 0 or min(q) < 0:
            raise InvariantError(f"{what}: demands must be >= 0")
        if node.weight < 0:
            raise InvariantError(f"{what}: weight must be >= 0")
        pns.append(node)

    branches = []
    for d in doc.get("branches", []):
        bid = _check_id(_req(d, "id", "branch"), "branch")
        br = Branch(bid, _req(d, "from", f"branch {bid}"), _req(d, "to", f"branch {bid}"),
                    float(d.get("r", 0.0)), float(d.get("x", 0.0)), float(_req(d, "s_max", f"branch {bid}")),
                    bool(d.get("damaged", False)))
        if br.from_node == br.to_node:
            raise InvariantError(f"branch {bid}: from == to")
        if br.s_max <= 0:
            raise InvariantError(f"branch {bid}: s_max must be > 0")
        branches.append(br)

    gns = []
    for d in doc.get("gas_nodes", []):
        gid = _check_id(_req(d, "id", "gas node"), "gas node")
        what = f"gas node {gid}"
        node = GasNode(gid, _series(d.get("f_demand", 0.0), n, what + " f_demand", gcurve),
                       float(d.get("weight", 1.0)), float(_req(d, "pi2_min", what)),
                       float(_req(d, "pi2_max", what)), bool(d.get("dr", False)))
        if not 0 <= node.pi2_min < node.pi2_max:
            raise InvariantError(f"{what}: need 0 <= pi2_min < pi2_max")
        if min(node.f_demand) < 0:
            raise InvariantError(f"{what}: demands must be >= 0")
        gns.append(node)

    pipes = []
    for d in doc.get("pipelines", []):
        pid = _check_id(_req(d, "id", "pipeline"), "pipeline")
        what = f"pipeline {pid}"
        kind = d.get("kind", "passive")
        if kind not in ("passive", "compressor"):
            raise ScenarioParseError(f"{what}: kind must be passive or compressor")
        pipe = Pipeline(pid, _req(d, "from", what), _req(d, "to", what), kind, float(_req(d, "f_max", what)),
                        float(d.get("K", 0.0)), float(d.get("ratio_min", 1.0)), float(d.get("ratio_max", 1.0)),
                        float(d.get("power_coeff", 0.0)), float(d.get("power_factor", 0.0)), d.get("supply_pn"))
        if pipe.f_max <= 0:
            raise InvariantError(f"{what}: f_max must be > 0")
        if kind == "passive" and pipe.K <= 0:
            raise InvariantError(f"{what}: passive pipeline needs K > 0")
        if kind == "compressor":
            if not 1 < pipe.ratio_min <= pipe.ratio_max:
                raise InvariantError(f"{what}: need 1 < ratio_min <= ratio_max")
            if pipe.supply_pn is None:
                raise InvariantError(f"{what}: compressor needs supply_pn")
        pipes.append(pipe)

    sources = []
    for d in doc.get("sources", []):
        sid = _check_id(_req(d, "id", "source"), "source")
        what = f"source {sid}"
        src = GasSource(sid, _req(d, "node", what), _series(d.get("out_min", 0.0), n, what + " out_min"),
                        _series(_req(d, "out_max", what), n, what + " out_max"))
        if any(lo < 0 or lo > hi for lo, hi in zip(src.out_min, src.out_max)):
            raise InvariantError(f"{what}: need 0 <= out_min <= out_max")
        sources.append(src)

    weights_doc = doc.get("weights", {})
    settings = Settings(**{k: type(getattr(Settings(), k))(v) for k, v in doc.get("tolerances", {}).items()
                           if _known_field(Settings, k, "tolerances")})

    gens = []
    for d in doc.get("generators", []):
        gid = _check_id(_req(d, "id", "generator"), "generator")
        what = f"generator {gid}"
        fuel = _req(d, "fuel", what)
        if fuel not in ("gas", "diesel", "dual"):
            raise ScenarioParseError(f"{what}: fuel must be gas, diesel or dual")
        modes = ("gas", "diesel") if fuel == "dual" else (fuel,)
        cdoc = _req(d, "curves", what)
        pmax_doc = d.get("p_max", {})
        curves_, pmax = {}, {}
        for m in modes:
            if m not in cdoc:
                raise InvariantError(f"{what}: missing {m} fuel curve")
            segs = _segments_from(cdoc[m], f"{what} {m} curve")
            curves_[m] = segs
            pm = float(pmax_doc[m]) if isinstance(pmax_doc, dict) and m in pmax_doc else (
                float(pmax_doc) if isinstance(pmax_doc, (int, float)) else segs[-1].p_hi)
            if abs(segs[0].p_lo) > 1e-9 or abs(segs[-1].p_hi - pm) > 1e-9 * max(1.0, pm):
                raise InvariantError(f"{what}: {m} curve must cover [0, p_max={pm}]")
            pmax[m] = pm
        ms = d.get("max_switches")
        if fuel == "dual" and ms is None:
            ms = settings.default_max_switches
        gens.append(GeneratorSpec(gid, _req(d, "node", what), fuel, curves_, pmax, float(d.get("q_max", 0.0)),
                                  float(_req(d, "s_max", what)), None if ms is None else int(ms),
                                  d.get("gas_node"), dict(d.get("onsite", {}))))

    esss = []
    for d in doc.get("energy_storages", []):
        eid = _check_id(_req(d, "id", "energy storage"), "energy storage")
        what = f"energy storage {eid}"
        e = EnergyStorageSpec(eid, _req(d, "node", what), float(_req(d, "capacity_kwh", what)),
                              float(d.get("eff_ch", 1.0)), float(d.get("eff_dch", 1.0)),
                              float(_req(d, "p_ch_max", what)), float(_req(d, "p_dch_max", what)),
                              float(d.get("soc_min", 0.0)), float(d.get("soc_max", 1.0)),
                              float(d.get("soc_initial", 0.9)), float(d.get("q_max", 0.0)),
                              float(_req(d, "s_max", what)))
        if not (0 <= e.soc_min <= e.soc_initial <= e.soc_max <= 1):
            raise InvariantError(f"{what}: need 0 <= soc_min <= soc_initial <= soc_max <= 1")
        if not (0 < e.eff_ch <= 1 and 0 < e.eff_dch <= 1):
            raise InvariantError(f"{what}: efficiencies must lie in (0, 1]")
        if e.capacity_kwh <= 0:
            raise InvariantError(f"{what}: capacity must be > 0")
        esss.append(e)

    depots = []
    for d in doc.get("depots", []):
        did = _check_id(_req(d, "id", "depot"), "depot")
        what = f"depot {did}"
        kind = _req(d, "kind", what)
        if kind not in ("onsite", "diesel_reservoir", "ngds_storage"):
            raise ScenarioParseError(f"{what}: unknown kind {kind!r}")
        fuel = d.get("fuel", "diesel" if kind == "diesel_reservoir" else ("gas" if kind == "ngds_storage" else None))
        if fuel not in ("gas", "diesel"):
            raise ScenarioParseError(f"{what}: fuel must be gas or diesel")
        dep = StorageDepot(did, fuel, kind, float(_req(d, "capacity", what)), float(d.get("initial_fill", 0.0)),
                           d.get("gas_node"), d.get("supply_pn"), float(d.get("eff_inj", 1.0)),
                           float(d.get("eff_wd", 1.0)), float(d.get("inj_max", 0.0)), float(d.get("wd_max", 0.0)),
                           float(d.get("power_coeff_inj", 0.0)), float(d.get("power_coeff_wd", 0.0)),
                           float(d.get("power_factor", 0.0)))
        if not 0 <= dep.initial_fill <= dep.capacity:
            raise InvariantError(f"{what}: need 0 <= initial_fill <= capacity")
        if kind == "ngds_storage":
            if dep.fuel != "gas":
                raise InvariantError(f"{what}: NGDS storage must hold gas")
            if not (0 < dep.eff_inj <= 1 and 0 < dep.eff_wd <= 1):
                raise InvariantError(f"{what}: efficiencies must lie in (0, 1]")
            if dep.gas_node is None or dep.supply_pn is None:
                raise InvariantError(f"{what}: NGDS storage needs gas_node and supply_pn")
        if kind == "diesel_reservoir" and dep.fuel != "diesel":
            raise InvariantError(f"{what}: diesel reservoir must hold diesel")
        depots.append(dep)

    mobiles = []
    for d in doc.get("mobiles", []):
        mid = _check_id(_req(d, "id", "mobile"), "mobile")
        what = f"mobile {mid}"
        kind = _req(d, "kind", what)
        if kind not in ("repair_unit", "gas_tanker", "diesel_tanker"):
            raise ScenarioParseError(f"{what}: unknown kind {kind!r}")
        sites = d.get("sites")
        if sites is None:
            if kind != "repair_unit":
                raise ScenarioParseError(f"{what}: tankers need an explicit site list")
            sites = [b.id for b in branches if b.damaged]
        mob = MobileResource(mid, kind, _req(d, "initial_site", what), tuple(sites), float(d.get("capacity", 0.0)),
                             float(d.get("initial_fill", 0.0)), float(d.get("in_max", 0.0)),
                             float(d.get("out_max", 0.0)))
        if mob.is_tanker and not 0 <= mob.initial_fill <= mob.capacity:
            raise InvariantError(f"{what}: need 0 <= initial_fill <= capacity")
        mobiles.append(mob)

    travel = _travel_from(doc.get("travel", {}), mobiles)

    zones = []
    for d in doc.get("zones", []):
        gn, pn = _req(d, "gn", "zone"), _req(d, "pn", "zone")
        what = f"zone {gn}~{pn}"
        sp = tuple(float(v) for v in d.get("sigma_p", (0.0, 0.0)))
        sn = tuple(float(v) for v in d.get("sigma_n", (0.0, 0.0)))
        z = DrZone(gn, pn, _series(d.get("p_base", 0.0), n, what + " p_base", pcurve),
                   _series(d.get("f_base", 0.0), n, what + " f_base", gcurve), float(d.get("power_factor", 0.0)),
                   sp, sn, _rules(d.get("tp", {}), n, what + " tp"), _rules(d.get("tn", {}), n, what + " tn"),
                   float(d.get("h_cap", 2.0)))
        for lbl, (lo, hi) in (("sigma_p", sp), ("sigma_n", sn)):
            if not 0 <= lo <= hi <= 1:
                raise InvariantError(f"{what}: need 0 <= {lbl} min <= max <= 1")
        if not 0 < z.h_cap <= 2:
            raise InvariantError(f"{what}: h_cap must lie in (0, 2]")
        if min(z.p_base) < 0 or min(z.f_base) < 0:
            raise InvariantError(f"{what}: base loads must be >= 0")
        if (sp[1] > 0 and max(z.p_base) == 0) and (sn[1] > 0 and max(z.f_base) == 0):
            raise InvariantError(f"{what}: all-zero base loads with nonzero reduction ratio")
        zones.append(z)

    repair = {}
    for bid, table in doc.get("repair", {}).items():
        beta = tuple(float(v) for v in table)
        if not beta or beta[0] != 0.0:
            raise InvariantError(f"repair {bid}: beta[0] must be 0")
        if any(b2 < b1 for b1, b2 in zip(beta, beta[1:])) or any(not 0 <= b <= 1 for b in beta):
            raise InvariantError(f"repair {bid}: beta must be nondecreasing within [0, 1]")
        repair[bid] = beta

    weights = ObjectiveWeights(**{k: float(v) for k, v in weights_doc.items()
                                  if _known_field(ObjectiveWeights, k, "weights")})
    if any(getattr(weights, f) < 0 for f in ("zeta1", "zeta2", "o1", "o2", "o3", "o4")):
        raise InvariantError("weights: all coefficients must be >= 0")

    s = Scenario(str(doc.get("name", "scenario")), time, tuple(pns), tuple(branches), tuple(gns), tuple(pipes),
                 tuple(sources), tuple(gens), tuple(esss), tuple(depots), tuple(mobiles), travel, tuple(zones),
                 repair, weights, settings)
    _cross_link(s)
    return s


def _known_field(cls, key, what):
    if key not in cls.__dataclass_fields__:
        raise ScenarioParseError(f"{what}: unknown field {key!r}")
    return True


def _rules(d: Mapping, n: int, what: str) -> WindowRules:
    r = WindowRules(int(d.get("max", n)), int(d.get("du_max", n)), int(d.get("du_min", 0)),
                    int(d.get("int_min", 0)))
    if min(r.t_max, r.du_max, r.du_min, r.int_min) < 0:
        raise InvariantError(f"{what}: durations must be >= 0")
    if not r.du_min <= r.du_max <= r.t_max:
        raise InvariantError(f"{what}: need du_min <= du_max <= max")
    return r


def _travel_from(d: Mapping, mobiles: Sequence[MobileResource]) -> TravelTimeTable:
    if "sites" in d and "times" in d:
        return TravelTimeTable(tuple(d["sites"]), tuple(tuple(int(v) for v in row) for row in d["times"]))
    sites: list[str] = list(d.get("sites", []))
    for m in mobiles:
        for s_ in m.all_sites:
            if s_ not in sites:
                sites.append(s_)
    default = int(d.get("default", 1))
    idx = {s_: i for i, s_ in enumerate(sites)}
    times = [[0 if a == b else default for b in range(len(sites))] for a in range(len(sites))]
    for a, b, tau in d.get("overrides", []):
        if a not in idx or b not in idx:
            raise DanglingReferenceError(f"travel: override references unknown site {a if a not in idx else b!r}")
        times[idx[a]][idx[b]] = times[idx[b]][idx[a]] = int(tau)
    return TravelTimeTable(tuple(sites), tuple(tuple(r) for r in times))


def _cross_link(s: Scenario) -> None:
    pn_ids = [p.id for p in s.power_nodes]
    gn_ids = [g.id for g in s.gas_nodes]
    for kind, ids in (("power node", pn_ids), ("gas node", gn_ids), ("branch", [b.id for b in s.branches]),
                      ("pipeline", [p.id for p in s.pipelines]), ("generator", [g.id for g in s.generators]),
                      ("depot", [d.id for d in s.depots]), ("mobile", [m.id for m in s.mobiles])):
        dup = {i for i in ids if ids.count(i) > 1}
        if dup:
            raise InvariantError(f"duplicate {kind} id(s) {sorted(dup)}")
    # units and storages share variable families (P/Q, psi), so their ids must not collide
    for group in (("generator", "energy storage"), ("depot", "mobile")):
        a = [g.id for g in s.generators] if group[0] == "generator" else [d.id for d in s.depots]
        b = [e.id for e in s.energy_storages] if group[1] == "energy storage" else [m.id for m in s.mobiles]
        clash = sorted(set(a) & set(b))
        if clash:
            raise InvariantError(f"{group[0]} and {group[1]} ids collide: {clash}")
    pn_set, gn_set = set(pn_ids), set(gn_ids)
    depots = {d.id: d for d in s.depots}

    def need(ref, pool, what):
        if ref not in pool:
            raise DanglingReferenceError(f"{what} references unknown id {ref!r}")

    for b in s.branches:
        need(b.from_node, pn_set, f"branch {b.id}")
        need(b.to_node, pn_set, f"branch {b.id}")
    for p in s.pipelines:
        need(p.from_node, gn_set, f"pipeline {p.id}")
        need(p.to_node, gn_set, f"pipeline {p.id}")
        if p.is_compressor:
            need(p.supply_pn, pn_set, f"pipeline {p.id}")
    for src in s.sources:
        need(src.node, gn_set, f"source {src.id}")
    for g in s.generators:
        need(g.node, pn_set, f"generator {g.id}")
        if g.gas_node is not None:
            if "gas" not in g.modes:
                raise InvariantError(f"generator {g.id}: only gas-capable units can draw from a gas node")
            need(g.gas_node, gn_set, f"generator {g.id}")
        for fuel, dep in g.onsite.items():
            need(dep, depots, f"generator {g.id}")
            if depots[dep].fuel != fuel or depots[dep].kind != "onsite":
                raise InvariantError(f"generator {g.id}: onsite {fuel} storage {dep!r} has wrong fuel/kind")
        if "diesel" in g.modes and "diesel" not in g.onsite:
            raise InvariantError(f"generator {g.id}: diesel-burning unit needs an onsite diesel storage")
        if "gas" in g.modes and "gas" not in g.onsite and g.gas_node is None:
            raise InvariantError(f"generator {g.id}: gas-burning unit needs a gas node or onsite gas storage")
    for e in s.energy_storages:
        need(e.node, pn_set, f"energy storage {e.id}")
    for d in s.depots:
        if d.kind == "ngds_storage":
            need(d.gas_node, gn_set, f"depot {d.id}")
            need(d.supply_pn, pn_set, f"depot {d.id}")
    dmg = {b.id for b in s.damaged}
    travel_sites = set(s.travel.sites)
    for m in s.mobiles:
        pool = dmg if m.kind == "repair_unit" else {d.id for d in s.depots
                                                     if d.fuel == ("gas" if m.kind == "gas_tanker" else "diesel")}
        for site in m.sites:
            need(site, pool, f"mobile {m.id} site list")
        for site in m.all_sites:
            need(site, travel_sites, f"mobile {m.id} (travel table)")
    for z in s.zones:
        need(z.gn, gn_set, f"zone {z.id}")
        need(z.pn, pn_set, f"zone {z.id}")
    for bid, beta in s.repair.items():
        need(bid, dmg, "repair table")
    for b in s.damaged:
        if b.id not in s.repair:
            raise InvariantError(f"repair: damaged branch {b.id} has no efficiency table")
        if len(s.repair[b.id]) < len(s.repair_units) + 1:
            raise InvariantError(f"repair {b.id}: table shorter than fleet size + 1")
    for z in s.zones:
        if (z.pn in pn_set and not s.pn(z.pn).dr) or (z.gn in gn_set and not s.gn(z.gn).dr):
            raise InvariantError(f"zone {z.id}: its power and gas nodes must both be flagged dr")
    build_incidence(s.zones, gn_ids, pn_ids)
    if sum(1 for p in s.power_nodes if p.substation) > 1:
        raise InvariantError("at most one substation node is supported")


def build_incidence(zones: Iterable[DrZone], gns: Sequence[str], pns: Sequence[str]) -> IncidenceMatrix:
    """Gas-node x power-node 0/1 matrix with a one wherever a zone exists."""
    gns, pns = tuple(gns), tuple(pns)
    mat = np.zeros((len(gns), len(pns)), dtype=int)
    seen = set()
    for z in zones:
        if (z.gn, z.pn) in seen:
            raise DuplicateZoneError(f"duplicate zone ({z.gn}, {z.pn})")
        seen.add((z.gn, z.pn))
        mat[gns.index(z.gn), pns.index(z.pn)] = 1
    mat.setflags(write=False)
    return IncidenceMatrix(gns, pns, mat)


def validate_topology(s: Scenario) -> list[str]:
    """Structural findings; an empty list means the scenario is well formed."""
    findings = []
    # power side: radial tree over all power nodes
    parent = {p.id: p.id for p in s.power_nodes}

    def root(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for b in s.branches:
        ra, rb = root(b.from_node), root(b.to_node)
        if ra == rb:
            findings.append(f"non-radial EPDS: branch {b.id} closes a cycle")
        else:
            parent[ra] = rb
    if len({root(p.id) for p in s.power_nodes}) > 1:
        findings.append("EPDS branch graph does not span all power nodes")

    if s.gas_nodes:
        gparent = {g.id: g.id for g in s.gas_nodes}

        def groot(a):
            while gparent[a] != a:
                a = gparent[a]
            return a

        for p in s.pipelines:
            ra, rb = groot(p.from_node), groot(p.to_node)
            if ra != rb:
                gparent[ra] = rb
        if len({groot(g.id) for g in s.gas_nodes}) > 1:
            findings.append("NGDS is not connected")

    for z in s.zones:
        for t in s.time.steps:
            if z.p_base[t - 1] > s.pn(z.pn).p_demand[t - 1] + 1e-9:
                findings.append(f"zone {z.id}: power base load exceeds node {z.pn} demand at TS {t}")
        for t in s.time.steps:
            if z.f_base[t - 1] > s.gn(z.gn).f_demand[t - 1] + 1e-9:
                findings.append(f"zone {z.id}: gas base load exceeds node {z.gn} demand at TS {t}")
    # several zones may share a node: their sum must fit too
    for p in s.power_nodes:
        members = [z for z in s.zones if z.pn == p.id]
        if len(members) > 1:
            for t in s.time.steps:
                if sum(z.p_base[t - 1] for z in members) > p.p_demand[t - 1] + 1e-9:
                    findings.append(f"zones at {p.id}: summed power base load exceeds demand at TS {t}")
    for g in s.gas_nodes:
        members = [z for z in s.zones if z.gn == g.id]
        if len(members) > 1:
            for t in s.time.steps:
                if sum(z.f_base[t - 1] for z in members) > g.f_demand[t - 1] + 1e-9:
                    findings.append(f"zones at {g.id}: summed gas base load exceeds demand at TS {t}")
    return findings


# ---------------------------------------------------------------------------
# canonical serialisation
# ---------------------------------------------------------------------------

def _rules_dict(r: WindowRules) -> dict:
    return {"max": r.t_max, "du_max": r.du_max, "du_min": r.du_min, "int_min": r.int_min}


def scenario_to_dict(s: Scenario) -> dict:
    """Canonical JSON-ready form: every per-step quantity written out explicitly."""
    out: dict[str, Any] = {"name": s.name,
                           "time": {"horizon_steps": s.time.horizon_steps, "step_hours": s.time.step_hours}}
    out["power_nodes"] = [
        {"id": p.id, "p_demand": list(p.p_demand), "q_demand": list(p.q_demand), "weight": p.weight,
         "v2_min": p.v2_min, "v2_max": p.v2_max, "dr": p.dr, "substation": p.substation,
         "grid_p_max": p.grid_p_max, "grid_q_max": p.grid_q_max} for p in s.power_nodes]
    out["branches"] = [{"id": b.id, "from": b.from_node, "to": b.to_node, "r": b.r, "x": b.x, "s_max": b.s_max,
                        "damaged": b.damaged} for b in s.branches]
    out["gas_nodes"] = [{"id": g.id, "f_demand": list(g.f_demand), "weight": g.weight, "pi2_min": g.pi2_min,
                         "pi2_max": g.pi2_max, "dr": g.dr} for g in s.gas_nodes]
    pipes = []
    for p in s.pipelines:
        d = {"id": p.id, "from": p.from_node, "to": p.to_node, "kind": p.kind, "f_max": p.f_max}
        if p.is_compressor:
            d.update(ratio_min=p.ratio_min, ratio_max=p.ratio_max, power_coeff=p.power_coeff,
                     power_factor=p.power_factor, supply_pn=p.supply_pn)
        else:
            d["K"] = p.K
        pipes.append(d)
    out["pipelines"] = pipes
    out["sources"] = [{"id": x.id, "node": x.node, "out_min": list(x.out_min), "out_max": list(x.out_max)}
                      for x in s.sources]
    gens = []
    for g in s.generators:
        d = {"id": g.id, "node": g.node, "fuel": g.fuel,
             "curves": {m: {"segments": [{"a": sg.a, "b": sg.b, "p_lo": sg.p_lo, "p_hi": sg.p_hi}
                                         for sg in g.curves[m]]} for m in g.modes},
             "p_max": {m: g.p_max[m] for m in g.modes}, "q_max": g.q_max, "s_max": g.s_max,
             "gas_node": g.gas_node, "onsite": dict(sorted(g.onsite.items()))}
        if g.max_switches is not None:
            d["max_switches"] = g.max_switches
        gens.append(d)
    out["generators"] = gens
    out["energy_storages"] = [
        {"id": e.id, "node": e.node, "capacity_kwh": e.capacity_kwh, "eff_ch": e.eff_ch, "eff_dch": e.eff_dch,
         "p_ch_max": e.p_ch_max, "p_dch_max": e.p_dch_max, "soc_min": e.soc_min, "soc_max": e.soc_max,
         "soc_initial": e.soc_initial, "q_max": e.q_max, "s_max": e.s_max} for e in s.energy_storages]
    deps = []
    for d in s.depots:
        dd = {"id": d.id, "fuel": d.fuel, "kind": d.kind, "capacity": d.capacity, "initial_fill": d.initial_fill}
        if d.kind == "ngds_storage":
            dd.update(gas_node=d.gas_node, supply_pn=d.supply_pn, eff_inj=d.eff_inj, eff_wd=d.eff_wd,
                      inj_max=d.inj_max, wd_max=d.wd_max, power_coeff_inj=d.power_coeff_inj,
                      power_coeff_wd=d.power_coeff_wd, power_factor=d.power_factor)
        deps.append(dd)
    out["depots"] = deps
    out["mobiles"] = [{"id": m.id, "kind": m.kind, "initial_site": m.initial_site, "sites": list(m.sites),
                       "capacity": m.capacity, "initial_fill": m.initial_fill, "in_max": m.in_max,
                       "out_max": m.out_max} for m in s.mobiles]
    out["travel"] = {"sites": list(s.travel.sites), "times": [list(r) for r in s.travel.times]}
    out["zones"] = [{"gn": z.gn, "pn": z.pn, "p_base": list(z.p_base), "f_base": list(z.f_base),
                     "power_factor": z.power_factor, "sigma_p": list(z.sigma_p), "sigma_n": list(z.sigma_n),
                     "tp": _rules_dict(z.tp), "tn": _rules_dict(z.tn), "h_cap": z.h_cap} for z in s.zones]
    out["repair"] = {k: list(v) for k, v in s.repair.items()}
    out["weights"] = {k: getattr(s.weights, k) for k in ObjectiveWeights.__dataclass_fields__}
    out["tolerances"] = {k: getattr(s.settings, k) for k in Settings.__dataclass_fields__}
    return out


def with_changes(s: Scenario, **kw) -> Scenario:
    """Copy of ``s`` with top-level fields replaced (thin wrapper over dataclasses.replace)."""
    return replace(s, **kw)
