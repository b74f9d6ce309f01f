"""Scenario -> MilpModel."""
from __future__ import annotations

from ..milp import MilpModel
from ..scenario import Scenario
from .catalog import declare
from .dr import encode_dr
from .fuel import encode_dual_fuel, encode_fuel_consumption, encode_fuel_exchange
from .logistics import encode_mobility, encode_repair
from .network import encode_epds, encode_ngds
from .objective import build_objective
from .units import encode_generation_storage


def prepare(s: Scenario) -> MilpModel:
    """An empty model holding every declared column, ready for the encoders."""
    m = MilpModel(name=_safe(s.name))
    declare(s, m)
    return m


def assemble(s: Scenario) -> MilpModel:
    m = prepare(s)
    for g in s.generators:
        encode_fuel_consumption(s, m, g)
    for g in s.generators:
        if g.fuel == "dual":
            encode_dual_fuel(s, m, g)
    encode_fuel_exchange(s, m)
    encode_generation_storage(s, m)
    encode_dr(s, m)
    encode_repair(s, m)
    encode_mobility(s, m)
    encode_epds(s, m)
    encode_ngds(s, m)
    build_objective(s, m)
    return m


def _safe(name: str) -> str:
    return "".join(c if c.isalnum() or c in "-_." else "_" for c in name) or "model"
