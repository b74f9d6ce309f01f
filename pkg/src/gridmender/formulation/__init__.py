"""Compile a :class:`~gridmender.scenario.Scenario` into a MILP and decode its solutions."""
from .assemble import assemble, prepare
from .catalog import BINARY_FAMILIES, FAMILIES, declare
from .dr import DrEncodingError, encode_dr, encode_windows
from .fuel import EncodingError, encode_dual_fuel, encode_fuel_consumption, encode_fuel_exchange
from .logistics import LogisticsError, encode_mobility, encode_repair
from .network import NetworkError, encode_epds, encode_ngds
from .objective import build_objective
from .rows import ROW_FAMILIES, row_family
from .schedule import DecodeError, Schedule, decode, supplied_energy
from .units import encode_generation_storage

__all__ = [
    "BINARY_FAMILIES", "FAMILIES", "ROW_FAMILIES", "DecodeError", "DrEncodingError", "EncodingError",
    "LogisticsError", "NetworkError", "Schedule", "assemble", "build_objective", "declare", "decode",
    "encode_dr", "encode_dual_fuel", "encode_epds", "encode_fuel_consumption", "encode_fuel_exchange",
    "encode_generation_storage", "encode_mobility", "encode_ngds", "encode_repair", "encode_windows", "prepare",
    "row_family", "supplied_energy",
]
