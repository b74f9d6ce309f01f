"""Sparse scenario patches used to describe case studies.

An overlay is a JSON document ``{"patch": [op, ...]}``.  Each op names a
top-level section of the scenario document and, for list sections, the id
of the entity it touches (zones are addressed as ``"<gn>~<pn>"``)::

    {"op": "set", "section": "sources", "id": "src1", "field": "out_max", "value": 900}
    {"op": "set", "section": "weights", "field": "o1", "value": 0}
    {"op": "remove", "section": "generators", "id": "gen14", "field": "gas_node"}
    {"op": "remove", "section": "branches", "id": "b7"}
    {"op": "add", "section": "mobiles", "value": {...}}
"""
from __future__ import annotations

import copy
import json
from pathlib import Path
from typing import Any

from .scenario import ScenarioError


class OverlayError(ScenarioError):
    pass


def _entity_id(item: dict) -> str | None:
    if "id" in item:
        return str(item["id"])
    if "gn" in item and "pn" in item:
        return f"{item['gn']}~{item['pn']}"
    return None


def apply_patch(doc: dict[str, Any], patch: list[dict]) -> dict[str, Any]:
    """Return a patched deep copy of a raw scenario document."""
    out = copy.deepcopy(doc)
    for k, op in enumerate(patch):
        kind = op.get("op")
        section = op.get("section")
        where = f"patch op {k}"
        if kind not in ("set", "remove", "add"):
            raise OverlayError(f"{where}: unknown op {kind!r}")
        if section not in out:
            if kind == "add":
                out[section] = []
            else:
                raise OverlayError(f"{where}: unknown section {section!r}")
        body = out[section]
        if kind == "add":
            if not isinstance(body, list):
                raise OverlayError(f"{where}: can only add to list sections")
            body.append(copy.deepcopy(op["value"]))
            continue
        if isinstance(body, list):
            ident = op.get("id")
            hits = [i for i, item in enumerate(body) if _entity_id(item) == ident]
            if not hits:
                raise OverlayError(f"{where}: unknown entity {ident!r} in {section}")
            target = body[hits[0]]
            if kind == "remove" and "field" not in op:
                del body[hits[0]]
                continue
        else:
            target = body
            if "id" in op:
                if op["id"] not in target:
                    raise OverlayError(f"{where}: unknown entity {op['id']!r} in {section}")
                if kind == "remove" and "field" not in op:
                    del target[op["id"]]
                    continue
                target = target[op["id"]] if "field" in op else target
        field = op.get("field")
        if field is None:
            if kind == "set" and not isinstance(body, list) and "id" in op:
                body[op["id"]] = copy.deepcopy(op["value"])
                continue
            raise OverlayError(f"{where}: missing field")
        if kind == "set":
            target[field] = copy.deepcopy(op["value"])
        elif field in target:
            del target[field]
    return out


def load_overlay(path: str | Path) -> list[dict]:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise OverlayError(f"{path}: {exc}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("patch"), list):
        raise OverlayError(f"{path}: overlay must be an object with a 'patch' list")
    return doc["patch"]
