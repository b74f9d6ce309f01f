"""Line-oriented solution files.

Format::

    # comment
    status optimal
    objective 123.4
    <column-name> <value>

Unmentioned binaries read as 0, unmentioned continuous columns as their
lower bound (0 when unbounded below).  A missing status line means
``feasible``.
"""
from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .model import MilpModel, Solution

STATUSES = ("optimal", "feasible", "infeasible", "unbounded", "limit")


class SolutionParseError(ValueError):
    pass


def parse_solution(m: MilpModel, path: str | Path) -> Solution:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SolutionParseError(f"{path}: {exc}") from exc
    return parse_solution_text(m, text)


def parse_solution_text(m: MilpModel, text: str) -> Solution:
    values = np.array([0.0 if v.is_binary else (v.lower if math.isfinite(v.lower) else 0.0)
                       for v in m.variables])
    status = "feasible"
    objective = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if len(tok) != 2:
            raise SolutionParseError(f"line {lineno}: expected '<name> <value>', got {raw!r}")
        key, val = tok
        if key == "status":
            if val not in STATUSES:
                raise SolutionParseError(f"line {lineno}: unknown status {val!r}")
            status = val
            continue
        try:
            num = float(val)
        except ValueError:
            raise SolutionParseError(f"line {lineno}: unparseable value {val!r} for {key}") from None
        if key == "objective":
            objective = num
            continue
        try:
            j = m.column_by_name(key)
        except KeyError:
            raise SolutionParseError(f"line {lineno}: unknown column {key!r}") from None
        values[j] = num
    if objective is None:
        objective = m.evaluate(values)
    return Solution(values, float(objective), status)


def write_solution(m: MilpModel, sol: Solution, path: str | Path) -> None:
    lines = [f"status {sol.status}", f"objective {sol.objective!r}"]
    if sol.values is not None:
        lines += [f"{v.name} {float(sol.values[v.col])!r}" for v in m.variables]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
