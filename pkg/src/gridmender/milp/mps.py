"""Free-format MPS writer and reader.

Convention: MPS has no portable way to say "maximise", so the objective row
``OBJ`` holds the *negated* objective and the file is a minimisation.  The
header comment records this; :func:`read_mps` undoes it.
"""
from __future__ import annotations

import math
from pathlib import Path

from .model import BINARY, CONTINUOUS, EQ, GE, LE, MilpModel, ModelError

HEADER = "* gridmender MPS: row OBJ is the negated maximisation objective (file minimises -f)"

_SENSE_CODE = {LE: "L", GE: "G", EQ: "E"}
_CODE_SENSE = {v: k for k, v in _SENSE_CODE.items()}


def _num(v: float) -> str:
    if v == 0:
        return "0"
    return repr(float(v))


def export_mps(m: MilpModel, path: str | Path) -> None:
    """Write ``m`` as free MPS; rows and columns keep their id order."""
    names = m.names()
    if len(set(names)) != len(names):
        raise ModelError("duplicate variable names")
    rnames = [c.name for c in m.constraints]
    if len(set(rnames)) != len(rnames) or "OBJ" in rnames:
        raise ModelError("duplicate row names (or a row named OBJ)")
    for nm in names + rnames:
        if len(nm) > 255 or any(ch.isspace() for ch in nm):
            raise ModelError(f"name {nm!r} not representable in MPS")

    by_col: list[list[tuple[str, float]]] = [[] for _ in range(m.n_cols)]
    for j, v in sorted(m.objective.items()):
        if v != 0:
            by_col[j].append(("OBJ", -v))
    for c in m.constraints:
        for j, v in c.coefs:
            by_col[j].append((c.name, v))

    out = [HEADER, f"NAME {m.name}", "ROWS", " N OBJ"]
    out += [f" {_SENSE_CODE[c.sense]} {c.name}" for c in m.constraints]
    if m.n_cols:
        out.append("COLUMNS")
        in_int = False
        marker = 0
        for var, entries in zip(m.variables, by_col):
            if var.is_binary and not in_int:
                out.append(f" MARKER{marker} 'MARKER' 'INTORG'")
                marker += 1
                in_int = True
            elif not var.is_binary and in_int:
                out.append(f" MARKER{marker} 'MARKER' 'INTEND'")
                marker += 1
                in_int = False
            if not entries:
                entries = [("OBJ", 0.0)]
            for rn, v in entries:
                out.append(f" {var.name} {rn} {_num(v)}")
        if in_int:
            out.append(f" MARKER{marker} 'MARKER' 'INTEND'")
    rhs = [(c.name, c.rhs) for c in m.constraints if c.rhs != 0]
    if rhs:
        out.append("RHS")
        out += [f" RHS {n} {_num(v)}" for n, v in rhs]
    bounds = []
    for v in m.variables:
        lo, hi = v.lower, v.upper
        if v.is_binary:
            bounds.append(f" LO BND {v.name} {_num(lo)}")
            bounds.append(f" UP BND {v.name} {_num(hi)}")
            continue
        if lo == hi:
            bounds.append(f" FX BND {v.name} {_num(lo)}")
            continue
        if lo == -math.inf and hi == math.inf:
            bounds.append(f" FR BND {v.name}")
            continue
        if lo == -math.inf:
            bounds.append(f" MI BND {v.name}")
        elif lo != 0:
            bounds.append(f" LO BND {v.name} {_num(lo)}")
        if hi != math.inf:
            bounds.append(f" UP BND {v.name} {_num(hi)}")
    if bounds:
        out.append("BOUNDS")
        out += bounds
    out.append("ENDATA")
    Path(path).write_text("\n".join(out) + "\n", encoding="utf-8")


def read_mps(path: str | Path) -> MilpModel:
    """Parse a free MPS file written by :func:`export_mps` (or any plain free MPS).

    The objective is negated back to a maximisation.  Integer columns are
    read as binaries; general integers are rejected.
    """
    m = MilpModel()
    section = None
    row_sense: dict[str, str] = {}
    row_order: list[str] = []
    row_terms: dict[str, dict[int, float]] = {}
    rhs: dict[str, float] = {}
    obj_name = None
    in_int = False
    bounds: dict[int, list[float]] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.rstrip()
        if not line.strip() or line.lstrip().startswith("*"):
            continue
        if not line[0].isspace():
            head = line.split()
            section = head[0].upper()
            if section == "NAME":
                m.name = head[1] if len(head) > 1 else "model"
            elif section == "ENDATA":
                break
            elif section not in ("ROWS", "COLUMNS", "RHS", "BOUNDS"):
                raise ValueError(f"line {lineno}: unsupported MPS section {section}")
            continue
        tok = line.split()
        if section == "ROWS":
            code, name = tok[0].upper(), tok[1]
            if code == "N":
                if obj_name is None:
                    obj_name = name
                continue
            row_sense[name] = _CODE_SENSE[code]
            row_order.append(name)
            row_terms[name] = {}
        elif section == "COLUMNS":
            if len(tok) >= 3 and tok[1].strip("'").upper() == "MARKER":
                in_int = tok[2].strip("'").upper() == "INTORG"
                continue
            name = tok[0]
            if name in m._names:
                j = m._names[name]
            else:
                j = m.add_var(name, 0.0, math.inf, BINARY if in_int else CONTINUOUS)
                if in_int:
                    m.variables[j].upper = math.inf  # MPS default; fixed by BOUNDS below
            pairs = tok[1:]
            for k in range(0, len(pairs) - 1, 2):
                rn, val = pairs[k], float(pairs[k + 1])
                if rn == obj_name:
                    if val != 0:
                        m.objective[j] = m.objective.get(j, 0.0) - val
                else:
                    if rn not in row_terms:
                        raise ValueError(f"line {lineno}: unknown row {rn}")
                    row_terms[rn][j] = row_terms[rn].get(j, 0.0) + val
        elif section == "RHS":
            pairs = tok[1:] if len(tok) % 2 == 1 else tok
            for k in range(0, len(pairs) - 1, 2):
                rhs[pairs[k]] = float(pairs[k + 1])
        elif section == "BOUNDS":
            kind, name = tok[0].upper(), tok[2]
            j = m._names[name]
            b = bounds.setdefault(j, [m.variables[j].lower, m.variables[j].upper])
            val = float(tok[3]) if len(tok) > 3 else None
            if kind == "LO":
                b[0] = val
            elif kind == "UP":
                b[1] = val
            elif kind == "FX":
                b[0] = b[1] = val
            elif kind == "FR":
                b[0], b[1] = -math.inf, math.inf
            elif kind == "MI":
                b[0] = -math.inf
            elif kind == "PL":
                b[1] = math.inf
            elif kind == "BV":
                b[0], b[1] = 0.0, 1.0
            else:
                raise ValueError(f"line {lineno}: unsupported bound type {kind}")
    for j, (lo, hi) in bounds.items():
        m.variables[j].lower, m.variables[j].upper = lo, hi
    for v in m.variables:
        if v.is_binary and not (v.lower >= 0 and v.upper <= 1):
            raise ValueError(f"integer column {v.name} is not binary")
    for name in row_order:
        m.add_row(name, row_terms[name], row_sense[name], rhs.get(name, 0.0))
    return m
