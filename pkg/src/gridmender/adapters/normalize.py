"""Convert native solver solution output into the gridmender solution format.

Solvers read the exported MPS as a minimisation of the negated objective,
so reported objective values are negated back on the way out.

Supported ``--format`` values:

``highs``   HiGHS ``--solution_file`` output (``# Columns N`` block of ``name value``)
``cbc``     CBC ``solu`` output (``<idx> <name> <value> <reduced cost>`` lines)
``gurobi``  Gurobi ``.sol`` (``# Objective value = v`` then ``name value``)
``plain``   any ``name value`` list, optionally led by a ``status``/``objective`` line
"""
from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path


class NormalizeError(ValueError):
    pass


def _highs(text: str):
    status, obj, values = "feasible", None, []
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        line = lines[i].strip()
        low = line.lower()
        if low.startswith("model status"):
            nxt = line.split(":", 1)[1] if ":" in line else (lines[i + 1] if i + 1 < len(lines) else "")
            st = nxt.strip().lower()
            status = "optimal" if st == "optimal" else "infeasible" if "infeasible" in st else \
                "unbounded" if "unbounded" in st else "feasible"
        elif low.startswith("objective"):
            m = re.search(r"([-+0-9.eE]+|inf)\s*$", line)
            if m:
                obj = -float(m.group(1))
        elif low.startswith("# columns"):
            n = int(line.split()[2])
            for raw in lines[i + 1:i + 1 + n]:
                name, val = raw.split()[:2]
                values.append((name, float(val)))
            i += n
        elif low.startswith("# rows"):
            break
        i += 1
    return status, obj, values


def _cbc(text: str):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise NormalizeError("empty CBC output")
    head = lines[0].lower()
    status = "optimal" if head.startswith("optimal") else "infeasible" if "infeasible" in head else \
        "unbounded" if "unbounded" in head else "feasible"
    m = re.search(r"objective value\s+([-+0-9.eE]+)", lines[0], re.I)
    obj = -float(m.group(1)) if m else None
    values = []
    for ln in lines[1:]:
        tok = ln.replace("**", " ").split()
        if len(tok) >= 3:
            values.append((tok[1], float(tok[2])))
    return status, obj, values


def _gurobi(text: str):
    obj, values = None, []
    for ln in text.splitlines():
        s = ln.strip()
        if not s:
            continue
        if s.startswith("#"):
            m = re.search(r"objective value\s*=\s*([-+0-9.eE]+)", s, re.I)
            if m:
                obj = -float(m.group(1))
            continue
        name, val = s.split()[:2]
        values.append((name, float(val)))
    return "feasible" if values else "infeasible", obj, values


def _plain(text: str):
    status, obj, values = "feasible", None, []
    for ln in text.splitlines():
        s = ln.split("#", 1)[0].strip()
        if not s:
            continue
        key, val = s.split()[:2]
        if key == "status":
            status = val
        elif key == "objective":
            obj = float(val)
        else:
            values.append((key, float(val)))
    return status, obj, values


READERS = {"highs": _highs, "cbc": _cbc, "gurobi": _gurobi, "plain": _plain}


def normalize(text: str, fmt: str) -> str:
    if fmt not in READERS:
        raise NormalizeError(f"unknown format {fmt!r}; choose from {', '.join(READERS)}")
    status, obj, values = READERS[fmt](text)
    out = [f"# normalised from {fmt} output", f"status {status}"]
    if obj is not None:
        out.append(f"objective {obj!r}")
    out += [f"{n} {v!r}" for n, v in values]
    return "\n".join(out) + "\n"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="python -m gridmender.adapters.normalize",
                                 description="Normalise solver output to the gridmender solution format.")
    ap.add_argument("--format", required=True, choices=sorted(READERS))
    ap.add_argument("raw")
    ap.add_argument("out")
    args = ap.parse_args(argv)
    try:
        Path(args.out).write_text(normalize(Path(args.raw).read_text(encoding="utf-8"), args.format),
                                  encoding="utf-8")
    except (OSError, NormalizeError, ValueError) as exc:
        print(f"normalize: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
