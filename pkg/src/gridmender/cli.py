"""Command-line front end.

    gridmender run --scenario S.json [--solver builtin|external] [--cmd T] [--out DIR] [--mps-out F]
    gridmender validate --scenario S.json --solution S.sol [--out DIR]
    gridmender compare --scenario S.json [--case NAME=OVERLAY.json ...] [--out DIR]

Exit codes: 0 schedule passed validation, 2 validation failed, 3 the solver
failed (error, infeasible, unbounded, size guard), 64 usage error, 65 input
data could not be read.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .formulation import DecodeError, Schedule, assemble, decode
from .milp import (ExternalSolverError, Limits, MilpModel, NumericalError, SizeGuardError, Solution,
                   SolutionParseError, export_mps, parse_solution, solve_builtin, solve_external, write_solution)
from .overlay import apply_patch, load_overlay
from .scenario import Scenario, ScenarioError, scenario_from_dict
from .validator import Finding, ValidationReport, audit

EXIT_OK, EXIT_INVALID, EXIT_SOLVER, EXIT_USAGE, EXIT_DATA = 0, 2, 3, 64, 65
ENV_CMD = "GRIDMENDER_SOLVER_CMD"


class UsageError(Exception):
    pass


class SolverFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _num(v: float) -> str:
    v = float(v)
    if v == 0.0:
        return "0"
    return format(v, ".12g")


# --------------------------------------------------------------------- pipeline
def data_file(path: str | Path) -> Path:
    """``path`` itself, or the bundled dataset of that name when no such file exists."""
    path = Path(path)
    if not path.exists() and path.parent == Path("."):
        bundled = resources.files("gridmender") / "data" / path.name
        if bundled.is_file():
            return Path(str(bundled))
    return path


def read_document(path: str | Path) -> dict:
    path = data_file(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ScenarioError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: malformed JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise ScenarioError(f"{path}: top level must be an object")
    doc.setdefault("name", path.stem)
    return doc


def solve(m: MilpModel, solver: str, cmd: str | None, limits: Limits | None = None) -> Solution:
    try:
        if solver == "builtin":
            sol = solve_builtin(m, limits)
        else:
            sol = solve_external(m, cmd)
    except (SizeGuardError, NumericalError, ExternalSolverError, SolutionParseError, OSError) as exc:
        raise SolverFailure(str(exc)) from exc
    if not sol.usable:
        raise SolverFailure(f"solver returned status {sol.status}")
    return sol


@dataclass
class Outcome:
    scenario: Scenario
    model: MilpModel
    solution: Solution
    schedule: Schedule
    report: ValidationReport


def run_scenario(s: Scenario, solver: str = "builtin", cmd: str | None = None,
                 limits: Limits | None = None) -> Outcome:
    m = assemble(s)
    sol = solve(m, solver, cmd, limits)
    sched = decode(s, m, sol)
    return Outcome(s, m, sol, sched, audit(s, sched, sol))


def supplied_series(s: Scenario, sched: Schedule) -> tuple[np.ndarray, np.ndarray]:
    """Weighted served electricity and gas per step (the first two objective terms)."""
    w, dt = s.weights, s.time.step_hours
    pw = np.zeros(s.time.horizon_steps)
    gs = np.zeros(s.time.horizon_steps)
    for t in range(1, s.time.horizon_steps + 1):
        for p in s.power_nodes:
            red = sched.get("PDR", p.id, t) if p.dr else 0.0
            pw[t - 1] += w.zeta1 * p.weight * (sched.get("dP", p.id, t) * p.p_demand[t - 1] - red) * dt
        for g in s.gas_nodes:
            red = sched.get("FDR", g.id, t) if g.dr else 0.0
            gs[t - 1] += w.zeta2 * g.weight * (sched.get("dN", g.id, t) * g.f_demand[t - 1] - red) * dt
    return pw, gs


def base_series(s: Scenario) -> tuple[np.ndarray, np.ndarray]:
    w, dt = s.weights, s.time.step_hours
    pw = np.array([sum(w.zeta1 * p.weight * p.p_demand[t] * dt for p in s.power_nodes)
                   for t in range(s.time.horizon_steps)])
    gs = np.array([sum(w.zeta2 * g.weight * g.f_demand[t] * dt for g in s.gas_nodes)
                   for t in range(s.time.horizon_steps)])
    return pw, gs


def storage_release(s: Scenario, sched: Schedule) -> dict[str, list[float]]:
    return {d.id: [float(v) for v in sched.get("Lstg", d.id)] for d in s.depots if d.kind == "ngds_storage"}


def run_report(out: Outcome) -> dict:
    s, sched = out.scenario, out.schedule
    pw, gs = supplied_series(s, sched)
    bp, bg = base_series(s)
    T = range(1, s.time.horizon_steps + 1)
    itin = {}
    for j in s.mobiles:
        steps = []
        for t in T:
            here = [f"park:{i}" for i in j.all_sites if sched.get("x", (j.id, i), t) >= 0.5]
            here += [f"travel:{i}" for i in j.all_sites if sched.get("y", (j.id, i), t) >= 0.5]
            steps.append(here[0] if len(here) == 1 else "?")
        itin[j.id] = steps
    repair = {}
    for br in s.damaged:
        k = [float(v) for v in sched.get("kappa", br.id)]
        restored = next((t for t in T if k[t - 1] >= 0.5), None)
        repair[br.id] = {"kappa": k, "restored_at": restored}
    fills = {d.id: [float(v) for v in sched.get("psi", d.id)] for d in s.depots}
    fills.update({j.id: [float(v) for v in sched.get("psi", j.id)] for j in s.tankers})
    dr = {z.id: {"P": [float(v) for v in sched.get("PDRz", z.id)], "F": [float(v) for v in sched.get("FDRz", z.id)]}
          for z in s.zones}
    return {
        "scenario": s.name,
        "status": out.solution.status,
        "objective": out.solution.objective,
        "supplied": {"power": pw.tolist(), "gas": gs.tolist(), "total": (pw + gs).tolist()},
        "base_demand": {"power": bp.tolist(), "gas": bg.tolist()},
        "dr": dr,
        "fills": fills,
        "gas_storage_release": storage_release(s, sched),
        "repair": repair,
        "itineraries": itin,
        "validation": out.report.to_dict(),
    }


def write_schedule_csv(m: MilpModel, sched: Schedule, path: Path) -> None:
    cols = []
    seen = set()
    for (family, ent, _t) in m.registry:
        key = (family, ent)
        if key not in seen:
            seen.add(key)
            cols.append(key)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t"] + [".".join((f,) + e) for f, e in cols])
        for t in range(1, sched.horizon + 1):
            w.writerow([t] + [_num(sched.get(f, e, t)) for f, e in cols])


def _dump(obj, path: Path) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


# --------------------------------------------------------------------- commands
def _solver_cmd(args) -> str | None:
    if args.solver != "external":
        return None
    cmd = args.cmd or os.environ.get(ENV_CMD)
    if not cmd:
        raise UsageError(f"--solver external needs --cmd or ${ENV_CMD}")
    if "{mps}" not in cmd or "{sol}" not in cmd:
        raise UsageError("solver command needs {mps} and {sol} placeholders")
    return cmd


def cmd_run(args) -> int:
    cmd = _solver_cmd(args)
    s = scenario_from_dict(read_document(args.scenario))
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    m = assemble(s)
    if args.mps_out:
        export_mps(m, args.mps_out)
    limits = Limits(time_cap=args.time_limit) if args.time_limit else None
    sol = solve(m, args.solver, cmd, limits)
    sched = decode(s, m, sol)
    outcome = Outcome(s, m, sol, sched, audit(s, sched, sol))
    write_schedule_csv(m, sched, out_dir / "schedule.csv")
    write_solution(m, sol, out_dir / "solution.sol")
    _dump(run_report(outcome), out_dir / "report.json")
    print(outcome.report.table())
    return EXIT_OK if outcome.report.passed else EXIT_INVALID


def cmd_validate(args) -> int:
    s = scenario_from_dict(read_document(args.scenario))
    m = assemble(s)
    sol = parse_solution(m, args.solution)
    try:
        sched = decode(s, m, sol)
    except DecodeError as exc:
        print(f"validation: FAIL\n{exc}", file=sys.stderr)
        if args.out:
            Path(args.out).mkdir(parents=True, exist_ok=True)
            _dump({"pass": False, "findings": [Finding("decode", "binary value", "model", None, 1.0, 1e-4).as_dict()],
                   "error": str(exc)}, Path(args.out) / "report.json")
        return EXIT_INVALID
    report = audit(s, sched, sol)
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        _dump(report.to_dict(), Path(args.out) / "report.json")
    print(report.table())
    return EXIT_OK if report.passed else EXIT_INVALID


def cmd_compare(args) -> int:
    cmd = _solver_cmd(args)
    doc = read_document(args.scenario)
    cases = [("base", doc)]
    for spec in args.case or []:
        if "=" not in spec:
            raise UsageError(f"--case expects NAME=OVERLAY, got {spec!r}")
        name, path = spec.split("=", 1)
        if not name or name in [c[0] for c in cases]:
            raise UsageError(f"--case name {name!r} is empty or repeated")
        cases.append((name, apply_patch(doc, load_overlay(data_file(path)))))
    scenarios = [(name, scenario_from_dict(d)) for name, d in cases]
    limits = Limits(time_cap=args.time_limit) if args.time_limit else None
    columns, status = [], EXIT_OK
    for name, s in scenarios:
        outcome = run_scenario(s, args.solver, cmd, limits)
        pw, gs = supplied_series(s, outcome.schedule)
        columns.append((name, pw + gs))
        if not outcome.report.passed:
            status = EXIT_INVALID
            print(f"case {name}: validation failed ({len(outcome.report.findings)} findings)", file=sys.stderr)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "compare.csv", "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t"] + [n for n, _ in columns])
        for t in range(len(columns[0][1])):
            w.writerow([t + 1] + [_num(c[t]) for _, c in columns])
    return status


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="gridmender", description="Restoration scheduling for coupled power and gas networks.")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    def solver_flags(p):
        p.add_argument("--solver", choices=("builtin", "external"), default="builtin")
        p.add_argument("--cmd", help=f"external solver template with {{mps}} and {{sol}} (default ${ENV_CMD})")
        p.add_argument("--time-limit", type=float, default=None, help="builtin solver time cap in seconds")

    p = sub.add_parser("run", help="assemble, solve, decode and validate one scenario")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out", default=".")
    p.add_argument("--mps-out", default=None)
    solver_flags(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("validate", help="validate a solution file against a scenario")
    p.add_argument("--scenario", required=True)
    p.add_argument("--solution", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("compare", help="run a scenario and overlay cases, write compare.csv")
    p.add_argument("--scenario", required=True)
    p.add_argument("--case", action="append", metavar="NAME=OVERLAY")
    p.add_argument("--out", default=".")
    solver_flags(p)
    p.set_defaults(func=cmd_compare)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("gridmender: a subcommand is required (run, validate, compare)")
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        print(build_parser().format_usage(), file=sys.stderr, end="")
        return EXIT_USAGE
    except (ScenarioError, SolutionParseError, ValueError, KeyError) as exc:
        print(f"gridmender: input error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except SolverFailure as exc:
        print(f"gridmender: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
