"""Base case and the three what-if cases on the reconstructed 37x8 system.

Needs an external MILP solver; the bundled HiGHS adapter is used unless
GRIDMENDER_SOLVER_CMD is set.  Expect several minutes per case.

    python walkthroughs/03_iends_cases.py
"""
import json
import os
import sys
from importlib import resources

from gridmender.cli import run_scenario, storage_release, supplied_series
from gridmender.overlay import apply_patch, load_overlay
from gridmender.scenario import scenario_from_dict

data = resources.files("gridmender") / "data"
cmd = os.environ.get("GRIDMENDER_SOLVER_CMD",
                     f"{sys.executable} -m gridmender.adapters.highs --time-limit 900 {{mps}} {{sol}}")
base = json.loads((data / "iends37x8.json").read_text())

totals = {}
for name in ("base", "case1", "case2", "case3"):
    doc = base if name == "base" else apply_patch(base, load_overlay(str(data / f"{name}.json")))
    out = run_scenario(scenario_from_dict(doc), "external", cmd)
    pw, gs = supplied_series(out.scenario, out.schedule)
    totals[name] = pw + gs
    release = sum(sum(v) for v in storage_release(out.scenario, out.schedule).values())
    print(f"{name:6s} {out.solution.status:8s} audit {'PASS' if out.report.passed else 'FAIL'}  "
          f"storage release {release:8.1f}")

print("\nstep " + "".join(f"{n:>9s}" for n in totals))
for t in range(len(totals["base"])):
    print(f"{t + 1:4d} " + "".join(f"{v[t]:9.1f}" for v in totals.values()))
