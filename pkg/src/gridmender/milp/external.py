"""Run an external MILP solver through files.

The command template must contain ``{mps}`` and ``{sol}``; the child
process reads the MPS model and writes a solution file in the format of
:mod:`.solution`.  Exit status 0 plus a fresh solution file is success.
"""
from __future__ import annotations

import os
import shlex
import subprocess
import tempfile
from pathlib import Path

from .model import MilpModel, Solution
from .mps import export_mps
from .solution import parse_solution


class ExternalSolverError(RuntimeError):
    def __init__(self, message: str, output: str = ""):
        super().__init__(message + (f"\n--- solver output ---\n{output}" if output else ""))
        self.output = output


def solve_external(m: MilpModel, cmd_template: str, workdir: str | Path | None = None,
                   timeout: float | None = None) -> Solution:
    if "{mps}" not in cmd_template or "{sol}" not in cmd_template:
        raise ValueError("solver command template needs {mps} and {sol} placeholders")
    tmp = None
    if workdir is None:
        tmp = tempfile.TemporaryDirectory(prefix="gridmender-")
        workdir = tmp.name
    try:
        wd = Path(workdir)
        wd.mkdir(parents=True, exist_ok=True)
        mps = wd / f"{m.name}.mps"
        sol = wd / f"{m.name}.sol"
        if sol.exists():
            sol.unlink()
        export_mps(m, mps)
        cmd = cmd_template.format(mps=shlex.quote(str(mps)), sol=shlex.quote(str(sol)))
        proc = subprocess.run(cmd, shell=True, cwd=wd, capture_output=True, text=True, timeout=timeout,
                              env=os.environ.copy())
        output = (proc.stdout or "") + (proc.stderr or "")
        if proc.returncode != 0:
            raise ExternalSolverError(f"solver exited with status {proc.returncode}", output)
        if not sol.exists() or sol.stat().st_mtime < mps.stat().st_mtime:
            raise ExternalSolverError("solver did not write a (fresh) solution file", output)
        return parse_solution(m, sol)
    finally:
        if tmp is not None:
            tmp.cleanup()
