from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

SCRIPTS = Path(__file__).parent.parent / "scripts"


def _run(*args):
    return subprocess.run([sys.executable, *map(str, args)], capture_output=True, text=True)


def test_run_suite_script(tmp_path):
    out = tmp_path / "r.json"
    proc = _run(SCRIPTS / "run_suite.py", "--only", "parameters,group-dij", "--out", out, "--no-timing")
    assert proc.returncode == 0, proc.stderr
    reps = json.loads(out.read_text())
    assert [r["verdict"] for r in reps] == ["verified", "verified"]
    assert all("timing" not in r for r in reps)


def test_run_suite_script_unknown_name(tmp_path):
    proc = _run(SCRIPTS / "run_suite.py", "--only", "nope", "--out", tmp_path / "r.json")
    assert proc.returncode == 2 and "unknown scenario" in proc.stderr


def test_chain_table_script():
    proc = _run(SCRIPTS / "chain_table.py", "grassmann:4,2", "--limit", "6")
    assert proc.returncode == 0, proc.stderr
    row = proc.stdout.splitlines()[1].split()
    assert row == ["grassmann:4,2", "64", "37", "11", "1", "0", "0", "4"]
