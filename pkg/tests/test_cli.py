import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from asymhecke.cli import RunConfig, UsageError, main

GROUPS = Path(__file__).resolve().parents[1] / "demos" / "groups"


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_cells_counts():
    code, out = run("cells", "--type", "A2")
    doc = json.loads(out)
    assert code == 0 and len(doc["left_cells"]) == 4 and len(doc["two_sided_cells"]) == 3
    code, out = run("cells", "--type", "A1", "--dump-cells")
    doc = json.loads(out)
    assert len(doc["left_cells"]) == 2 and len(doc["two_sided_cells"]) == 2


def test_usage_errors():
    assert run("cells", "--type", "Z9")[0] == 2
    assert run("cells")[0] == 2
    assert run("wgraph", "--type", "A2", "--cell", "7")[0] == 2
    assert run("cells", "--type", "A4", "--cap", "50")[0] == 2
    assert run("eqbundle", "--group", "/nonexistent.json")[0] == 2
    assert run("bogus")[0] == 2


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig(type_label="A2", rounding=0)
    with pytest.raises(UsageError):
        RunConfig(type_label="A4", cap=10)
    assert RunConfig(type_label="A2").type_label == "A2"


@pytest.mark.parametrize("label", ["B2", "G2", "A3"])
def test_verify_exit_zero(label):
    code, out = run("verify", "--type", label)
    assert code == 0 and "FAIL" not in out


def test_verify_failure_exit_one():
    # no float path can meet a relative tolerance of 1e-300
    code, out = run("verify", "--type", "G2", "--tol-rel", "1e-300")
    assert code == 1
    assert '"failures"' in out


def test_special_table():
    code, out = run("special", "--type", "A2")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 4 and all(l.endswith("pass") for l in lines[1:])
    code, out = run("special", "--type", "A2", "--format", "json")
    rows = json.loads(out)["cells"]
    assert all(r["b"] == r["a_prime"] for r in rows)


def test_wgraph_dot():
    code, out = run("wgraph", "--type", "A2", "--cell", "1", "--format", "dot")
    assert code == 0 and out.startswith("digraph") and out.count("[label=") == 4


def test_gamma_dumps():
    code, out = run("gamma", "--type", "A1")
    assert out == "0 0 0 1\n1 1 1 1\n"
    code, out = run("gamma", "--type", "A2", "--dump-h", "1", "1")
    assert out == "1 1*v^-1 + 1*v^1\n"


def test_verify_theorem12_json():
    code, out = run("verify-theorem12", "--type", "B2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and all(c["passed"] for c in doc["cells"])
    assert "lambdas" in doc["cells"][1]["data"]


def test_eqbundle_check():
    code, out = run("eqbundle", "--check-42", "--group", str(GROUPS / "s2_regular.json"))
    assert code == 0 and json.loads(out)["passed"]


def test_dump_group():
    code, out = run("cells", "--type", "A1", "--dump-group")
    assert json.loads(out)["order"] == 2


def test_byte_stable_across_processes():
    cmd = [sys.executable, "-m", "asymhecke", "wgraph", "--type", "G2", "--cell", "1"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
    cmd = [sys.executable, "-m", "asymhecke", "cells", "--type", "B3"]
    assert subprocess.run(cmd, capture_output=True).stdout == subprocess.run(cmd, capture_output=True).stdout
