import json
import subprocess
import sys

import pytest

from preprojective.cli import main
from preprojective.export import dumps, export_dot, export_json
from preprojective.silting import enumerate_interval


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv", [
    ["--quiver", "Q9", "gamma"],
    ["--quiver", "1->2, 2->1", "gamma"],
    ["--field", "Fp:6", "gamma"],
    ["--degree-window", "-1:3", "gamma"],
    ["--jobs", "0", "gamma"],
    ["braid-map", "1 5"],
    ["spherical-check", "9"],
    ["cohomology", "S1", "P1"],
    ["--quiver", "Kronecker2", "enumerate", "--interval", "1"],
    ["no-such-verb"],
])
def test_config_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_gamma_listing(capsys):
    code, out, _ = run(capsys, "gamma", "-W", "3")
    assert code == 0
    assert "d(t1) = -(a1*)(a1)" in out


def test_spherical_check(capsys):
    code, out, _ = run(capsys, "--quiver", "A3", "spherical-check", "2", "-W", "8")
    assert code == 0 and "2-spherical: yes" in out


def test_cohomology_json(capsys):
    code, out, _ = run(capsys, "--json", "cohomology", "pS1", "S1", "-W", "6")
    data = json.loads(out)
    assert code == 0
    cells = {(c["p"], c["w"]): c["dim"] for c in data["table"]["cells"] if c["dim"]}
    assert cells == {(0, 0): 1, (2, -2): 1}
    assert data["quiver"] == "A2" and data["W"] == 6


def test_braid_eq(capsys):
    code, out, _ = run(capsys, "braid-eq", "1 2 1", "2 1 2")
    assert code == 0 and "EqualInBQ" in out


def test_verify_and_report(capsys, tmp_path):
    rep = tmp_path / "r.json"
    code, _, _ = run(capsys, "--quiver", "A3", "--report", str(rep), "verify",
                     "braid-relations", "--pair", "1", "2", "-W", "6")
    assert code == 0
    assert json.loads(rep.read_text())["verdict"] == "pass"


def test_window_insufficient_exit_3(capsys):
    code, out, _ = run(capsys, "check", "--only", "10", "-W", "4")
    assert code == 3
    assert "WINDOW-INSUFFICIENT" in out


def test_mutation_window_exit_3(capsys):
    assert run(capsys, "mutate", "1", "1", "-W", "4")[0] == 3


def test_export_is_deterministic(capsys, A2):
    _, a, _ = run(capsys, "export", "--dot")
    _, b, _ = run(capsys, "export", "--dot")
    assert a == b and a.startswith("digraph")
    slc = enumerate_interval(A2, 1, 8)
    assert export_json(slc) == export_json(enumerate_interval(A2, 1, 8))
    assert export_dot(slc).count("->") == len(slc.edges)


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == dumps({"a": [1, 2], "b": 1})


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "preprojective", "braid-eq", "1", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "DistinctInBQ" in r.stdout
