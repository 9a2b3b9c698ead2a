import json
import subprocess
import sys

import pytest

from eulerian_orientations.cli import CHECKS, main
from eulerian_orientations.fps import from_json
from eulerian_orientations.maps import parse_map


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_sequence(capsys):
    assert run(capsys, "sequence", "--family", "quartic", "--count", "3")[:2] == (0, "4 35 402\n")
    code, out, _ = run(capsys, "sequence", "--family", "general", "--count", "3", "--format", "json")
    assert json.loads(out) == {"family": "general", "values": ["1", "5", "33"]}


def test_solve_system(capsys, tmp_path):
    target = tmp_path / "sol.json"
    assert run(capsys, "solve-system", "--system", "colourful", "--order", "4", "--out", str(target))[0] == 0
    doc = json.loads(target.read_text())
    P = from_json(doc["P"])
    assert P.coeff(1, 1) == 2 and P.coeff(1, 2) == 10


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--edges", "2")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 9
    assert all(parse_map(line).n_edges == 2 for line in lines)
    _, out, _ = run(capsys, "enumerate", "--edges", "3", "--filter", "bipartite")
    assert len(out.splitlines()) == 12


def test_enumerate_is_deterministic(capsys):
    a = run(capsys, "enumerate", "--edges", "3")[1]
    b = run(capsys, "enumerate", "--edges", "3")[1]
    assert a == b


def test_verify_single_and_json(capsys):
    code, out, _ = run(capsys, "verify", "--check", "tutte33", "--format", "json")
    report = json.loads(out)
    assert code == 0 and report[0]["name"] == "tutte33" and report[0]["status"] == "pass"
    assert set(report[0]) == {"name", "status", "detail", "wall_time_ms"}


def test_verify_registry():
    assert {"system-vs-closed-form", "oracle-eo", "bijection-roundtrip", "forest-link", "growth-report"} <= set(CHECKS)


def test_usage_errors(capsys):
    assert run(capsys, "verify", "--check", "nope")[0] == 2
    assert run(capsys, "sequence", "--family", "cubic", "--count", "3")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "trees", "--family", "general", "--mode", "marked")[0] == 2


def test_resource_ceiling(capsys):
    code, _, err = run(capsys, "--max-edges", "2", "enumerate", "--edges", "3")
    assert code == 3 and "ceiling" in err
    assert run(capsys, "--max-order", "5", "sequence", "--family", "quartic", "--count", "10")[0] == 3


def test_verify_resource_is_skipped(capsys):
    code, out, _ = run(capsys, "--max-edges", "2", "verify", "--check", "oracle-eo")
    assert code == 3 and "SKIPPED" in out


def test_bad_environment(capsys, monkeypatch):
    monkeypatch.setenv("EO_MAX_EDGES", "lots")
    assert run(capsys, "enumerate", "--edges", "1")[0] == 2


def test_asym_growth(capsys):
    code, out, _ = run(capsys, "asym", "--family", "general", "--n-max", "20")
    assert code == 0 and len(out.splitlines()) == 21


def test_trees(capsys):
    code, out, _ = run(capsys, "trees", "--family", "general", "--max-size", "4")
    assert code == 0 and out.splitlines() == ["2 2 2", "3 4 4", "4 20 20"]
    code, out, _ = run(capsys, "trees", "--family", "quartic", "--max-size", "3", "--mode", "marked", "--u", "2", "--format", "json")
    assert code == 0 and len(json.loads(out)["rows"]) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "eulerian_orientations", "sequence", "--family", "general", "--count", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1 5\n"


def test_flags_do_not_leak(capsys, monkeypatch):
    import os

    monkeypatch.delenv("EO_MAX_EDGES", raising=False)
    run(capsys, "--max-edges", "2", "sequence", "--family", "general", "--count", "1")
    assert "EO_MAX_EDGES" not in os.environ


def test_count_zero(capsys):
    assert run(capsys, "sequence", "--family", "quartic", "--count", "0", "--format", "json")[:2] == (
        0,
        '{"family": "quartic", "values": []}\n',
    )


def test_quartic_triple_file(capsys, tmp_path):
    target = tmp_path / "triple.json"
    assert run(capsys, "solve-system", "--system", "quartic", "--order", "6", "--out", str(target))[0] == 0
    D = from_json(json.loads(target.read_text())["D"])
    assert D.coeff(0, 0, 0) == 1
    again = tmp_path / "again.json"
    run(capsys, "solve-system", "--system", "quartic", "--order", "6", "--out", str(again))
    assert target.read_bytes() == again.read_bytes()


def test_named_checks(capsys):
    assert run(capsys, "verify", "--check", "cat-identity", "--order", "20")[0] == 0
    assert run(capsys, "verify", "--check", "tutte33", "--edges", "3")[0] == 0


def test_io_error_has_path(capsys, tmp_path):
    code, _, err = run(capsys, "enumerate", "--edges", "1", "--out", str(tmp_path / "missing" / "x"))
    assert code == 1 and "missing" in err
