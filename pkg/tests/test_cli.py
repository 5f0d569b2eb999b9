import json
import subprocess
import sys

import pytest

from planecolor import cli
from planecolor.formats import format_rotation, read_planar_code


@pytest.fixture
def rot(tmp_path, fx):
    def write(name):
        doc = fx[name]
        p = tmp_path / f"{name}.rot"
        p.write_text(format_rotation(doc.graph, doc.outer))
        return str(p)
    return write


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_five_cycle(capsys, rot):
    code, out, _ = run(capsys, "check", "--input", rot("c5"))
    assert code == 1
    assert "5-cycle 1 2 3 4 5" in out


def test_check_member(capsys, rot):
    code, out, _ = run(capsys, "check", "--input", rot("cube"))
    assert code == 0 and "in F" in out
    code, out, _ = run(capsys, "check", "--input", rot("k4"))
    assert code == 1 and "adjacent-triangles" in out


def test_color_and_unsat(capsys, rot):
    code, out, _ = run(capsys, "color", "--input", rot("octahedron"))
    assert code == 0 and out.startswith("graph 1: 1:")
    code, out, _ = run(capsys, "color", "--input", rot("k4"), "--spec", "0,0,0")
    assert code == 1 and "UNSAT" in out


def test_cases_without_two_344_predicate(capsys):
    code, out, _ = run(capsys, "cases", "--center", "vertex:4", "--disable", "no-two-344-triangles-at-4-vertex")
    assert code == 1
    assert "min -1/2" in out
    assert "witness v4: 3 S 3 T 4b S 4b T" in out


def test_cases_nonnegative(capsys):
    code, out, _ = run(capsys, "cases", "--center", "face:3")
    assert code == 0 and "min 0" in out


def test_cases_budget(capsys):
    code, out, _ = run(capsys, "cases", "--center", "vertex:8", "--budget", "200")
    assert code == 0 and "min 1 (counting bound)" in out


def test_discharge_cube(capsys, rot, tmp_path):
    dest = tmp_path / "led.json"
    code, out, _ = run(capsys, "--json-out", str(dest), "discharge", "--input", rot("cube"), "--style", "kv")
    assert code == 0
    kv = dict(line.split("=", 1) for line in out.splitlines())
    assert kv["sum.initial"] == kv["sum.final"] == "0"
    doc = json.loads(dest.read_text())
    assert doc["sum_final"] == "0"


def test_discharge_text(capsys, rot):
    code, out, _ = run(capsys, "discharge", "--input", rot("cube"))
    assert code == 0 and "-1/2" in out


def test_configs(capsys):
    code, out, _ = run(capsys, "configs", "verify", "--falsified")
    assert code == 1 and "FAIL" in out and "witness 4:1 5:1 6:1" in out
    code, out, _ = run(capsys, "configs", "verify", "--id", "triangle-333")
    assert code == 0 and ": ok" in out
    code, out, _ = run(capsys, "configs", "list")
    assert code == 0 and len(out.splitlines()) >= 10


def test_superextend_and_theorem(capsys, rot):
    code, out, _ = run(capsys, "superextend", "--input", rot("cube"), "--precolor", "1,2,1,2")
    assert code == 0 and out.startswith("C0 ")
    code, out, _ = run(capsys, "theorem", "--input", rot("c7"))
    assert code == 0 and "superextend" in out


@pytest.mark.parametrize("argv", [
    ["cases", "--center", "vertex:9"],
    ["cases", "--center", "vertex:4", "--disable", "no-such-predicate"],
    ["check", "--input", "/nonexistent/file.rot"],
    ["gen", "--max-n", "11"],
    ["frobnicate"],
    ["superextend", "--input", "IN", "--precolor", "1"],
])
def test_usage_errors(capsys, rot, argv):
    argv = [rot("k4") if a == "IN" else a for a in argv]
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_invariant_violation(capsys, rot, monkeypatch):
    real = cli.apply_rules

    def broken(r):
        led = real(r)
        led.initial[next(iter(led.initial))] += 1
        return led

    monkeypatch.setattr(cli, "apply_rules", broken)
    code, _, err = run(capsys, "discharge", "--input", rot("cube"))
    assert code == 3 and "invariant" in err


def test_gen_to_file(capsys, tmp_path):
    dest = tmp_path / "g.pc"
    code, out, _ = run(capsys, "gen", "--max-n", "5", "--min-n", "5", "--filter", "family_F", "--out", str(dest))
    assert code == 0
    assert len(read_planar_code(dest.read_bytes())) == int(out.split()[1])


def test_deterministic_output(rot):
    path = rot("cube")
    cmd = [sys.executable, "-m", "planecolor.cli", "discharge", "--input", path]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
    g1 = subprocess.run([sys.executable, "-m", "planecolor.cli", "gen", "--max-n", "6"], capture_output=True).stdout
    g2 = subprocess.run([sys.executable, "-m", "planecolor.cli", "gen", "--max-n", "6"], capture_output=True).stdout
    assert g1 == g2 and len(read_planar_code(g1)) == 1 + 1 + 2 + 6 + 25 + 179
