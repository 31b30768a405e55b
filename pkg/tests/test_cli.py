import csv
import io
import json
import shutil
import subprocess
import sys

import pytest

from zornlie import g2
from zornlie.cli import main
from zornlie.scalar import SQRT2


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_g2(tmp_path, name, label):
    p = tmp_path / name
    p.write_text(json.dumps(g2.generator(label).to_json()))
    return str(p)


def test_dims(capsys):
    code, out, _ = run(capsys, "dims")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert data["dims"] == {"g2": 14, "f4": 52, "e6": 78, "e7": 133, "e8": 248}


def test_branching_single(capsys):
    code, out, _ = run(capsys, "branching", "--algebra", "f4")
    assert code == 0
    rep = json.loads(out)["f4"]
    assert rep["total"] == 52 and rep["passed"]


def test_verify_writes_report(capsys, tmp_path):
    out_path = tmp_path / "rep.json"
    code, out, err = run(capsys, "verify", "--algebra", "g2", "--out", str(out_path))
    assert code == 0 and out == ""
    assert "pass" in err
    rep = json.loads(out_path.read_text())
    assert rep["passed"] and rep["algebra"] == "g2"


def test_verify_sampled_seed(capsys):
    code, out, _ = run(capsys, "verify", "--algebra", "g2", "--mode", "sampled", "--samples", "5", "--seed", "9")
    rep = json.loads(out)
    assert code == 0 and rep["seed"] == 9 and rep["samples"] == 5


def test_bracket(capsys, tmp_path):
    lhs = write_g2(tmp_path, "h.json", "H1")
    rhs = write_g2(tmp_path, "g.json", "g1+")
    code, out, _ = run(capsys, "bracket", "--algebra", "g2", "--lhs", lhs, "--rhs", rhs)
    assert code == 0
    got = g2.G2Element.from_json(json.loads(out))
    assert got == g2.generator("g1+") * (SQRT2 / 2)


def test_structure_constants(capsys, tmp_path):
    code, out, _ = run(capsys, "structure-constants", "--algebra", "g2")
    data = json.loads(out)
    assert code == 0 and data["dim"] == 14 and data["brackets"]
    code, _, err = run(capsys, "structure-constants", "--algebra", "g2", "--format", "csv")
    assert code == 2 and "JSON only" in err


def test_roots_csv_and_json(capsys):
    code, out, _ = run(capsys, "roots", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 72
    code, out, _ = run(capsys, "roots", "--algebra", "e6")
    data = json.loads(out)
    assert len(data["table1"]) == 9 and all(r["ok"] for r in data["table1"])
    code, out, _ = run(capsys, "roots", "--algebra", "g2", "--format", "csv")
    assert code == 0 and len(list(csv.DictReader(io.StringIO(out)))) == 12


@pytest.mark.parametrize("argv, needle", [
    (["verify"], "--algebra is required"),
    (["verify", "--algebra", "e9"], "unknown algebra"),
    (["verify", "--algebra", "g2", "--samples", "0"], "--samples must be positive"),
    (["bracket", "--algebra", "g2"], "needs --lhs and --rhs"),
    (["bracket", "--algebra", "g2", "--lhs", "/nonexistent.json", "--rhs", "/nonexistent.json"], "cannot read"),
    (["roots", "--algebra", "f4"], "roots are available"),
])
def test_usage_errors(capsys, argv, needle):
    code, _, err = run(capsys, *argv)
    assert code == 2 and needle in err


def test_argparse_errors_exit_2(capsys):
    assert main(["frobnicate"]) == 2
    assert main(["verify", "--mode", "fast"]) == 2
    assert main(["verify", "--samples", "many"]) == 2
    capsys.readouterr()


def test_bad_element_files(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    ok = write_g2(tmp_path, "ok.json", "H1")
    code, _, err = run(capsys, "bracket", "--algebra", "g2", "--lhs", str(bad), "--rhs", ok)
    assert code == 2 and "not valid JSON" in err
    tr = tmp_path / "trace.json"
    data = g2.generator("H1").to_json()
    data["a"][0][0] = ["1/1"] + ["0/1"] * 7
    data["a"][1][1] = ["0/1"] * 8
    tr.write_text(json.dumps(data))
    code, _, err = run(capsys, "bracket", "--algebra", "g2", "--lhs", str(tr), "--rhs", ok)
    assert code == 2 and "traceless" in err
    tagged = tmp_path / "tagged.json"
    tagged.write_text(json.dumps({"algebra": "e7"}))
    code, _, err = run(capsys, "bracket", "--algebra", "e6", "--lhs", str(tagged), "--rhs", str(tagged))
    assert code == 2 and "tagged" in err


@pytest.mark.skipif(shutil.which("zornlie") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["zornlie", "dims", "--algebra", "g2"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["dims"] == {"g2": 14}
    res = subprocess.run([sys.executable, "-m", "zornlie.cli", "nope"], capture_output=True, text=True)
    assert res.returncode == 2
