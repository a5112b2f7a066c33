import json
import subprocess
import sys

import pytest

from dynqg.cli import main, parse_lambda, parse_triple
from dynqg.errors import InvalidSpec
from dynqg.uqg import cartan_datum


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_lambda():
    assert [str(x) for x in parse_lambda(None, 2)] == ["2", "2"]
    assert [str(x) for x in parse_lambda("3/2", 1)] == ["3/2"]
    with pytest.raises(InvalidSpec):
        parse_lambda("2,3", 1)


def test_parse_triple_forms():
    datum = cartan_datum("A2")
    assert parse_triple("swap", datum, 5).tmap == {0: 1, 1: 0}
    assert parse_triple("0:1,1:0", datum, 5).tmap == {0: 1, 1: 0}


@pytest.mark.parametrize("argv", [
    ["verify", "--ell", "4"],
    ["verify", "--ell", "3", "--lambda", "1"],
    ["verify", "--type", "A2", "--ell", "5", "--suite", "abrr"],
])
def test_invalid_specs_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert "error" in json.loads(err)


def test_verify_twist_suite(capsys):
    code, out, _ = run(capsys, "verify", "--ell", "3", "--suite", "twist")
    doc = json.loads(out)
    assert code == 0
    assert doc["summary"]["failed"] == 0 and doc["summary"]["total"] > 0


def test_dump_J_shape(capsys):
    code, out, _ = run(capsys, "dump", "J", "--ell", "3")
    assert code == 0
    data = json.loads(out)["data"]
    assert len(data["values"]) == 3


def test_dump_ranks(capsys):
    code, out, _ = run(capsys, "dump", "ranks", "--ell", "3")
    rows = json.loads(out)["data"]["ranks"]
    assert len(rows) == 27
    assert all(r["rank"] == 9 and r["status"] == "pass" for r in rows)


def test_dump_is_deterministic(capsys):
    _, first, _ = run(capsys, "dump", "curlyJ", "--ell", "3")
    _, second, _ = run(capsys, "dump", "curlyJ", "--ell", "3")
    assert first == second


def test_out_file(tmp_path, capsys):
    target = tmp_path / "abrr.json"
    code, out, _ = run(capsys, "verify", "--ell", "3", "--suite", "abrr", "--out", str(target))
    assert code == 0
    assert "checks passed" in out
    assert json.loads(target.read_text())["summary"]["failed"] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dynqg", "verify", "--ell", "4"], capture_output=True, text=True)
    assert proc.returncode == 2
