import json

import pytest

from cpalg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def as_json(text):
    return json.loads(text[text.index("{"):])


def test_check_cp_ok_and_refuted(capsys):
    code, out, _ = run(capsys, "check-cp", "--expr", "x*x", "--hi", "20")
    assert code == 0 and as_json(out)["holds"] is True
    code, out, _ = run(capsys, "check-cp", "--expr", "x // 3", "--hi", "20")
    d = as_json(out)
    assert code == 1 and d["holds"] is False and d["schema"] == 1


def test_input_errors_exit_2(capsys):
    code, out, err = run(capsys, "check-cp", "--expr", "__import__('os')", "--hi", "5")
    assert code == 2 and as_json(out)["error"] == "input"
    code, _, _ = run(capsys, "lattice", "--set", "{not json")
    assert code == 2


def test_lattice_boolean_count(capsys):
    data = json.dumps({"carrier": "Z", "k": 10, "G": [0]})
    code, out, _ = run(capsys, "lattice", "--set", data, "--kind", "boolean")
    assert code == 0 and as_json(out)["count"] == 1024


def test_fryingpan_dot(capsys):
    code, out, _ = run(capsys, "fryingpan", "--a", "0", "--k", "3", "--dot")
    assert code == 0 and out.startswith("digraph") and "n2 -> n0;" in out


def test_construct_appendix_and_determinism(capsys):
    _, first, _ = run(capsys, "construct", "appendix-F", "--max", "8")
    _, second, _ = run(capsys, "construct", "appendix-F", "--max", "8")
    assert first == second
    d = as_json(first)
    assert d["values"][3] == 12 and d["certificate"]["pairwise_divisible"]


def test_out_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "--out", str(target), "construct", "e-factorial", "--max", "5")
    assert code == 0 and out == ""
    assert as_json(target.read_text())["values"][:4] == [1, 2, 5, 16]


def test_padic_extend(capsys):
    code, out, _ = run(capsys, "padic-extend", "--p", "2", "--n", "8", "--x", "-1", "--appendix-F")
    assert code == 0 and as_json(out)["value"]["digits"] == "0" * 8


def test_verify_suite_report(capsys, tmp_path):
    code, out, _ = run(capsys, "verify-suite", "--only", "1,2", "--report-dir", str(tmp_path))
    assert code == 0
    assert (tmp_path / "summary.csv").read_text().count("\n") == 3
    assert (tmp_path / "fryingpan_2_8.png").stat().st_size > 0


def test_check_cp_zp_from_list(capsys):
    code, _, _ = run(capsys, "check-cp", "--table", "[0,1,4,9,16,25,36,49]", "--p", "2", "--n", "3")
    assert code == 0
    code, out, _ = run(capsys, "check-cp", "--table", "[0,2,1,3,4,6,5,7]", "--p", "2", "--n", "3")
    assert code == 1 and as_json(out)["witness"] == [2, 0]
