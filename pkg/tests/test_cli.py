import json
import subprocess
import sys
from pathlib import Path

import pytest

from weylquant.cli import main, parse_roots, parse_weight, parse_window
from weylquant.errors import InputError
from oracles import u3_branching

HERE = Path(__file__).parent
SU3_FILE = HERE.parent / "src" / "weylquant" / "data" / "su3.json"


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parsers():
    assert parse_weight("0,6") == parse_weight("[0, 6]") == (0, 6)
    assert parse_roots("[]") == [] and parse_roots("[[4,-2]]") == [(4, -2)]
    assert parse_window("-4:4,0:6") == [(-4, 4), (0, 6)]
    for bad in [lambda: parse_weight("a,b"), lambda: parse_weight(""), lambda: parse_roots("[1]"),
                lambda: parse_roots("{"), lambda: parse_window("1-2"), lambda: parse_window("a:b")]:
        with pytest.raises(InputError):
            bad()


def test_golden_character_report(capsys):
    code, out, _ = run(["character", "--input", str(SU3_FILE)], capsys)
    assert code == 0
    assert out == (HERE / "golden" / "su3_report.json").read_text()


@pytest.mark.parametrize("lam", ["0,6", "2,2", "4,2"])
def test_branch_matches_interlacing(lam, capsys):
    code, out, _ = run(["branch", "--type", "A2", "--k-roots", "[[4,-2]]", "--lambda", lam], capsys)
    assert code == 0
    rows = json.loads(out)
    assert {tuple(r["lambda"]): r["multiplicity"] for r in rows} == dict(u3_branching(parse_weight(lam)))
    if lam != "0,6":
        assert all(r["kostant"] == r["multiplicity"] for r in rows)


def test_branch_csv(capsys):
    code, out, _ = run(["branch", "--type", "A2", "--k-roots", "[[4,-2]]", "--lambda", "0,6", "--format", "csv"], capsys)
    assert code == 0
    assert out == "lambda,multiplicity\n0 6,1\n2 2,1\n4 -2,1\n6 -6,1\n"


def test_spectrum_and_multiplicity(capsys):
    code, out, _ = run(["spectrum", "--input", "builtin:su3"], capsys)
    assert code == 0
    assert {tuple(r["lambda"]): r["multiplicity"] for r in json.loads(out)} == dict(u3_branching((0, 6)))
    code, out, _ = run(["multiplicity", "--input", "builtin:su3", "--lambda", "2,2"], capsys)
    assert code == 0 and json.loads(out) == {"lambda": [2, 2], "multiplicity": 1}


def test_spectrum_window_and_gp_diff(capsys):
    code, out, _ = run(["spectrum", "--input", "builtin:cp1", "--window=-4:4"], capsys)
    assert code == 0 and len(json.loads(out)) == 3
    code, out, _ = run(["spectrum", "--input", "builtin:su3", "--window", "4:2,0:6"], capsys)
    assert code == 0 and json.loads(out) == []
    code, out, _ = run(["spectrum", "--input", "builtin:su3", "--gp-diff"], capsys)
    rows = json.loads(out)
    assert code == 0 and all({"multiplicity", "gp_value", "delta"} <= set(r) for r in rows)


def test_character_from_coadjoint_and_gkrs(capsys):
    code, out, _ = run(["character", "--type", "B2", "--k-roots", "[[4,-4]]", "--lambda", "2,2"], capsys)
    assert code == 0 and json.loads(out)["dimension"] == 16
    code, out, _ = run(["gkrs", "--type", "A2", "--k-roots", "[[4,-2]]", "--lambda", "0,6"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["size"] == 3 and doc["identity_holds"]


def test_output_file(tmp_path, capsys):
    target = tmp_path / "s.svg"
    code, out, _ = run(["diagram", "--input", "builtin:su3", "--output", str(target)], capsys)
    assert code == 0 and out == "" and target.read_text().startswith("<svg")


@pytest.mark.parametrize(
    "args",
    [
        ["branch", "--lambda", "0,6"],
        ["branch", "--type", "A2"],
        ["branch", "--type", "E6", "--lambda", "0,6"],
        ["branch", "--type", "A2", "--lambda", "2,-2"],
        ["branch", "--type", "A2", "--lambda", "0,6", "--input", "builtin:su3"],
        ["character", "--input", "builtin:nope"],
        ["character", "--input", "/nonexistent.json"],
        ["multiplicity", "--input", "builtin:su3"],
        ["multiplicity", "--input", "builtin:su3", "--lambda=-4,2"],
        ["spectrum", "--input", "builtin:su3", "--window", "0:4"],
        ["character", "--input", "builtin:su3", "--format", "csv"],
        ["character", "--input", "builtin:su3", "--gp-diff"],
        ["diagram", "--input", "builtin:cp1"],
    ],
)
def test_bad_input_exits_2(args, capsys):
    code, out, err = run(args, capsys)
    assert code == 2 and out == "" and err.startswith("error:")


def test_flipped_fixture_exits_3(tmp_path, capsys):
    doc = json.loads((HERE.parent / "src" / "weylquant" / "data" / "cp1.json").read_text())
    doc["points"][0]["tangent_weights"] = [[-2]]
    path = tmp_path / "flip.json"
    path.write_text(json.dumps(doc))
    code, out, err = run(["character", "--input", str(path)], capsys)
    assert code == 3 and "InexactDivisionError" in err


def test_verify_quick(capsys):
    code, out, _ = run(["verify", "--scope", "quick"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and len(doc["criteria"]) == 8


def test_deterministic_output(capsys):
    args = ["spectrum", "--input", "builtin:b2_product", "--gp-diff"]
    _, first, _ = run(args, capsys)
    _, second, _ = run(args, capsys)
    assert first == second


def test_threads_do_not_change_output(capsys, monkeypatch):
    args = ["spectrum", "--input", "builtin:a2_product"]
    _, serial, _ = run(args, capsys)
    monkeypatch.setenv("WEYLQUANT_THREADS", "2")
    _, parallel, _ = run(args, capsys)
    assert serial == parallel


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "weylquant", "multiplicity", "--input", "builtin:su3", "--lambda", "0,6", "--format", "csv"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "lambda,multiplicity\n0 6,1\n"


def test_branch_trivial(capsys):
    code, out, _ = run(["branch", "--type", "A2", "--k-roots", "[[4,-2]]", "--lambda", "0,0"], capsys)
    assert code == 0 and json.loads(out) == [{"lambda": [0, 0], "multiplicity": 1}]
