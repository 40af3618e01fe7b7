from __future__ import annotations

import json
import subprocess
import sys

from knotgame.cli import VERIFY_CASES, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_fraction_human(capsys):
    code, out, _ = run(capsys, "fraction", "[3,1,3]")
    assert code == 0
    assert out.strip() == "p/q = 15/4 (knot, knotted)"


def test_fraction_json(capsys):
    code, out, _ = run(capsys, "fraction", "[(2)]", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload == {
        "diagram": "[(2)]",
        "p": 2,
        "q": 1,
        "closure": "two-component link",
    }


def test_outcome(capsys):
    code, out, _ = run(capsys, "outcome", "[(2),(2)]")
    assert code == 0
    assert out.strip() == "2 (unknotter first: knotter wins, knotter first: unknotter wins)"

    code, out, _ = run(capsys, "outcome", "[(3)]", "--format", "json")
    assert json.loads(out)["outcome"] == "U"


def test_xy(capsys):
    code, out, _ = run(capsys, "xy", "[(2),(1),(1),(2)]")
    assert code == 0
    assert out.strip() == "X=1 Y=3 normalized=(2,1)"


def test_classify_irreducible(capsys):
    code, out, _ = run(capsys, "classify", "[(2),(2)]")
    assert code == 0
    assert out.strip() == "irreducible-(2,1)"


def test_classify_odd_even_with_trace(capsys):
    code, out, _ = run(capsys, "classify", "[(2),(2),(1)]")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "odd-even-reducible"
    assert lines[1] == "  one-comb-right@2: [(2),(3)]"


def test_classify_json_keeps_machine_kind(capsys):
    code, out, _ = run(capsys, "classify", "[(2),(1),(1),(1),(2)]", "--format", "json")
    payload = json.loads(out)
    assert payload["kind"] == "irreducible-21"
    assert payload["trace"][-1].endswith("[(2),(2)]")


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "[(3)]")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "two-loss@0: [(1)]"
    assert lines[-1].endswith("[]")

    code, out, _ = run(capsys, "reduce", "[]")
    assert code == 0
    assert out.strip() == "already trivial"


def test_sum_outcome(capsys):
    code, out, _ = run(capsys, "sum-outcome", "[(3)]#[(2),(2)]")
    assert code == 0
    assert out.strip() == "1 (some-irreducible-odd-parity)"


def test_sweep_tsv(capsys):
    code, out, err = run(capsys, "sweep", "--max-crossings", "4")
    assert code == 0
    rows = [line.split("\t") for line in out.strip().splitlines()]
    assert all(len(row) == 4 and row[3] == "ok" for row in rows)
    assert f"# {len(rows)} positions, 0 disagreements" in err


def test_verify_all_pass(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == len(VERIFY_CASES) == 12
    assert all(line.startswith("PASS") for line in lines)
    assert "[3, 1, 3]: Ursula first -> Ursula" in lines[0]


def test_input_errors_exit_2(capsys):
    for argv in (
        ["outcome", "[(2)]"],
        ["fraction", "[2,]"],
        ["classify", "[1(2)]"],
        ["reduce", "[(2)]"],
        ["sum-outcome", "[1(2)]"],
    ):
        code, out, err = run(capsys, *argv)
        assert code == 2, argv
        assert err.startswith("error: ")


def test_console_script_and_module_entry():
    script = subprocess.run(
        ["knotgame", "fraction", "[3,1,3]"], capture_output=True, text=True
    )
    assert script.returncode == 0
    assert "15/4" in script.stdout

    module = subprocess.run(
        [sys.executable, "-m", "knotgame", "verify"], capture_output=True, text=True
    )
    assert module.returncode == 0
    assert module.stdout.count("PASS") == 12


def test_play_human_win():
    reply = subprocess.run(
        ["knotgame", "play", "[(1)]"],
        input="0 0 +\n",
        capture_output=True,
        text=True,
    )
    assert reply.returncode == 0
    assert "result: unknotter-won" in reply.stdout


def test_play_quit():
    reply = subprocess.run(
        ["knotgame", "play", "[(3)]"],
        input="q\n",
        capture_output=True,
        text=True,
    )
    assert reply.returncode == 0
