from __future__ import annotations

import json
import subprocess
import sys

import pytest

from em1.cli import main, parse_env

from conftest import corpus_path

SQ = corpus_path("sq.em1")
CORE = corpus_path("core.em1")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_run_sq_witness(capsys, tmp_path):
    trace = tmp_path / "t.json"
    code, out, _ = run(capsys, "run", SQ, "--proof", "main", "--env", "x=9,y=3", "--witness", "SQ", "--trace", str(trace))
    assert code == 0
    assert "witness: (phi SQ x) = 3" in out
    assert 'final state: {"atoms":[{"pred":"SQ","args":[9],"witness":3}]}' in out
    steps = json.loads(trace.read_text())
    assert [s["step_index"] for s in steps] == [0, 1]
    assert steps[0]["added_atoms"] == [{"pred": "SQ", "args": [9], "witness": 3}]


def test_trace_files_are_byte_identical(capsys, tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"t{i}.json"
        state = '{"atoms":[{"pred":"LT","args":[2],"witness":6}]}'
        run(capsys, "run", CORE, "--proof", "chi_ind", "--env", "y=5", "--state", state, "--merge", "min", "--trace", str(path))
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_check_lists_conclusions(capsys):
    code, out, _ = run(capsys, "check", CORE)
    assert code == 0
    assert "add_zero_left: (= (add 0 y) y)" in out


def test_check_reports_located_arity_error(capsys, tmp_path):
    bad = tmp_path / "bad.em1"
    bad.write_text("(defpred LT (x y) 1)\n(term t (phi LT x y))\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 1
    assert err.startswith("em1: error: 2:")


def test_check_rejects_bad_proof(capsys, tmp_path):
    bad = tmp_path / "bad.em1"
    bad.write_text("(defpred P (x) x)\n(proof p (taut (implies (P x) (P y))))\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 1 and "not a tautology" in err


def test_eval(capsys):
    state = '{"atoms":[{"pred":"SQ","args":[9],"witness":3}]}'
    code, out, _ = run(capsys, "eval", SQ, "--formula", "root", "--state", state, "--env", "x=9")
    assert (code, out.strip()) == (0, "true")
    code, out, _ = run(capsys, "eval", SQ, "--formula", "guard", "--state", "empty", "--env", "x=9")
    assert (code, out.strip()) == (0, "false")


def test_eval_term_and_state_file(capsys, tmp_path):
    f = tmp_path / "p.em1"
    f.write_text(open(SQ).read() + "\n(term r (phi SQ x))\n")
    st = tmp_path / "s.json"
    st.write_text('{"atoms":[{"pred":"SQ","args":[4],"witness":2}]}')
    code, out, _ = run(capsys, "eval", str(f), "--term", "r", "--state", str(st), "--env", "x=4")
    assert (code, out.strip()) == (0, "2")


@pytest.mark.parametrize(
    "argv",
    [
        ["run", SQ, "--proof", "nope"],
        ["run", SQ, "--proof", "main", "--env", "x=-1"],
        ["run", SQ, "--proof", "main", "--state", '{"atoms":[{"pred":"SQ","args":[9],"witness":2}]}'],
        ["eval", SQ, "--formula", "missing"],
        ["check", "/nonexistent/file.em1"],
    ],
)
def test_user_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and err.startswith("em1: error:")


def test_cap_exceeded_is_user_error(capsys):
    code, _, err = run(capsys, "run", CORE, "--proof", "chi_ind", "--env", "y=6", "--cap", "0")
    assert code == 1 and "prefix point" in err


def test_laws_command(capsys):
    code, out, _ = run(capsys, "laws", "--seed", "42", "--iters", "100")
    assert code == 0
    assert out.strip().endswith("8/8 suites passed")


def test_parse_env():
    assert parse_env("x=9, y=3") == {"x": 9, "y": 3}
    assert parse_env(None) == {}
    with pytest.raises(ValueError):
        parse_env("x")


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "em1.cli", "run", SQ, "--proof", "main", "--env", "x=9,y=3", "--witness", "SQ"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and "= 3" in proc.stdout
