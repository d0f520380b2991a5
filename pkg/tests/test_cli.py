import json
import subprocess
import sys
from pathlib import Path

import pytest

from hopfkit.cli import main

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# byte-identical reruns over every builtin and task are covered by the acceptance suite


def test_sweedler_antipode_prints_s(capsys):
    code, out, _ = _run(capsys, "antipode", "--builtin", "sweedler-h4")
    assert code == 0
    assert "task antipode: PASS" in out
    assert "S = [1 0 0 0; 0 1 0 0; 0 0 0 1; 0 0 -1 0]" in out


def test_f4_fthm_reports_galois_yes(capsys):
    code, out, _ = _run(capsys, "fthm", "--builtin", "f4-galois")
    assert code == 0
    assert "task fthm: PASS" in out
    assert "Galois yes" in out


def test_idempotent_fthm_fails_with_witness(capsys):
    code, out, _ = _run(capsys, "fthm", "--builtin", "idempotent-monoid")
    assert code == 1
    assert "task fthm: FAIL" in out
    assert "witness: counit of" in out and "is not bijective" in out


def test_builtin_prefix_matches_flag(capsys):
    _, a, _ = _run(capsys, "galois", "--builtin", "kc2")
    _, b, _ = _run(capsys, "galois", "--input", "builtin:kc2")
    assert a == b


def test_document_run_uses_listed_tasks(capsys):
    code, out, _ = _run(capsys, "run", "--input", str(SAMPLES / "f4_h1.json"))
    assert code == 0
    assert [l for l in out.splitlines() if l.startswith("task")] == ["task check: PASS", "task h1: PASS"]


def test_document_failure_exits_one(capsys):
    code, out, _ = _run(capsys, "run", "--input", str(SAMPLES / "idempotent.json"))
    assert code == 1
    assert "task antipode: FAIL" in out


def test_objects_selection(capsys):
    code, out, _ = _run(capsys, "check", "--input", str(SAMPLES / "kc2.json"), "--objects", "kC2,N")
    assert code == 0
    items = [l.strip() for l in out.splitlines() if l.startswith("  [")]
    assert items == ["[pass] kC2: algebra, 0 violations", "[pass] N: Hopf module, 0 violations"]


def test_selection_can_skip(capsys):
    code, out, _ = _run(capsys, "antipode", "--input", str(SAMPLES / "kc2.json"), "--objects", "kC2")
    assert code == 0
    assert "SKIPPED (no bialgebra in scope)" in out


@pytest.mark.parametrize("argv", [
    ["check", "--input", "/nonexistent/doc.json"],
    ["check", "--input", "builtin:no-such-thing"],
    ["check", "--builtin", "kc2", "--objects", "ghost"],
])
def test_input_errors_exit_two(capsys, argv):
    code, out, err = _run(capsys, *argv)
    assert code == 2 and out == ""
    assert err.startswith("hopfkit: error:")


def test_malformed_documents_exit_two(capsys, tmp_path):
    bad_json = tmp_path / "bad.json"
    bad_json.write_text('{"field": "Q",\n "objects": ')
    code, _, err = _run(capsys, "check", "--input", str(bad_json))
    assert code == 2 and "ParseError" in err

    raw = json.loads((SAMPLES / "kc2.json").read_text())
    raw["objects"]["kC2"]["mult"] = [[["1", "0"], ["0", "1"]]]
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps(raw))
    code, _, err = _run(capsys, "check", "--input", str(wrong))
    assert code == 2 and "ShapeError" in err and "objects.kC2.mult" in err


@pytest.mark.parametrize("argv", [
    [],
    ["check"],
    ["frobnicate", "--builtin", "kc2"],
    ["check", "--builtin", "kc2", "--input", "x.json"],
    ["check", "--builtin", "kc2", "--format", "yaml"],
])
def test_usage_errors_exit_two(capsys, argv):
    with pytest.raises(SystemExit) as e:
        main(argv)
    assert e.value.code == 2
    capsys.readouterr()


def test_machine_format_mirrors_text(capsys):
    _, text, _ = _run(capsys, "run", "--builtin", "idempotent-monoid")
    _, machine, _ = _run(capsys, "run", "--builtin", "idempotent-monoid", "--format", "machine")
    d = json.loads(machine)
    lines = [f"source: {d['source']}"]
    for t in d["tasks"]:
        head = f"task {t['task']}: {t['verdict'].upper()}"
        if "reason" in t:
            head += f" ({t['reason']})"
        lines.append(head)
        for i in t["items"]:
            lines.append(f"  [{i['verdict']}] {i['object']}: {i['detail']}")
            lines += [f"      witness: {w}" for w in i["witnesses"]]
    lines.append(f"exit: {d['exit']}")
    assert "\n".join(lines) + "\n" == text
    assert d["exit"] == 1


def test_witnesses_sorted_and_bounded(capsys):
    _, machine, _ = _run(capsys, "fthm", "--builtin", "idempotent-monoid", "--format", "machine")
    for t in json.loads(machine)["tasks"]:
        for i in t["items"]:
            assert len(i["witnesses"]) <= 9


def test_timing_is_opt_in(capsys):
    _, out, _ = _run(capsys, "check", "--builtin", "kc2")
    assert " s)" not in out
    _, out, _ = _run(capsys, "check", "--builtin", "kc2", "--timing")
    assert " s)" in out


def test_repeat_runs_identical(capsys):
    argv = ["run", "--input", str(SAMPLES / "kc2.json"), "--format", "machine"]
    assert _run(capsys, *argv) == _run(capsys, *argv)


def test_console_script_runs():
    r = subprocess.run([sys.executable, "-m", "hopfkit.cli", "antipode", "--builtin", "kc2"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout.startswith("source: builtin:kc2\n")
