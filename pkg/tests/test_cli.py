import json

import pytest

from liewords import automata as au
from liewords.cli import main
from liewords.words import parse_dfao


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_complexity_table_tsv(capsys):
    code, out, _ = run(capsys, "complexity", "--word", "thue-morse", "--n", "0..3")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "n\tp\tc\ta\tL\tcertified"
    assert lines[3] == "2\t4\t3\t3\t3\ttrue"
    assert lines[4] == "3\t6\t2\t2\t2\ttrue"


def test_complexity_single_n_json(capsys):
    code, out, _ = run(
        capsys, "complexity", "--word", "fibonacci", "--n", "5", "--format", "json"
    )
    assert code == 0
    rows = json.loads(out)["rows"]
    assert len(rows) == 1 and rows[0]["n"] == 5


def test_complexity_deterministic_output(capsys):
    args = ("complexity", "--word", "vtm", "--n", "0..12")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_morphism_file_source(tmp_path, capsys):
    path = tmp_path / "fib.rules"
    path.write_text("alphabet: 0 1\n0 -> 01\n1 -> 0\n")
    code, out, _ = run(capsys, "complexity", "--morphism-file", str(path), "--n", "0..4")
    assert code == 0
    assert out.strip().split("\n")[1] == "0\t1\t1\t1\t1\ttrue"


def test_verify_inequalities_pass(capsys):
    code, out, _ = run(
        capsys, "verify-inequalities", "--word", "thue-morse", "--n", "1..12"
    )
    assert code == 0
    assert "violations" not in out


def test_verify_inequalities_skips_uncertified_margins(capsys):
    code, out, _ = run(capsys, "verify-inequalities", "--word", "cantor", "--n", "1..6")
    assert code == 0
    assert "skipped on uncertified data" in out
    code, out, _ = run(
        capsys,
        "verify-inequalities", "--word", "cantor", "--n", "1..6", "--allow-heuristic",
    )
    assert code == 0
    assert "skipped" not in out


def test_algebra_check(capsys):
    code, out, _ = run(capsys, "algebra-check", "--word", "fibonacci", "--max-n", "6")
    assert code == 0
    assert out.splitlines()[0] == "n\tdimV\tdimW\tL_algebra\tL_direct\tmatch"


def test_logic_compile_and_reload(tmp_path, capsys):
    target = tmp_path / "cmp.mtdfa"
    code, out, _ = run(
        capsys,
        "logic", "compile",
        "--formula", "Ez x+z=y & z>=1",
        "--base", "2",
        "--emit", str(target),
    )
    assert code == 0
    assert "tracks: x y" in out
    a = au.from_text(target.read_text())
    assert au.accepts(a, {"x": 3, "y": 9})
    assert not au.accepts(a, {"x": 9, "y": 9})


def test_logic_compile_with_sequence(capsys):
    code, out, _ = run(
        capsys, "logic", "compile", "--seq", "thue-morse", "--formula", "W[i]=@1"
    )
    assert code == 0
    assert "tracks: i" in out


def test_pipeline_emits_dfao(tmp_path, capsys):
    target = tmp_path / "lie.dfao"
    code, out, _ = run(
        capsys, "pipeline", "--seq", "thue-morse", "--emit-dfao", str(target)
    )
    assert code == 0
    assert "sup: 3" in out
    d = parse_dfao(target.read_text())
    assert d.base == 2


def test_pipeline_requires_digit_automaton(capsys):
    code, _, err = run(capsys, "pipeline", "--seq", "fibonacci")
    assert code == 1
    assert "ToolError" in err


def test_construct_trace(tmp_path, capsys):
    target = tmp_path / "trace.json"
    code, out, _ = run(
        capsys,
        "construct", "--mode", "toy", "--depth", "4", "--g", "2,2,2,2",
        "--emit", str(target),
    )
    assert code == 0
    assert "d: 2 5 13 34" in out
    assert "FAIL" not in out
    assert json.loads(target.read_text())["depth"] == 4


def test_construct_honest_overflows(capsys):
    code, _, err = run(capsys, "construct", "--mode", "honest", "--depth", "3")
    assert code == 1
    assert "ParameterOverflow" in err


def test_scan_powers(capsys):
    code, out, _ = run(
        capsys,
        "scan-powers", "--word", "cantor",
        "--max-root-len", "4", "--exponent", "4", "--window", "8192",
    )
    assert code == 0
    assert out.splitlines() == ["0", "# 1 class(es)"]


def test_golden_summary(capsys):
    code, out, _ = run(capsys, "golden")
    assert code == 0
    assert "FAIL" not in out
    assert any(line.startswith("thue-morse\tpipeline\t257/257") for line in out.splitlines())


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as e:
        main(["complexity", "--word", "nope", "--n", "0..3"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["complexity", "--word", "thue-morse", "--n", "9..2"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == 2
