"""End-to-end command-line tests via main(argv)."""

import json

import pytest

from pseudolinks.cli import main, poly_to_json
from pseudolinks.skein import normalized_invariant
from pseudolinks.formats import parse_mpb, parse_mpl

from test_skein import HOPF  # noqa: F401  (shared fixture diagram)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def mpl_file(tmp_path, capsys):
    path = tmp_path / "d.mpl"
    code = main(["gen", "diagram", "--seed", "7", "--genus", "1", "--size",
                 "3", "-o", str(path)])
    capsys.readouterr()
    assert code == 0
    return path


@pytest.fixture
def mpb_file(tmp_path, capsys):
    path = tmp_path / "w.mpb"
    code = main(["gen", "word", "--seed", "3", "--genus", "1", "--strands",
                 "2", "--length", "5", "-o", str(path)])
    capsys.readouterr()
    assert code == 0
    return path


def test_invariant_text_and_json(mpl_file, capsys):
    code, out, _ = run(capsys, "invariant", str(mpl_file))
    assert code == 0
    d = parse_mpl(mpl_file.read_text())
    assert out == str(normalized_invariant(d)) + "\n"

    code, out, _ = run(capsys, "invariant", "--json", str(mpl_file))
    assert code == 0
    data = json.loads(out)
    assert data == poly_to_json(normalized_invariant(d))
    for group in data:
        assert set(group) == {"laurent", "v_exp", "curves"}
        exps = [e for e, _ in group["laurent"]]
        assert exps == sorted(exps)
        assert all(c != 0 for _, c in group["laurent"])


def test_invariant_accepts_mpb(mpb_file, capsys):
    code, out, _ = run(capsys, "invariant", str(mpb_file))
    assert code == 0 and out.strip()


def test_close_then_braid_round_trip(mpb_file, tmp_path, capsys):
    closed = tmp_path / "c.mpl"
    code, _, _ = run(capsys, "close", str(mpb_file), "-o", str(closed))
    assert code == 0
    code, out, err = run(capsys, "braid", "--trace", str(closed))
    assert code == 0
    w = parse_mpb(out)
    w0 = parse_mpb(mpb_file.read_text())
    assert (w.genus, w.strands, w.letters) == (w0.genus, w0.strands, w0.letters)


def test_braid_trace_goes_to_stderr(mpl_file, capsys):
    code, out, err = run(capsys, "braid", "--trace", str(mpl_file))
    assert code == 0
    parse_mpb(out)
    assert "# " in err


def test_braid_requires_morse_section(tmp_path, capsys):
    path = tmp_path / "bare.mpl"
    path.write_text("mpl 1\ngenus 0\nloop\n")
    with pytest.raises(SystemExit):
        main(["braid", str(path)])


def test_apply_moves_preserves_invariant(mpl_file, capsys):
    code, out, _ = run(capsys, "apply-moves", str(mpl_file), "--seed", "11",
                       "--length", "6")
    assert code == 0
    d0 = parse_mpl(mpl_file.read_text())
    d1 = parse_mpl(out)
    assert normalized_invariant(d1) == normalized_invariant(d0)


def test_oracle_agrees(mpl_file, capsys):
    code, out, _ = run(capsys, "oracle", "--json", str(mpl_file))
    assert code == 0
    assert json.loads(out)["agree"] is True


def test_check_suite_selection_and_exit_code(capsys):
    code, out, _ = run(capsys, "check", "separation", "labels", "--cases", "2")
    assert code == 0
    assert "separation" in out and "labels" in out and "total" in out


def test_check_unknown_suite(capsys):
    code, _, err = run(capsys, "check", "nonsense")
    assert code == 2 and "error" in err


def test_bad_file_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.mpl"
    bad.write_text("mpl 1\ngenus q\n")
    code, _, err = run(capsys, "invariant", str(bad))
    assert code == 2 and "line 2" in err


def test_byte_determinism_across_runs_and_jobs(capsys):
    argv = ["check", "--json", "--seed", "5", "--cases", "4",
            "oracle", "kink", "formats"]
    outs = []
    for jobs in ("1", "4", "1"):
        code = main(argv + ["--jobs", jobs])
        outs.append(capsys.readouterr().out)
        assert code == 0
    assert outs[0] == outs[1] == outs[2]


def test_gen_is_deterministic(capsys):
    a = run(capsys, "gen", "word", "--seed", "9", "--strands", "3",
            "--length", "6")
    b = run(capsys, "gen", "word", "--seed", "9", "--strands", "3",
            "--length", "6")
    assert a == b
