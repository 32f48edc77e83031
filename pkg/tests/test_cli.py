"""Command-line behavior, driven in-process through main(argv)."""

from importlib import resources

import pytest

from polibot.cli import Say, Wait, main, parse_script
from polibot.session import DECODE_COLUMNS, TRACE_COLUMNS


def bundled_script(name):
    return resources.files("polibot.data").joinpath(f"scripts/{name}")


# ---------------------------------------------------------------------------
# script parsing


def test_script_mixes_utterances_and_waits():
    items = parse_script("hello there\n\n# a comment\nWAIT 0.5\nstop\n")
    assert items == [Say("hello there"), Wait(0.5), Say("stop")]


def test_wait_is_case_sensitive():
    # lowercase "wait" must survive as a sayable utterance
    items = parse_script("wait 5\nWAIT 5\n")
    assert items == [Say("wait 5"), Wait(5.0)]


@pytest.mark.parametrize(
    "text, line_no, fragment",
    [
        ("hello\nWAIT\n", 2, "exactly one duration"),
        ("WAIT 1 2\n", 1, "exactly one duration"),
        ("hello\nstop\nWAIT soon\n", 3, "not a number"),
        ("WAIT -0.5\n", 1, "nonnegative"),
    ],
)
def test_bad_wait_lines_are_rejected(text, line_no, fragment):
    from polibot.cli import ScriptError

    with pytest.raises(ScriptError) as err:
        parse_script(text)
    assert err.value.line_no == line_no
    assert fragment in str(err.value)


# ---------------------------------------------------------------------------
# train


def test_train_writes_artifacts_and_decodes_the_references(tmp_path, capsys):
    cascade_out = tmp_path / "cascade.json"
    pol_out = tmp_path / "politeness.json"
    rc = main(
        [
            "train",
            "--cascade-out",
            str(cascade_out),
            "--politeness-out",
            str(pol_out),
        ]
    )
    assert rc == 0
    out = capsys.readouterr().out
    assert "reference utterances: 15/15 decoded correctly (100.0%)" in out
    assert "cascade:" in out and "politeness:" in out
    assert cascade_out.stat().st_size > 0
    assert pol_out.stat().st_size > 0


def test_train_reports_missing_corpus(tmp_path, capsys):
    rc = main(["train", "--nlu-corpus", str(tmp_path / "nope.tsv")])
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_train_reports_corpus_line_numbers(tmp_path, capsys):
    bad = tmp_path / "pol.tsv"
    bad.write_text("please help\t1\nshow me\t-1\nmaybe\t2\n", encoding="utf-8")
    rc = main(["train", "--politeness-corpus", str(bad)])
    assert rc == 2
    assert "line 3" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# replay


def test_replay_writes_csvs_next_to_the_script(tmp_path, monkeypatch, capsys):
    script = tmp_path / "visit.txt"
    script.write_text("hello there\nthank you\n", encoding="utf-8")
    monkeypatch.chdir(tmp_path)
    rc = main(["replay", str(script)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "replayed 2 utterances" in out
    trace = (tmp_path / "visit.trace.csv").read_text(encoding="utf-8")
    decode = (tmp_path / "visit.decode.csv").read_text(encoding="utf-8")
    assert trace.splitlines()[0] == ",".join(TRACE_COLUMNS)
    assert decode.splitlines()[0] == ",".join(DECODE_COLUMNS)
    assert len(decode.splitlines()) == 3  # header + one row per utterance


def test_replay_honors_explicit_output_paths(tmp_path, capsys):
    script = tmp_path / "s.txt"
    script.write_text("hello\n", encoding="utf-8")
    trace = tmp_path / "out" / "t.csv"
    decode = tmp_path / "out" / "d.csv"
    trace.parent.mkdir()
    rc = main(
        ["replay", str(script), "--trace", str(trace), "--decode-log", str(decode)]
    )
    assert rc == 0
    assert trace.exists() and decode.exists()


def test_replay_of_empty_script_leaves_headers_only(tmp_path, monkeypatch, capsys):
    script = tmp_path / "empty.txt"
    script.write_text("# nothing but comments\n\n", encoding="utf-8")
    monkeypatch.chdir(tmp_path)
    rc = main(["replay", str(script)])
    assert rc == 0
    assert "replayed 0 utterances" in capsys.readouterr().out
    trace = (tmp_path / "empty.trace.csv").read_text(encoding="utf-8")
    assert trace.splitlines() == [",".join(TRACE_COLUMNS)]


def test_replay_is_deterministic(tmp_path, capsys):
    script = tmp_path / "tour.txt"
    script.write_text(
        "Could you please show me the retail department?\n"
        "WAIT 0.3\n"
        "Thank you!\n",
        encoding="utf-8",
    )
    paths = []
    for i in range(2):
        t = tmp_path / f"t{i}.csv"
        d = tmp_path / f"d{i}.csv"
        rc = main(["replay", str(script), "--trace", str(t), "--decode-log", str(d)])
        assert rc == 0
        paths.append((t.read_bytes(), d.read_bytes()))
    assert paths[0] == paths[1]


def test_replay_bless_copies_goldens(tmp_path, capsys):
    script = tmp_path / "mini.txt"
    script.write_text("hello\n", encoding="utf-8")
    bless = tmp_path / "golden"
    rc = main(
        [
            "replay",
            str(script),
            "--trace",
            str(tmp_path / "t.csv"),
            "--decode-log",
            str(tmp_path / "d.csv"),
            "--bless",
            str(bless),
        ]
    )
    assert rc == 0
    assert (bless / "mini.trace.csv").read_bytes() == (tmp_path / "t.csv").read_bytes()
    assert (bless / "mini.decode.csv").read_bytes() == (tmp_path / "d.csv").read_bytes()


def test_replay_reports_script_errors_with_line_numbers(tmp_path, capsys):
    script = tmp_path / "bad.txt"
    script.write_text("hello\nWAIT forever\n", encoding="utf-8")
    rc = main(["replay", str(script)])
    assert rc == 2
    err = capsys.readouterr().err
    assert "line 2" in err and "not a number" in err


def test_replay_reports_missing_script(tmp_path, capsys):
    rc = main(["replay", str(tmp_path / "ghost.txt")])
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_bundled_scripts_parse():
    for name in ("polite_tour.txt", "impolite_tour.txt"):
        items = parse_script(bundled_script(name).read_text(encoding="utf-8"))
        assert any(isinstance(i, Say) for i in items)
        assert any(isinstance(i, Wait) for i in items)


# ---------------------------------------------------------------------------
# serve argument handling (the running server is exercised elsewhere)


def test_serve_rejects_bad_env_port(monkeypatch, capsys):
    monkeypatch.setenv("POLIBOT_PORT", "eighty")
    rc = main(["serve"])
    assert rc == 2
    assert "POLIBOT_PORT" in capsys.readouterr().err


def test_serve_rejects_missing_config(tmp_path, capsys):
    rc = main(["serve", "--config", str(tmp_path / "none.conf")])
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_missing_subcommand_exits_with_usage(capsys):
    with pytest.raises(SystemExit) as err:
        main([])
    assert err.value.code == 2
