import subprocess
import sys

from nlp_adapter.cli import main
from sample_fixture import split_blocks


def test_builtin_run_succeeds(tmp_path, sample_records, capsys):
    out = tmp_path / "parses" / "out.conllu"
    code = main(["--records", str(sample_records), "--out", str(out), "--model", "builtin"])
    assert code == 0
    assert out.exists()
    summary = capsys.readouterr().out.strip()
    assert summary.startswith("records=20 skipped=0 duplicates=0 blocks=")


def test_missing_records_file_exit_2(tmp_path, capsys):
    code = main(["--records", "nowhere/ghost.jsonl", "--out", str(tmp_path / "o.conllu")])
    assert code == 2
    assert "nowhere/ghost.jsonl" in capsys.readouterr().err


def test_default_model_unavailable_exit_1(tmp_path, sample_records, capsys):
    try:
        import spacy  # noqa: F401
    except ImportError:
        code = main(["--records", str(sample_records), "--out", str(tmp_path / "o.conllu")])
        assert code == 1
        assert "en_core_web_sm" in capsys.readouterr().err


def test_no_split_gives_one_block_per_segment(tmp_path, capsys):
    records = tmp_path / "records.jsonl"
    records.write_text(
        '{"url": "u1", "media": "text", "title": "One . Two .", "snippet": "Three . Four ."}\n'
    )
    out = tmp_path / "out.conllu"
    code = main(["--records", str(records), "--out", str(out), "--model", "builtin", "--no-split"])
    assert code == 0
    assert len(split_blocks(out.read_text(encoding="utf-8"))) == 2


def test_module_invocation(tmp_path, sample_records):
    out = tmp_path / "out.conllu"
    result = subprocess.run(
        [
            sys.executable, "-m", "nlp_adapter",
            "--records", str(sample_records),
            "--out", str(out),
            "--model", "builtin",
        ],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert out.exists()


def test_console_script(tmp_path, sample_records):
    out = tmp_path / "out.conllu"
    result = subprocess.run(
        ["adapter", "--records", str(sample_records), "--out", str(out), "--model", "builtin"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert "blocks=" in result.stdout
