import json
import subprocess
import sys

import pytest

import claimkit as ck
from claimkit.cli import main, parse_weights
import crowd_fixture

FIX = "tests/fixtures"


def _detect_args(out_dir, records=f"{FIX}/tableclaims_records.jsonl"):
    return [
        "detect",
        "--records", records,
        "--parses", f"{FIX}/tableclaims.conllu",
        "--spec", f"{FIX}/hypothesis_neymar.json",
        "--out", str(out_dir),
    ]


class TestParseWeights:
    def test_parses_pair(self):
        assert parse_weights("text=0.5,video=0.5") == {"text": 0.5, "video": 0.5}

    @pytest.mark.parametrize("bad", ["text=x", "radio=1.0", "text0.5", "text=0.5,video"])
    def test_rejects_malformed(self, bad):
        with pytest.raises(ValueError):
            parse_weights(bad)


class TestDetect:
    def test_summary_line_and_outputs(self, tmp_path, capsys):
        assert main(_detect_args(tmp_path / "out")) == 0
        out_lines = capsys.readouterr().out.strip().splitlines()
        assert out_lines[-1] == "claims=2 yes=1 no=1"
        assert "media=text urls=1 claims=1 yes=0 no=1" in out_lines
        assert "media=video urls=1 claims=1 yes=1 no=0" in out_lines
        claims = ck.read_claims_jsonl(str(tmp_path / "out" / "claims.jsonl"))
        assert [c.positive for c in claims] == [False, True]
        summary = json.loads((tmp_path / "out" / "detect_summary.json").read_text())
        assert summary["claims"] == 2
        assert summary["records_before_dedup"] == 2

    def test_missing_spec_file_exit_2(self, tmp_path, capsys):
        args = _detect_args(tmp_path / "out")
        args[args.index("--spec") + 1] = "nowhere/ghost.json"
        assert main(args) == 2
        assert "nowhere/ghost.json" in capsys.readouterr().err

    def test_empty_records_file(self, tmp_path, capsys):
        records = tmp_path / "empty.jsonl"
        records.write_text("")
        parses = tmp_path / "empty.conllu"
        parses.write_text("")
        code = main(
            [
                "detect",
                "--records", str(records),
                "--parses", str(parses),
                "--spec", f"{FIX}/hypothesis_neymar.json",
                "--out", str(tmp_path / "out"),
            ]
        )
        assert code == 0
        assert "claims=0 yes=0 no=0" in capsys.readouterr().out

    def test_runs_are_byte_identical(self, tmp_path, capsys):
        assert main(_detect_args(tmp_path / "a")) == 0
        assert main(_detect_args(tmp_path / "b")) == 0
        for name in ("claims.jsonl", "detect_summary.json"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_invalid_parse_is_data_error(self, tmp_path, capsys):
        parses = tmp_path / "bad.conllu"
        parses.write_text("# url = http://tinyurl.com/hn4hndq\n# segment = title\n1\tshort\n")
        args = _detect_args(tmp_path / "out")
        args[args.index("--parses") + 1] = str(parses)
        assert main(args) == 1
        assert "column" in capsys.readouterr().err


@pytest.fixture
def detect_output(tmp_path):
    out = tmp_path / "out"
    assert main(_detect_args(out)) == 0
    return out


class TestReport:
    def test_text_format(self, detect_output, capsys):
        capsys.readouterr()
        code = main(
            [
                "report",
                "--claims", f"Neymar={detect_output / 'claims.jsonl'}",
                "--urls", f"{FIX}/tableclaims_urls.json",
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "Neymar" in out and "%YES" in out
        assert "1.00" in out  # video share 1/1
        assert "0.00" in out  # text share 0/1

    def test_json_format_parses(self, detect_output, capsys):
        capsys.readouterr()
        code = main(
            [
                "report",
                "--claims", f"Neymar={detect_output / 'claims.jsonl'}",
                "--urls", f"{FIX}/tableclaims_urls.json",
                "--format", "json",
                "--weights", "text=0.5,video=0.5",
                "--null-p", "0.5",
                "--alpha", "0.05",
            ]
        )
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert {r["media"] for r in report["rows"]} == {"text", "video"}
        assert report["decisions"][0]["combined_score"] == pytest.approx(0.5)

    def test_entity_keyed_urls_file(self, detect_output, tmp_path, capsys):
        urls = tmp_path / "urls.json"
        urls.write_text(json.dumps({"Neymar": {"text": 1, "video": 1}}))
        capsys.readouterr()
        code = main(
            ["report", "--claims", f"Neymar={detect_output / 'claims.jsonl'}", "--urls", str(urls)]
        )
        assert code == 0
        assert "Neymar" in capsys.readouterr().out

    def test_bad_weights_usage_error(self, detect_output, capsys):
        code = main(
            [
                "report",
                "--claims", str(detect_output / "claims.jsonl"),
                "--urls", f"{FIX}/tableclaims_urls.json",
                "--weights", "text=half",
            ]
        )
        assert code == 2

    def test_missing_urls_file_usage_error(self, detect_output, capsys):
        code = main(["report", "--claims", str(detect_output / "claims.jsonl"), "--urls", "ghost.json"])
        assert code == 2

    def test_config_file_supplies_defaults_flags_win(self, detect_output, tmp_path, capsys):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"format": "json", "weights": "text=0.5,video=0.5"}))
        capsys.readouterr()
        code = main(
            [
                "--config", str(config),
                "report",
                "--claims", f"Neymar={detect_output / 'claims.jsonl'}",
                "--urls", f"{FIX}/tableclaims_urls.json",
            ]
        )
        assert code == 0
        json.loads(capsys.readouterr().out)  # config format applied

        code = main(
            [
                "--config", str(config),
                "report",
                "--claims", f"Neymar={detect_output / 'claims.jsonl'}",
                "--urls", f"{FIX}/tableclaims_urls.json",
                "--format", "csv",
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        with pytest.raises(json.JSONDecodeError):
            json.loads(out)  # flag overrode the config


class TestCrowd:
    def test_outputs_and_summary(self, tmp_path, capsys):
        ratings = tmp_path / "ratings.csv"
        crowd_fixture.write_ratings_csv(str(ratings))
        out = tmp_path / "out"
        assert main(["crowd", "--ratings", str(ratings), "--out", str(out)]) == 0
        stdout = capsys.readouterr().out
        assert "videos=11 ratings=110 rejected=0" in stdout
        assert "bias=0.62 rating=0.52 shift=+10 points" in stdout
        assert (out / "crowd_summary.json").exists()

    def test_all_proofs_false(self, tmp_path, capsys):
        ratings = tmp_path / "ratings.csv"
        ratings.write_text(
            "worker_id,video_id,prior_bias,rating,proof_correct\nw1,v1,neutral,3,false\n"
        )
        assert main(["crowd", "--ratings", str(ratings), "--out", str(tmp_path / "out")]) == 1
        assert "no accepted ratings" in capsys.readouterr().err

    def test_malformed_row_names_line(self, tmp_path, capsys):
        ratings = tmp_path / "ratings.csv"
        ratings.write_text(
            "worker_id,video_id,prior_bias,rating,proof_correct\nw1,v1,neutral,9,true\n"
        )
        assert main(["crowd", "--ratings", str(ratings), "--out", str(tmp_path / "out")]) == 1
        assert ":2:" in capsys.readouterr().err


class TestValidate:
    def test_clean_fixtures(self, capsys):
        code = main(
            [
                "validate",
                "--records", f"{FIX}/canonical_records.jsonl",
                "--parses", f"{FIX}/canonical.conllu",
                "--spec", f"{FIX}/hypothesis_neymar.json",
            ]
        )
        assert code == 0
        assert capsys.readouterr().out.strip() == "0 findings"

    def test_multi_root_sentence_one_finding(self, tmp_path, capsys):
        parses = tmp_path / "bad.conllu"
        parses.write_text(
            "# text = broken sentence\n"
            "1\ta\ta\tX\t_\t_\t0\tROOT\t_\t_\n"
            "2\tb\tb\tX\t_\t_\t0\tROOT\t_\t_\n"
        )
        assert main(["validate", "--parses", str(parses)]) == 1
        out = capsys.readouterr().out
        assert "broken sentence" in out
        assert "1 finding(s)" in out

    def test_weights_summing_wrong_one_finding(self, capsys):
        assert main(["validate", "--weights", "text=0.5,video=0.4"]) == 1
        out = capsys.readouterr().out
        assert "0.9" in out
        assert "1 finding(s)" in out

    def test_duplicate_urls_reported(self, tmp_path, capsys):
        records = tmp_path / "records.jsonl"
        line = '{"url": "a", "media": "text", "title": "", "snippet": ""}'
        records.write_text(line + "\n" + line + "\n")
        assert main(["validate", "--records", str(records)]) == 1
        assert "duplicate url" in capsys.readouterr().out

    def test_ratings_checked(self, tmp_path, capsys):
        ratings = tmp_path / "ratings.csv"
        ratings.write_text("worker_id,video_id,prior_bias,rating,proof_correct\nw1,v1,huh,3,true\n")
        assert main(["validate", "--ratings", str(ratings)]) == 1
        assert "prior_bias" in capsys.readouterr().out

    def test_parses_cross_checked_against_records(self, tmp_path, capsys):
        records = tmp_path / "records.jsonl"
        records.write_text('{"url": "known", "media": "text", "title": "", "snippet": ""}\n')
        parses = tmp_path / "parses.conllu"
        parses.write_text("# url = unknown\n# segment = snippet\n1\tx\tx\tX\t_\t_\t0\tROOT\t_\t_\n")
        assert main(["validate", "--records", str(records), "--parses", str(parses)]) == 1
        assert "unknown" in capsys.readouterr().out


class TestEntryPoints:
    def test_module_invocation(self):
        result = subprocess.run(
            [sys.executable, "-m", "claimkit", "--help"], capture_output=True, text=True
        )
        assert result.returncode == 0
        assert "detect" in result.stdout

    def test_console_script(self):
        result = subprocess.run(["claimkit", "validate"], capture_output=True, text=True)
        assert result.returncode == 0
        assert "0 findings" in result.stdout
