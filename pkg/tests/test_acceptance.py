"""Acceptance gate: one test per shipping criterion.

Each test prints a single pass/fail line (visible with pytest -s) and
enforces its runtime budget.  Expected values are frozen from the
oracles in tests/oracles.py or asserted directly where trivial.
"""

import random
import statistics
import time
from contextlib import contextmanager
from fractions import Fraction

import claimkit as ck
from claimkit.cli import main
from claimkit.formatting import round_half_up
from counts_fixture import COUNTS_ROWS, FIXTURES, counts_tallies
import corpus_fixture
import crowd_fixture
import oracles


@contextmanager
def _criterion(name, limit_s):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"[ACCEPTANCE] {name}: FAIL")
        raise
    elapsed = time.perf_counter() - start
    print(f"[ACCEPTANCE] {name}: PASS ({elapsed:.2f}s, limit {limit_s:g}s)")
    assert elapsed < limit_s


def test_criterion_1_polarity_rule_suite(neymar_spec, canonical_corpus):
    with _criterion("polarity-rule-suite", 1.0):
        claims = ck.extract_claims(canonical_corpus, neymar_spec)
        assert [c.positive for c in claims] == [True, True, True, False, False, True]


def test_criterion_2_example_claims_rows(neymar_spec, tableclaims_corpus):
    with _criterion("example-claims-rows", 1.0):
        claims = ck.extract_claims(tableclaims_corpus, neymar_spec)
        by_media = {c.media: c.positive for c in claims}
        assert by_media == {"text": False, "video": True}


def test_criterion_3_counts_table_arithmetic():
    with _criterion("counts-table-arithmetic", 1.0):
        tallies = counts_tallies()
        shares = [
            round_half_up(ck.proportion_yes(tallies[(e, m)]), 2)
            for e, m, _, _, _ in COUNTS_ROWS
        ]
        assert shares == [0.77, 0.98, 0.25, 0.33, 0.96, 0.92]
        diffs = [
            ck.media_difference(tallies[(e, "text")], tallies[(e, "video")])
            for e in ("Neymar", "Messi", "Ronaldo")
        ]
        assert diffs == [21, 8, -4]
        assert ck.mean_proportion(tallies[("Ronaldo", "text")], tallies[("Ronaldo", "video")]) == 0.94
        assert ck.mean_proportion(tallies[("Neymar", "text")], tallies[("Neymar", "video")]) == 0.875


def test_criterion_4_crowd_statistics(tmp_path):
    with _criterion("crowd-statistics", 1.0):
        # Published per-video averages, entered directly.
        bias_avgs = [float(b) for _, _, _, b, _ in crowd_fixture.VIDEO_ROWS]
        rating_avgs = [float(r) for _, _, _, _, r in crowd_fixture.VIDEO_ROWS]
        assert round_half_up(statistics.fmean(bias_avgs), 2) == 0.62
        assert round_half_up(statistics.fmean(rating_avgs), 2) == 0.52
        assert round(0.62 * 100) - round(0.52 * 100) == 10

        merged = ck.merge_histogram(
            ck.Histogram5(ck.RATING_LABELS, (16, 15, 35, 26, 8))
        )
        assert merged.counts == (31, 35, 34)

        # Synthetic ratings whose per-video means match the table rows.
        path = tmp_path / "ratings.csv"
        crowd_fixture.write_ratings_csv(str(path))
        ratings = ck.filter_accepted(ck.read_ratings_csv(str(path)))
        assert len(ratings) == 110
        per_video = ck.per_video_stats(ratings)
        overall_bias, overall_rating = ck.overall_stats(per_video)
        assert round_half_up(overall_bias, 2) == 0.62
        assert round_half_up(overall_rating, 2) == 0.52
        by_id = {vs.video_id: vs for vs in per_video}
        for video_id, _, _, bias, rating in crowd_fixture.VIDEO_ROWS:
            vs = by_id[video_id]
            assert f"{round_half_up(vs.avg_bias, 2):.2f}" == bias
            assert f"{round_half_up(vs.avg_rating, 2):.2f}" == rating
        assert ck.rating_histogram(ratings).total == 110


def test_criterion_5_binomial_oracle_equivalence():
    with _criterion("binomial-oracle-equivalence", 30.0):
        for n in range(1, 21):
            for k in range(n + 1):
                ours = ck.binomial_test_pvalue(k, n, Fraction(1, 2))
                ref = oracles.binomial_pvalue_enum(k, n, 0.5)
                assert abs(ours - ref) <= 1e-12, (n, k, ours, ref)

        rng = random.Random(5821)
        for _ in range(10_000):
            n = rng.randint(1, 1000)
            k = rng.randint(0, n)
            low, high = ck.wilson_interval(k, n, alpha=0.05)
            assert 0.0 <= low <= k / n <= high <= 1.0, (n, k, low, high)


def test_criterion_6_levenshtein_oracle_equivalence():
    with _criterion("levenshtein-oracle-equivalence", 30.0):
        rng = random.Random(1441)
        alphabet = "abcdeXYZ"

        def rand_string():
            return "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 12)))

        pairs = [(rand_string(), rand_string()) for _ in range(10_000)]
        for a, b in pairs:
            assert ck.levenshtein(a, b) == oracles.levenshtein_recursive(a, b)

        for a, b in pairs[:2000]:
            c = rand_string()
            d_ab = ck.levenshtein(a, b)
            assert d_ab == ck.levenshtein(b, a)
            assert (d_ab == 0) == (a == b)
            assert d_ab <= ck.levenshtein(a, c) + ck.levenshtein(c, b)


def test_criterion_7_determinism_and_one_count(tmp_path, capsys):
    with _criterion("determinism-and-one-count", 10.0):
        paths = corpus_fixture.write_corpus(tmp_path / "corpus")
        spec_path = str(FIXTURES / "hypothesis_neymar.json")
        for run_dir in ("a", "b"):
            code = main(
                [
                    "detect",
                    "--records", paths["records_path"],
                    "--parses", paths["parses_path"],
                    "--spec", spec_path,
                    "--out", str(tmp_path / run_dir),
                ]
            )
            assert code == 0
        first = (tmp_path / "a" / "claims.jsonl").read_bytes()
        second = (tmp_path / "b" / "claims.jsonl").read_bytes()
        assert first == second

        claims = ck.read_claims_jsonl(str(tmp_path / "a" / "claims.jsonl"))
        urls = [c.url for c in claims]
        assert len(urls) == len(set(urls))
        assert len(claims) <= paths["n_record_lines"]
        assert {c.url: c.positive for c in claims} == {
            url: positive for url, (_, positive) in paths["expected_claims"].items()
        }
