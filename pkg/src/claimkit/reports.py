"""Assembly and rendering of the counts report and crowd outputs.

The counts report mirrors a published comparison table: one row per
entity and media with its yes-share, then per-entity media differences,
mean proportions, test results, and the weighted decision.
"""

from __future__ import annotations

import csv
import io
import json
import os
from typing import Mapping, Sequence

from .aggregate import (
    BinomialTestResult,
    ClaimTally,
    binomial_test,
    combine_scores,
    media_difference,
    mean_proportion,
    proportion_yes,
)
from .crowd import (
    CrowdRating,
    Histogram,
    bias_histogram,
    filter_accepted,
    merge_histogram,
    overall_stats,
    per_video_stats,
    pooled_stats,
    rating_histogram,
    shift,
)
from .errors import ValidationError
from .formatting import UNDEFINED_MARK, fmt_proportion, fmt_signed, round_half_up

TABLE_COLUMNS = ("ENTITY", "MEDIA", "#URLS", "#CLAIMS", "YES", "NO", "%YES", "P_VALUE", "CI_LOW", "CI_HIGH", "VERDICT")


def _row(t: ClaimTally, test: BinomialTestResult | None) -> dict:
    pct = round_half_up(proportion_yes(t), 2) if t.n_claims > 0 else None
    return {
        "entity": t.entity,
        "media": t.media,
        "n_urls": t.n_urls,
        "n_claims": t.n_claims,
        "yes": t.yes,
        "no": t.no,
        "pct_yes": pct,
        "p_value": test.p_value if test else None,
        "ci_low": test.ci_low if test else None,
        "ci_high": test.ci_high if test else None,
        "verdict": test.verdict if test else None,
    }


def build_report(
    groups: Sequence[tuple[str, Sequence[ClaimTally]]],
    null_p: float = 0.5,
    alpha: float = 0.05,
    weights: Mapping[str, float] | None = None,
) -> dict:
    """Build the full report structure for one or more entities.

    groups pairs an entity label with its tallies.  When weights is
    None each entity's decision weighs its claim-bearing media equally;
    explicit weights must cover exactly those media or the decision is
    skipped with a reason instead of failing the whole report.
    """
    report: dict = {"null_p": null_p, "alpha": alpha, "rows": [], "comparisons": [], "decisions": []}
    for entity, tallies in groups:
        by_media: dict[str, ClaimTally] = {}
        tests: dict[str, BinomialTestResult] = {}
        for t in tallies:
            if t.entity != entity:
                raise ValidationError(f"tally for {t.entity!r} grouped under {entity!r}")
            if t.media in by_media:
                raise ValidationError(f"duplicate {t.media!r} tally for {entity!r}")
            by_media[t.media] = t
            test = binomial_test(t.yes, t.no, null_p, alpha) if t.n_claims > 0 else None
            if test is not None:
                tests[t.media] = test
            report["rows"].append(_row(t, test))

        text_t, video_t = by_media.get("text"), by_media.get("video")
        if text_t and video_t and text_t.n_claims > 0 and video_t.n_claims > 0:
            report["comparisons"].append(
                {
                    "entity": entity,
                    "difference_points": media_difference(text_t, video_t),
                    "mean_proportion": mean_proportion(text_t, video_t),
                }
            )

        candidates = {m: (t, tests[m]) for m, t in by_media.items() if t.n_claims > 0}
        if not candidates:
            report["decisions"].append({"entity": entity, "skipped": "no claims in any media"})
            continue
        used = dict(weights) if weights is not None else {m: 1.0 / len(candidates) for m in candidates}
        if set(used) != set(candidates):
            report["decisions"].append(
                {
                    "entity": entity,
                    "skipped": f"weights cover {sorted(used)} but claim-bearing media are {sorted(candidates)}",
                }
            )
            continue
        decision = combine_scores(candidates, used, null_p=null_p, alpha=alpha)
        report["decisions"].append(decision.to_dict())
    return report


def _table_cells(row: dict) -> list[str]:
    return [
        row["entity"],
        row["media"],
        str(row["n_urls"]),
        str(row["n_claims"]),
        str(row["yes"]),
        str(row["no"]),
        fmt_proportion(row["pct_yes"]),
        f"{row['p_value']:.3g}" if row["p_value"] is not None else UNDEFINED_MARK,
        f"{row['ci_low']:.3f}" if row["ci_low"] is not None else UNDEFINED_MARK,
        f"{row['ci_high']:.3f}" if row["ci_high"] is not None else UNDEFINED_MARK,
        row["verdict"] or UNDEFINED_MARK,
    ]


def render_csv(report: dict) -> str:
    """Three CSV sections (rows, comparisons, decisions) split by blank lines."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TABLE_COLUMNS)
    for row in report["rows"]:
        writer.writerow(_table_cells(row))
    writer.writerow([])
    writer.writerow(("ENTITY", "DIFFERENCE_POINTS", "MEAN_PROPORTION"))
    for comp in report["comparisons"]:
        writer.writerow((comp["entity"], fmt_signed(comp["difference_points"]), f"{comp['mean_proportion']:.4f}"))
    writer.writerow([])
    writer.writerow(("ENTITY", "COMBINED_SCORE", "VERDICT", "WEIGHTS", "NOTE"))
    for d in report["decisions"]:
        if "skipped" in d:
            writer.writerow((d["entity"], UNDEFINED_MARK, UNDEFINED_MARK, UNDEFINED_MARK, d["skipped"]))
        else:
            weights = " ".join(f"{m}={w:g}" for m, w in sorted(d["weights"].items()))
            writer.writerow((d["entity"], f"{d['combined_score']:.4f}", d["verdict"], weights, ""))
    return buf.getvalue()


def render_text(report: dict) -> str:
    rows = [list(TABLE_COLUMNS)] + [_table_cells(r) for r in report["rows"]]
    widths = [max(len(r[i]) for r in rows) for i in range(len(TABLE_COLUMNS))]
    lines = ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(r)).rstrip() for r in rows]
    lines.append("")
    for comp in report["comparisons"]:
        mean_pct = comp["mean_proportion"] * 100.0
        lines.append(
            f"{comp['entity']}: video - text = {fmt_signed(comp['difference_points'])} points; "
            f"mean proportion = {mean_pct:g}%"
        )
    for d in report["decisions"]:
        if "skipped" in d:
            lines.append(f"{d['entity']}: decision skipped ({d['skipped']})")
        else:
            lines.append(
                f"{d['entity']}: combined score = {d['combined_score']:.4g}, verdict = {d['verdict']} "
                f"(pooled ci {d['pooled']['ci_low']:.3f}..{d['pooled']['ci_high']:.3f} vs null {report['null_p']:g})"
            )
    return "\n".join(lines) + "\n"


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


RENDERERS = {"csv": render_csv, "text": render_text, "json": render_json}


def _histogram_csv(h: Histogram, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("category", "count", "percent"))
        for label, count, pct in zip(h.labels, h.counts, h.percents()):
            writer.writerow((label, count, pct))


def _histogram_dict(h: Histogram) -> dict:
    return {"labels": list(h.labels), "counts": list(h.counts), "percents": list(h.percents())}


def write_crowd_outputs(ratings: Sequence[CrowdRating], out_dir: str) -> dict:
    """Compute crowd statistics and write the report files into out_dir.

    Emits per_video.csv, three histogram CSVs, and crowd_summary.json;
    returns the summary mapping.  The headline shift is computed on the
    two-decimal displayed averages so it matches what a reader derives
    from the table; the raw-average shift is reported alongside.
    """
    accepted = filter_accepted(ratings)
    if not accepted:
        raise ValidationError("no accepted ratings")
    videos = per_video_stats(accepted)
    overall_bias, overall_rating = overall_stats(videos)
    pooled_bias, pooled_rating = pooled_stats(accepted)
    display_bias = round_half_up(overall_bias, 2)
    display_rating = round_half_up(overall_rating, 2)
    h_bias = bias_histogram(accepted)
    h_rating = rating_histogram(accepted)
    h_merged = merge_histogram(h_rating)

    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "per_video.csv"), "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("video_id", "n_ratings", "avg_bias", "avg_rating"))
        for v in videos:
            writer.writerow((v.video_id, v.n_ratings, f"{round_half_up(v.avg_bias, 2):.2f}", f"{round_half_up(v.avg_rating, 2):.2f}"))
        writer.writerow(("TOTAL AVERAGE", len(accepted), f"{display_bias:.2f}", f"{display_rating:.2f}"))
    _histogram_csv(h_bias, os.path.join(out_dir, "bias_histogram.csv"))
    _histogram_csv(h_rating, os.path.join(out_dir, "rating_histogram.csv"))
    _histogram_csv(h_merged, os.path.join(out_dir, "merged_histogram.csv"))

    summary = {
        "n_ratings": len(ratings),
        "n_accepted": len(accepted),
        "n_rejected": len(ratings) - len(accepted),
        "n_videos": len(videos),
        "overall_avg_bias": overall_bias,
        "overall_avg_rating": overall_rating,
        "pooled_avg_bias": pooled_bias,
        "pooled_avg_rating": pooled_rating,
        # Integer cents keep 0.62 - 0.52 at exactly 10 points.
        "shift_points": float(round(display_bias * 100) - round(display_rating * 100)),
        "shift_points_raw": shift(overall_bias, overall_rating),
        "histograms": {
            "bias": _histogram_dict(h_bias),
            "ratings": _histogram_dict(h_rating),
            "merged": _histogram_dict(h_merged),
        },
    }
    with open(os.path.join(out_dir, "crowd_summary.json"), "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, ensure_ascii=False)
        fh.write("\n")
    return summary
