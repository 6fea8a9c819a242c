"""Command-line entry point.

Subcommands: detect (records + parses + hypothesis -> claims), report
(claims -> counts table and decision), crowd (ratings -> statistics),
validate (structural checks only).  Options may also come from a JSON
config file via --config; explicit flags win.  Set CLAIMKIT_LOG to a
level name (DEBUG, INFO, ...) for diagnostics on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Sequence

from .aggregate import ClaimTally, tally
from .conllu import Corpus, MEDIA_TYPES, attach_parses, dedup_by_url, load_records
from .errors import ClaimkitError
from .matching import extract_claims, load_hypothesis_spec, read_claims_jsonl, write_claims_jsonl
from .crowd import read_ratings_csv
from .reports import RENDERERS, build_report, write_crowd_outputs
from . import validation

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2

LOG_ENV_VAR = "CLAIMKIT_LOG"


def _fail_usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_ERROR


def _require_file(path: str | None, flag: str) -> str | None:
    """Return an error message unless path names an existing file."""
    if path is None:
        return f"{flag} is required"
    if not os.path.isfile(path):
        return f"no such file: {path}"
    return None


def parse_weights(text: str) -> dict[str, float]:
    """Parse media weights like "text=0.5,video=0.5"."""
    weights: dict[str, float] = {}
    for part in text.split(","):
        name, sep, value = part.partition("=")
        name = name.strip()
        if not sep or name not in MEDIA_TYPES:
            raise ValueError(f"bad weights component {part!r}; expected media=fraction")
        try:
            weights[name] = float(value)
        except ValueError:
            raise ValueError(f"bad weight value {value!r} for {name!r}") from None
    return weights


def cmd_detect(args: argparse.Namespace) -> int:
    for flag, path in (("--records", args.records), ("--parses", args.parses), ("--spec", args.spec)):
        problem = _require_file(path, flag)
        if problem:
            return _fail_usage(problem)
    if not args.out:
        return _fail_usage("--out is required")
    try:
        spec = load_hypothesis_spec(args.spec)
        records = load_records(args.records)
        deduped = dedup_by_url(records)
        if len(deduped) < len(records):
            log.warning(
                "dropped %d duplicate url(s); %d records before dedup, %d after",
                len(records) - len(deduped), len(records), len(deduped),
            )
            first_media = {}
            for r in records:
                if r.url in first_media and first_media[r.url] != r.media:
                    log.warning("duplicate url %s has conflicting media; keeping %s", r.url, first_media[r.url])
                first_media.setdefault(r.url, r.media)
        with open(args.parses, encoding="utf-8") as fh:
            joined = attach_parses(deduped, fh, source=args.parses)
        corpus = Corpus(records=tuple(joined), entity_label=spec.entity_name)
        claims = extract_claims(corpus, spec)
    except ClaimkitError as exc:
        return _fail(str(exc))

    os.makedirs(args.out, exist_ok=True)
    write_claims_jsonl(claims, os.path.join(args.out, "claims.jsonl"))

    url_counts = {m: sum(1 for r in corpus if r.media == m) for m in MEDIA_TYPES}
    per_media = {}
    for media in MEDIA_TYPES:
        media_claims = [c for c in claims if c.media == media]
        per_media[media] = {
            "n_urls": url_counts[media],
            "n_claims": len(media_claims),
            "yes": sum(1 for c in media_claims if c.positive),
            "no": sum(1 for c in media_claims if not c.positive),
        }
    summary = {
        "entity": spec.entity_name,
        "records_before_dedup": len(records),
        "records_after_dedup": len(deduped),
        "media": per_media,
        "claims": len(claims),
        "yes": sum(1 for c in claims if c.positive),
        "no": sum(1 for c in claims if not c.positive),
    }
    with open(os.path.join(args.out, "detect_summary.json"), "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, ensure_ascii=False)
        fh.write("\n")

    for media in MEDIA_TYPES:
        m = per_media[media]
        print(f"media={media} urls={m['n_urls']} claims={m['n_claims']} yes={m['yes']} no={m['no']}")
    print(f"claims={summary['claims']} yes={summary['yes']} no={summary['no']}")
    return EXIT_OK


def _parse_claims_args(items: Sequence[str]) -> list[tuple[str, str]]:
    """Resolve --claims items, each PATH or ENTITY=PATH, to (entity, path)."""
    pairs = []
    for item in items:
        if os.path.isfile(item):
            pairs.append((Path(item).stem, item))
            continue
        entity, sep, path = item.partition("=")
        if sep and os.path.isfile(path):
            pairs.append((entity, path))
            continue
        raise FileNotFoundError(item)
    return pairs


def _resolve_url_counts(urls_obj: dict, entity: str) -> dict[str, int]:
    if all(isinstance(v, int) for v in urls_obj.values()):
        return {str(k): int(v) for k, v in urls_obj.items()}
    if entity not in urls_obj:
        raise ClaimkitError(f"urls file has no entry for entity {entity!r}")
    return {str(k): int(v) for k, v in urls_obj[entity].items()}


def cmd_report(args: argparse.Namespace) -> int:
    if not args.claims:
        return _fail_usage("--claims is required")
    problem = _require_file(args.urls, "--urls")
    if problem:
        return _fail_usage(problem)
    try:
        pairs = _parse_claims_args(args.claims)
    except FileNotFoundError as exc:
        return _fail_usage(f"no such claims file: {exc.args[0]}")
    weights = None
    if args.weights:
        try:
            weights = parse_weights(args.weights)
        except ValueError as exc:
            return _fail_usage(str(exc))
    try:
        with open(args.urls, encoding="utf-8") as fh:
            urls_obj = json.load(fh)
        if not isinstance(urls_obj, dict):
            return _fail(f"{args.urls}: urls file must be a JSON object")
        groups: list[tuple[str, list[ClaimTally]]] = []
        for entity, path in pairs:
            claims = read_claims_jsonl(path)
            url_counts = _resolve_url_counts(urls_obj, entity)
            groups.append((entity, tally(claims, url_counts, entity)))
        report = build_report(groups, null_p=args.null_p, alpha=args.alpha, weights=weights)
    except (ClaimkitError, json.JSONDecodeError, ValueError) as exc:
        return _fail(str(exc))
    sys.stdout.write(RENDERERS[args.format](report))
    return EXIT_OK


def cmd_crowd(args: argparse.Namespace) -> int:
    problem = _require_file(args.ratings, "--ratings")
    if problem:
        return _fail_usage(problem)
    if not args.out:
        return _fail_usage("--out is required")
    try:
        ratings = read_ratings_csv(args.ratings)
        summary = write_crowd_outputs(ratings, args.out)
    except ClaimkitError as exc:
        return _fail(str(exc))
    print(
        f"videos={summary['n_videos']} ratings={summary['n_accepted']} "
        f"rejected={summary['n_rejected']}"
    )
    print(
        f"overall bias={summary['overall_avg_bias']:.2f} rating={summary['overall_avg_rating']:.2f} "
        f"shift={summary['shift_points']:+g} points"
    )
    print(
        f"pooled bias={summary['pooled_avg_bias']:.2f} rating={summary['pooled_avg_rating']:.2f}"
    )
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    findings: list[str] = []
    records = None
    if args.records:
        problem = _require_file(args.records, "--records")
        if problem:
            return _fail_usage(problem)
        record_findings, records = validation.check_records(args.records)
        findings.extend(record_findings)
    if args.parses:
        problem = _require_file(args.parses, "--parses")
        if problem:
            return _fail_usage(problem)
        findings.extend(validation.check_parses(args.parses, records))
    if args.spec:
        problem = _require_file(args.spec, "--spec")
        if problem:
            return _fail_usage(problem)
        findings.extend(validation.check_spec(args.spec))
    if args.ratings:
        problem = _require_file(args.ratings, "--ratings")
        if problem:
            return _fail_usage(problem)
        findings.extend(validation.check_ratings(args.ratings))
    if args.weights:
        try:
            findings.extend(validation.check_weights(parse_weights(args.weights)))
        except ValueError as exc:
            return _fail_usage(str(exc))
    for finding in findings:
        print(finding)
    if not findings:
        print("0 findings")
        return EXIT_OK
    print(f"{len(findings)} finding(s)")
    return EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="claimkit",
        description="Detect entity-property claims in parsed records and aggregate the evidence.",
    )
    parser.add_argument("--config", help="JSON file supplying defaults for any option; flags win")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="extract claims from records + parses")
    p.add_argument("--records", help="records JSONL file")
    p.add_argument("--parses", help="sentence parses file")
    p.add_argument("--spec", help="hypothesis JSON file")
    p.add_argument("--out", help="output directory")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("report", help="counts table, tests, and decision from claims")
    p.add_argument("--claims", nargs="+", action="extend", help="claims JSONL file(s), each PATH or ENTITY=PATH")
    p.add_argument("--urls", help="JSON url counts: media->count, or entity->media->count")
    p.add_argument("--weights", help="media weights, e.g. text=0.5,video=0.5")
    p.add_argument("--null-p", dest="null_p", type=float, help="null hypothesis proportion (default 0.5)")
    p.add_argument("--alpha", type=float, help="significance level (default 0.05)")
    p.add_argument("--format", choices=sorted(RENDERERS), help="output format (default text)")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("crowd", help="crowd rating statistics and histograms")
    p.add_argument("--ratings", help="ratings CSV file")
    p.add_argument("--out", help="output directory")
    p.set_defaults(func=cmd_crowd)

    p = sub.add_parser("validate", help="structural checks; no outputs written")
    p.add_argument("--records", help="records JSONL file")
    p.add_argument("--parses", help="sentence parses file")
    p.add_argument("--spec", help="hypothesis JSON file")
    p.add_argument("--ratings", help="ratings CSV file")
    p.add_argument("--weights", help="media weights to check")
    p.set_defaults(func=cmd_validate)
    return parser


def _apply_config(args: argparse.Namespace, path: str) -> str | None:
    """Fill unset options from a JSON config; returns an error message or None."""
    if not os.path.isfile(path):
        return f"no such config file: {path}"
    try:
        with open(path, encoding="utf-8") as fh:
            config = json.load(fh)
    except json.JSONDecodeError as exc:
        return f"{path}: invalid JSON: {exc.msg}"
    if not isinstance(config, dict):
        return f"{path}: config must be a JSON object"
    for key, value in config.items():
        dest = key.replace("-", "_")
        if getattr(args, dest, None) is None:
            setattr(args, dest, value)
    return None


_HARD_DEFAULTS = {"null_p": 0.5, "alpha": 0.05, "format": "text"}


def main(argv: Sequence[str] | None = None) -> int:
    level = os.environ.get(LOG_ENV_VAR, "WARNING").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        problem = _apply_config(args, args.config)
        if problem:
            return _fail_usage(problem)
    for dest, value in _HARD_DEFAULTS.items():
        if getattr(args, dest, None) is None and hasattr(args, dest):
            setattr(args, dest, value)
    try:
        return args.func(args)
    except ClaimkitError as exc:  # belt and braces; commands handle their own
        return _fail(str(exc))


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
