"""Structural checks behind the validate subcommand.

Each checker returns diagnostics as plain strings instead of raising,
so findings from several files can be aggregated in one run.
"""

from __future__ import annotations

from typing import Mapping

from .conllu import SourceRecord, attach_parses, dedup_by_url, load_records, parse_conllu
from .crowd import read_ratings_csv
from .errors import ClaimkitError
from .matching import load_hypothesis_spec

WEIGHT_SUM_TOLERANCE = 1e-9


def check_records(path: str) -> tuple[list[str], list[SourceRecord] | None]:
    """Validate a records file; returns (findings, records or None)."""
    try:
        records = load_records(path)
    except ClaimkitError as exc:
        return [str(exc)], None
    findings = []
    deduped = dedup_by_url(records)
    if len(deduped) < len(records):
        dup_count = len(records) - len(deduped)
        findings.append(f"{path}: {dup_count} duplicate url(s); first occurrence wins")
    return findings, deduped


def check_parses(path: str, records: list[SourceRecord] | None = None) -> list[str]:
    """Validate a parses file, cross-checking urls when records are given."""
    try:
        with open(path, encoding="utf-8") as fh:
            if records is None:
                parse_conllu(fh, source=path)
            else:
                attach_parses(records, fh, source=path)
    except ClaimkitError as exc:
        return [str(exc)]
    return []


def check_spec(path: str) -> list[str]:
    try:
        load_hypothesis_spec(path)
    except ClaimkitError as exc:
        return [str(exc)]
    return []


def check_ratings(path: str) -> list[str]:
    try:
        read_ratings_csv(path)
    except ClaimkitError as exc:
        return [str(exc)]
    return []


def check_weights(weights: Mapping[str, float]) -> list[str]:
    findings = []
    for media, w in weights.items():
        if w < 0:
            findings.append(f"weight for {media!r} is negative: {w}")
    total = sum(weights.values())
    if abs(total - 1.0) > WEIGHT_SUM_TOLERANCE:
        findings.append(f"weights sum to {total:g}, expected 1")
    return findings
