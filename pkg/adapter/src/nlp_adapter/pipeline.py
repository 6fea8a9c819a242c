"""Batch conversion of source records into a CoNLL-U parses file.

Output blocks are grouped by record in input order, title sentences
before snippet sentences, and every block carries its own `# url`,
`# segment`, and `# text` comments so it can be consumed independently
of its neighbors.
"""

import json
import logging
import os
from dataclasses import dataclass

from .backends import Row, load_parser
from .config import AdapterConfig
from .errors import AdapterError

log = logging.getLogger(__name__)

MEDIA_TYPES = ("text", "video")
SEGMENTS = ("title", "snippet")

# CLEAR-style labels the downstream pattern rules were written against.
# Other schemes are passed through verbatim but flagged, except for the
# UD possessive spelling which maps onto the expected "poss".
LABEL_FIXES = {"nmod:poss": "poss"}
KNOWN_LABELS = {
    "ROOT", "acl", "acomp", "advcl", "advmod", "agent", "amod", "appos",
    "attr", "aux", "auxpass", "case", "cc", "ccomp", "compound", "conj",
    "csubj", "dative", "dep", "det", "dobj", "expl", "intj", "mark", "meta",
    "neg", "npadvmod", "nsubj", "nsubjpass", "nummod", "oprd", "parataxis",
    "pcomp", "pobj", "poss", "preconj", "predet", "prep", "prt", "punct",
    "quantmod", "relcl", "xcomp",
}


@dataclass(frozen=True)
class AdapterStats:
    records: int
    skipped: int
    duplicates: int
    blocks: int
    tokens: int


def read_records(path: str) -> list[dict]:
    """Read the url/media/title/snippet JSONL records file."""
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise AdapterError(f"invalid JSON: {exc.msg}", source=path, line=lineno) from None
            if not isinstance(obj, dict):
                raise AdapterError("record line must be a JSON object", source=path, line=lineno)
            missing = [k for k in ("url", "media", "title", "snippet") if k not in obj]
            if missing:
                raise AdapterError(
                    f"record missing field(s): {', '.join(missing)}", source=path, line=lineno
                )
            if not str(obj["url"]):
                raise AdapterError("url must be non-empty", source=path, line=lineno)
            if obj["media"] not in MEDIA_TYPES:
                raise AdapterError(
                    f"media must be one of {MEDIA_TYPES}, got {obj['media']!r}",
                    source=path,
                    line=lineno,
                )
            records.append(
                {
                    "url": str(obj["url"]),
                    "media": str(obj["media"]),
                    "title": str(obj["title"]),
                    "snippet": str(obj["snippet"]),
                }
            )
    return records


def _clean(cell: str) -> str:
    cell = cell.replace("\t", " ").replace("\n", " ").strip()
    return cell if cell else "_"


def _normalize(rows: list[Row], warned: set[str]) -> list[Row]:
    out = []
    for row in rows:
        deprel = LABEL_FIXES.get(row.deprel, row.deprel)
        if deprel not in KNOWN_LABELS and deprel not in warned:
            warned.add(deprel)
            log.warning("unrecognized dependency label %r passed through", deprel)
        out.append(row._replace(deprel=deprel))
    return out


def format_block(url: str, segment: str, rows: list[Row]) -> str:
    """One sentence as a CoNLL-U block, comments included."""
    lines = [
        f"# url = {url}",
        f"# segment = {segment}",
        f"# text = {' '.join(r.form for r in rows)}",
    ]
    for i, row in enumerate(rows, 1):
        lines.append(
            "\t".join(
                (
                    str(i),
                    _clean(row.form),
                    _clean(row.lemma),
                    _clean(row.upos),
                    "_",
                    "_",
                    str(row.head),
                    _clean(row.deprel),
                    "_",
                    "_",
                )
            )
        )
    return "\n".join(lines)


def parse_records(config: AdapterConfig, parser=None) -> AdapterStats:
    """Parse every record and write the combined CoNLL-U file."""
    if parser is None:
        parser = load_parser(config.model)
    records = read_records(config.records_path)

    blocks: list[str] = []
    seen: set[str] = set()
    warned: set[str] = set()
    skipped = duplicates = tokens = 0
    for record in records:
        url = record["url"]
        if url in seen:
            duplicates += 1
            log.warning("duplicate url %s skipped", url)
            continue
        seen.add(url)
        record_blocks = []
        try:
            for segment in SEGMENTS:
                text = record[segment]
                if not text.strip():
                    continue
                for rows in parser.parse(text, config.split_sentences):
                    if not rows:
                        continue
                    rows = _normalize(rows, warned)
                    record_blocks.append(format_block(url, segment, rows))
                    tokens += len(rows)
        except Exception as exc:
            skipped += 1
            log.warning("record %s skipped: %s", url, exc)
            continue
        if not record_blocks:
            log.warning("record %s produced no sentences", url)
        blocks.extend(record_blocks)

    out_dir = os.path.dirname(os.path.abspath(config.out_path))
    os.makedirs(out_dir, exist_ok=True)
    with open(config.out_path, "w", encoding="utf-8") as fh:
        if blocks:
            fh.write("\n\n".join(blocks) + "\n")
    return AdapterStats(
        records=len(records),
        skipped=skipped,
        duplicates=duplicates,
        blocks=len(blocks),
        tokens=tokens,
    )
