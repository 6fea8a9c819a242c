"""Dependency-parsed corpus ingestion.

Reads source records (JSONL) and their sentence parses (CoNLL-U, ten
tab-separated columns) and joins them into an in-memory corpus.  Parse
blocks are grouped under ``# url = ...`` and ``# segment = ...`` comment
lines; a block without its own comment inherits the one most recently
seen, which supports both per-block and per-group emission styles.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, replace
from functools import cached_property
from typing import IO, Iterable, Iterator, Mapping

from .errors import ParseError, ValidationError

log = logging.getLogger(__name__)

MEDIA_TEXT = "text"
MEDIA_VIDEO = "video"
MEDIA_TYPES = (MEDIA_TEXT, MEDIA_VIDEO)

SEGMENT_TITLE = "title"
SEGMENT_SNIPPET = "snippet"
SEGMENTS = (SEGMENT_TITLE, SEGMENT_SNIPPET)

_CONLLU_COLUMNS = 10


@dataclass(frozen=True)
class Token:
    """One word line of a parsed sentence.

    ``head`` is the id of the governing token, 0 for the sentence root.
    Only the columns the pipeline consumes are kept.
    """

    id: int
    form: str
    lemma: str
    upos: str
    head: int
    deprel: str

    def __post_init__(self) -> None:
        if self.id < 1:
            raise ValidationError(f"token id must be >= 1, got {self.id}")
        if self.head < 0:
            raise ValidationError(f"token head must be >= 0, got {self.head}")
        if self.head == self.id:
            raise ValidationError(f"token {self.id} ({self.form!r}) is its own head")


@dataclass(frozen=True)
class SentenceTree:
    """A parsed sentence with a guaranteed single-rooted, acyclic tree."""

    tokens: tuple[Token, ...]
    text: str = ""

    def __post_init__(self) -> None:
        problem = _tree_problem(self.tokens)
        if problem:
            raise ValidationError(f"bad sentence {self.text!r}: {problem}")
        if not self.text:
            object.__setattr__(self, "text", " ".join(t.form for t in self.tokens))

    @cached_property
    def _by_id(self) -> dict[int, Token]:
        return {t.id: t for t in self.tokens}

    def token(self, token_id: int) -> Token:
        try:
            return self._by_id[token_id]
        except KeyError:
            raise ValidationError(f"no token with id {token_id} in {self.text!r}") from None

    @property
    def root(self) -> Token:
        return next(t for t in self.tokens if t.head == 0)

    def path_ids(self, token_id: int) -> tuple[int, ...]:
        """Token ids on the head chain from token_id to the root, inclusive."""
        path = [token_id]
        current = self.token(token_id)
        while current.head != 0:
            current = self.token(current.head)
            path.append(current.id)
        return tuple(path)


def _tree_problem(tokens: tuple[Token, ...]) -> str | None:
    if not tokens:
        return "no tokens"
    ids = [t.id for t in tokens]
    id_set = set(ids)
    if len(id_set) != len(ids):
        return "duplicate token ids"
    roots = [t.id for t in tokens if t.head == 0]
    if len(roots) != 1:
        return f"expected exactly one root, found {len(roots)}"
    for t in tokens:
        if t.head != 0 and t.head not in id_set:
            return f"token {t.id} points at missing head {t.head}"
    # Cycle check: every head chain must reach the root within len(tokens) hops.
    by_id = {t.id: t for t in tokens}
    for t in tokens:
        current, hops = t, 0
        while current.head != 0:
            current = by_id[current.head]
            hops += 1
            if hops > len(tokens):
                return f"head links starting at token {t.id} form a cycle"
    return None


@dataclass(frozen=True)
class SourceRecord:
    """One search result: a url, its media kind, and its parsed text."""

    url: str
    media: str
    title: str
    snippet: str
    sentences: tuple[SentenceTree, ...] = ()
    title_sentence_count: int = 0

    def __post_init__(self) -> None:
        if not self.url:
            raise ValidationError("record url must be non-empty")
        if self.media not in MEDIA_TYPES:
            raise ValidationError(
                f"media must be one of {MEDIA_TYPES}, got {self.media!r}"
            )
        if not 0 <= self.title_sentence_count <= len(self.sentences):
            raise ValidationError(
                f"title_sentence_count {self.title_sentence_count} out of range "
                f"for {len(self.sentences)} sentences"
            )

    @property
    def title_sentences(self) -> tuple[SentenceTree, ...]:
        return self.sentences[: self.title_sentence_count]

    @property
    def snippet_sentences(self) -> tuple[SentenceTree, ...]:
        return self.sentences[self.title_sentence_count :]


@dataclass(frozen=True)
class Corpus:
    records: tuple[SourceRecord, ...] = ()
    entity_label: str = ""

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for r in self.records:
            if r.url in seen:
                raise ValidationError(f"duplicate url in corpus: {r.url}")
            seen.add(r.url)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[SourceRecord]:
        return iter(self.records)


def _lines(stream: str | IO[str] | Iterable[str]) -> Iterable[str]:
    if isinstance(stream, str):
        return stream.splitlines()
    return stream


def iter_parse_blocks(
    stream: str | IO[str] | Iterable[str], source: str | None = None
) -> Iterator[tuple[dict[str, str], SentenceTree, int]]:
    """Yield (comments, sentence, first_line_number) per CoNLL-U block.

    Comment lines of the form ``# key = value`` become entries in the
    comments mapping.  Multiword range ids (``3-4``) and empty-node ids
    (``3.1``) are skipped.  Malformed lines raise ParseError naming the
    line; structurally invalid sentences raise ValidationError.
    """
    comments: dict[str, str] = {}
    tokens: list[Token] = []
    start_line = 0

    def flush() -> Iterator[tuple[dict[str, str], SentenceTree, int]]:
        nonlocal comments, tokens, start_line
        if tokens:
            try:
                tree = SentenceTree(tuple(tokens), comments.get("text", ""))
            except ValidationError as exc:
                raise ValidationError(exc.message, source=source, line=start_line) from None
            yield comments, tree, start_line
        comments, tokens, start_line = {}, [], 0

    for lineno, raw in enumerate(_lines(stream), 1):
        line = raw.rstrip("\n")
        if not line.strip():
            yield from flush()
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, _, value = body.partition("=")
                comments[key.strip()] = value.strip()
            if start_line == 0:
                start_line = lineno
            continue
        cols = line.split("\t")
        if len(cols) != _CONLLU_COLUMNS:
            raise ParseError(
                f"expected {_CONLLU_COLUMNS} tab-separated columns, got {len(cols)}",
                source=source,
                line=lineno,
            )
        token_id = cols[0]
        if "-" in token_id or "." in token_id:
            continue  # multiword ranges and empty nodes carry no tree structure
        try:
            tid = int(token_id)
        except ValueError:
            raise ParseError(f"non-numeric token id {token_id!r}", source=source, line=lineno) from None
        try:
            head = int(cols[6])
        except ValueError:
            raise ParseError(f"non-numeric head {cols[6]!r}", source=source, line=lineno) from None
        try:
            token = Token(id=tid, form=cols[1], lemma=cols[2], upos=cols[3], head=head, deprel=cols[7])
        except ValidationError as exc:
            raise ValidationError(exc.message, source=source, line=lineno) from None
        if start_line == 0:
            start_line = lineno
        tokens.append(token)
    yield from flush()


def parse_conllu(stream: str | IO[str] | Iterable[str], source: str | None = None) -> list[SentenceTree]:
    """Parse a CoNLL-U character stream into sentence trees."""
    return [tree for _, tree, _ in iter_parse_blocks(stream, source=source)]


def to_conllu(sentence: SentenceTree, comments: Mapping[str, str] | None = None) -> str:
    """Serialize one sentence to CoNLL-U, ending with a newline.

    Unused columns are written as underscores.  Callers join blocks with
    a blank line.  parse_conllu(to_conllu(s)) round-trips to [s].
    """
    lines = []
    for key, value in (comments or {}).items():
        lines.append(f"# {key} = {value}")
    lines.append(f"# text = {sentence.text}")
    for t in sentence.tokens:
        lines.append(
            "\t".join((str(t.id), t.form, t.lemma, t.upos, "_", "_", str(t.head), t.deprel, "_", "_"))
        )
    return "\n".join(lines) + "\n"


def load_records(path: str) -> list[SourceRecord]:
    """Read a JSONL records file, one url/media/title/snippet object per line."""
    records: list[SourceRecord] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc.msg}", source=path, line=lineno) from None
            if not isinstance(obj, dict):
                raise ValidationError("record line must be a JSON object", source=path, line=lineno)
            missing = [k for k in ("url", "media", "title", "snippet") if k not in obj]
            if missing:
                raise ValidationError(
                    f"record missing field(s): {', '.join(missing)}", source=path, line=lineno
                )
            try:
                records.append(
                    SourceRecord(
                        url=str(obj["url"]),
                        media=str(obj["media"]),
                        title=str(obj["title"]),
                        snippet=str(obj["snippet"]),
                    )
                )
            except ValidationError as exc:
                raise ValidationError(exc.message, source=path, line=lineno) from None
    return records


def dedup_by_url(records: Iterable[SourceRecord]) -> list[SourceRecord]:
    """Keep the first record for each url, preserving order."""
    seen: set[str] = set()
    kept: list[SourceRecord] = []
    for r in records:
        if r.url in seen:
            continue
        seen.add(r.url)
        kept.append(r)
    return kept


def attach_parses(
    records: Iterable[SourceRecord],
    stream: str | IO[str] | Iterable[str],
    source: str | None = None,
) -> list[SourceRecord]:
    """Join parsed sentences onto records by url.

    Title sentences are placed before snippet sentences, in file order
    within each segment.  A parse whose url matches no record is an
    error; a record with no parses keeps an empty sentence tuple.
    """
    by_url: dict[str, SourceRecord] = {}
    for r in records:
        if r.url in by_url:
            raise ValidationError(f"duplicate url in records: {r.url}")
        by_url[r.url] = r

    titles: dict[str, list[SentenceTree]] = {url: [] for url in by_url}
    snippets: dict[str, list[SentenceTree]] = {url: [] for url in by_url}
    current_url: str | None = None
    current_segment: str | None = None
    for comments, tree, lineno in iter_parse_blocks(stream, source=source):
        if "url" in comments:
            if comments["url"] != current_url:
                current_segment = None
            current_url = comments["url"]
        if "segment" in comments:
            current_segment = comments["segment"]
        if current_url is None:
            raise ValidationError("sentence block has no preceding # url comment", source=source, line=lineno)
        if current_segment is None:
            raise ValidationError("sentence block has no preceding # segment comment", source=source, line=lineno)
        if current_segment not in SEGMENTS:
            raise ValidationError(
                f"segment must be one of {SEGMENTS}, got {current_segment!r}", source=source, line=lineno
            )
        if current_url not in by_url:
            raise ValidationError(f"parse references unknown url: {current_url}", source=source, line=lineno)
        bucket = titles if current_segment == SEGMENT_TITLE else snippets
        bucket[current_url].append(tree)

    joined: list[SourceRecord] = []
    for url, record in by_url.items():
        t, s = titles[url], snippets[url]
        joined.append(
            replace(record, sentences=tuple(t) + tuple(s), title_sentence_count=len(t))
        )
    return joined


def load_corpus(records_path: str, parses_path: str, entity_label: str = "") -> Corpus:
    """Load records and parses from disk into a deduplicated corpus."""
    records = load_records(records_path)
    deduped = dedup_by_url(records)
    if len(deduped) < len(records):
        log.warning("dropped %d duplicate url(s) from %s", len(records) - len(deduped), records_path)
    with open(parses_path, encoding="utf-8") as fh:
        joined = attach_parses(deduped, fh, source=parses_path)
    return Corpus(records=tuple(joined), entity_label=entity_label)
