"""Claim detection over parsed sentences.

A claim asserts that a named entity has a subjective property.  A
sentence yields a claim when a token close enough to the entity name and
a token close enough to one of the property lemmas stand in one of two
dependency configurations:

* the entity token is a direct child of the property token through a
  subject-like or possessive relation, or
* both tokens share the same head and that head's lemma is a copula.

Polarity is decided by counting negation signals along the entity's
path to the root; an even count is a positive claim.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .conllu import Corpus, MEDIA_TYPES, SEGMENT_SNIPPET, SEGMENT_TITLE, SEGMENTS, SentenceTree, SourceRecord
from .errors import ParseError, ValidationError

DEFAULT_SIM_THRESHOLD = 0.85
DEFAULT_CHILD_DEPRELS = frozenset({"nsubj", "nsubjpass", "poss"})
DEFAULT_BE_LEMMAS = frozenset({"be"})
DEFAULT_AFFIRMATIVE_WH_WORDS = frozenset({"why"})


@dataclass(frozen=True)
class HypothesisSpec:
    """Parameters describing one entity-property hypothesis."""

    entity_name: str
    property_lemmas: frozenset[str]
    canonical_property: str
    entity_sim_threshold: float = DEFAULT_SIM_THRESHOLD
    property_sim_threshold: float = DEFAULT_SIM_THRESHOLD
    child_deprels: frozenset[str] = DEFAULT_CHILD_DEPRELS
    be_lemmas: frozenset[str] = DEFAULT_BE_LEMMAS
    affirmative_wh_words: frozenset[str] = DEFAULT_AFFIRMATIVE_WH_WORDS

    def __post_init__(self) -> None:
        if not self.entity_name:
            raise ValidationError("entity_name must be non-empty")
        if not self.property_lemmas:
            raise ValidationError("property_lemmas must be non-empty")
        if self.canonical_property not in self.property_lemmas:
            raise ValidationError(
                f"canonical_property {self.canonical_property!r} not in property_lemmas"
            )
        for name in ("entity_sim_threshold", "property_sim_threshold"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValidationError(f"{name} must be in [0, 1], got {value}")

    @classmethod
    def from_dict(cls, obj: dict) -> "HypothesisSpec":
        try:
            lemmas = list(obj["property_lemmas"])
            kwargs = {
                "entity_name": str(obj["entity_name"]),
                "property_lemmas": frozenset(str(x) for x in lemmas),
                # Defaults to the first lemma as listed, so order matters.
                "canonical_property": str(obj.get("canonical_property", lemmas[0] if lemmas else "")),
            }
        except KeyError as exc:
            raise ValidationError(f"hypothesis spec missing field {exc.args[0]!r}") from None
        for name in ("entity_sim_threshold", "property_sim_threshold"):
            if name in obj:
                kwargs[name] = float(obj[name])
        for name in ("child_deprels", "be_lemmas", "affirmative_wh_words"):
            if name in obj:
                kwargs[name] = frozenset(str(x) for x in obj[name])
        return cls(**kwargs)

    def to_dict(self) -> dict:
        return {
            "entity_name": self.entity_name,
            "property_lemmas": sorted(self.property_lemmas),
            "canonical_property": self.canonical_property,
            "entity_sim_threshold": self.entity_sim_threshold,
            "property_sim_threshold": self.property_sim_threshold,
            "child_deprels": sorted(self.child_deprels),
            "be_lemmas": sorted(self.be_lemmas),
            "affirmative_wh_words": sorted(self.affirmative_wh_words),
        }


def load_hypothesis_spec(path: str) -> HypothesisSpec:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", source=path, line=exc.lineno) from None
    if not isinstance(obj, dict):
        raise ValidationError("hypothesis spec must be a JSON object", source=path)
    try:
        return HypothesisSpec.from_dict(obj)
    except ValidationError as exc:
        raise ValidationError(exc.message, source=path) from None


def levenshtein(a: str, b: str) -> int:
    """Edit distance with unit-cost insert, delete, and substitute."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        current = [i]
        for j, cb in enumerate(b, 1):
            cost = 0 if ca == cb else 1
            current.append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost))
        previous = current
    return previous[-1]


def similarity(a: str, b: str) -> float:
    """Case-folded edit similarity in [0, 1]; two empty strings match fully."""
    a, b = a.lower(), b.lower()
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / longest


def detect_entity(sentence: SentenceTree, spec: HypothesisSpec) -> list[int]:
    """Ids of proper-noun tokens whose form matches the entity name."""
    return [
        t.id
        for t in sentence.tokens
        if t.upos == "PROPN" and similarity(t.form, spec.entity_name) >= spec.entity_sim_threshold
    ]


def detect_property(sentence: SentenceTree, spec: HypothesisSpec) -> list[int]:
    """Ids of tokens whose lemma matches any property lemma."""
    return [
        t.id
        for t in sentence.tokens
        if max(similarity(t.lemma, lemma) for lemma in spec.property_lemmas) >= spec.property_sim_threshold
    ]


def validate_structure(
    sentence: SentenceTree, entity_id: int, property_id: int, spec: HypothesisSpec
) -> bool:
    """True when entity and property stand in an accepted configuration."""
    if entity_id == property_id:
        return False
    entity = sentence.token(entity_id)
    prop = sentence.token(property_id)
    if entity.head == property_id and entity.deprel in spec.child_deprels:
        return True
    if entity.head != 0 and entity.head == prop.head:
        return sentence.token(entity.head).lemma in spec.be_lemmas
    return False


def count_negations(sentence: SentenceTree, entity_id: int, spec: HypothesisSpec) -> int:
    """Count negation signals relevant to the claim at entity_id.

    Three signals add up:

    1. tokens with deprel "neg" whose head lies on the entity's path to
       the root, together with "neg" tokens on that path themselves;
    2. one count if any token form contains a question mark, however
       many there are;
    3. one more count if signal 2 fired and an affirmative wh-word is
       present, which flips the question back to an assertion.
    """
    path = set(sentence.path_ids(entity_id))
    negs = {t.id for t in sentence.tokens if t.deprel == "neg" and (t.head in path or t.id in path)}
    count = len(negs)
    question = any("?" in t.form for t in sentence.tokens)
    if question:
        count += 1
        if any(t.form.lower() in spec.affirmative_wh_words for t in sentence.tokens):
            count += 1
    return count


def classify_polarity(negation_count: int) -> bool:
    """Even negation counts assert the property, odd counts deny it."""
    if negation_count < 0:
        raise ValidationError(f"negation_count must be >= 0, got {negation_count}")
    return negation_count % 2 == 0


@dataclass(frozen=True)
class Claim:
    """One detected claim, at most one per source record."""

    url: str
    media: str
    sentence_index: int
    sentence_text: str
    entity_token_id: int
    property_token_id: int
    positive: bool
    negation_count: int
    segment: str = SEGMENT_SNIPPET

    def __post_init__(self) -> None:
        if self.media not in MEDIA_TYPES:
            raise ValidationError(f"media must be one of {MEDIA_TYPES}, got {self.media!r}")
        if self.segment not in SEGMENTS:
            raise ValidationError(f"segment must be one of {SEGMENTS}, got {self.segment!r}")
        if self.negation_count < 0:
            raise ValidationError("negation_count must be >= 0")
        if self.entity_token_id == self.property_token_id:
            raise ValidationError("entity and property tokens must differ")
        if self.positive != classify_polarity(self.negation_count):
            raise ValidationError(
                f"positive={self.positive} inconsistent with negation_count={self.negation_count}"
            )


def extract_claim(record: SourceRecord, spec: HypothesisSpec) -> Claim | None:
    """First validated claim in a record, or None.

    Sentences are scanned in order, title before snippet.  Within a
    sentence, candidate pairs are tried entity-first in token order and
    the first pair that validates wins.
    """
    for index, sentence in enumerate(record.sentences):
        entity_ids = detect_entity(sentence, spec)
        if not entity_ids:
            continue
        property_ids = detect_property(sentence, spec)
        if not property_ids:
            continue
        for entity_id in entity_ids:
            for property_id in property_ids:
                if not validate_structure(sentence, entity_id, property_id, spec):
                    continue
                negations = count_negations(sentence, entity_id, spec)
                segment = SEGMENT_TITLE if index < record.title_sentence_count else SEGMENT_SNIPPET
                return Claim(
                    url=record.url,
                    media=record.media,
                    sentence_index=index,
                    sentence_text=sentence.text,
                    entity_token_id=entity_id,
                    property_token_id=property_id,
                    positive=classify_polarity(negations),
                    negation_count=negations,
                    segment=segment,
                )
    return None


def extract_claims(corpus: Corpus | Iterable[SourceRecord], spec: HypothesisSpec) -> list[Claim]:
    """Scan every record, keeping at most one claim each."""
    claims = []
    for record in corpus:
        claim = extract_claim(record, spec)
        if claim is not None:
            claims.append(claim)
    return claims


_CLAIM_FIELDS = (
    "url",
    "media",
    "segment",
    "sentence_index",
    "sentence_text",
    "entity_token_id",
    "property_token_id",
    "negation_count",
    "positive",
)


def claim_to_dict(claim: Claim) -> dict:
    return {name: getattr(claim, name) for name in _CLAIM_FIELDS}


def write_claims_jsonl(claims: Iterable[Claim], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for claim in claims:
            fh.write(json.dumps(claim_to_dict(claim), ensure_ascii=False) + "\n")


def read_claims_jsonl(path: str) -> list[Claim]:
    claims: list[Claim] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc.msg}", source=path, line=lineno) from None
            missing = [k for k in _CLAIM_FIELDS if k not in obj]
            if missing:
                raise ValidationError(
                    f"claim missing field(s): {', '.join(missing)}", source=path, line=lineno
                )
            try:
                claims.append(
                    Claim(
                        url=str(obj["url"]),
                        media=str(obj["media"]),
                        segment=str(obj["segment"]),
                        sentence_index=int(obj["sentence_index"]),
                        sentence_text=str(obj["sentence_text"]),
                        entity_token_id=int(obj["entity_token_id"]),
                        property_token_id=int(obj["property_token_id"]),
                        negation_count=int(obj["negation_count"]),
                        positive=bool(obj["positive"]),
                    )
                )
            except ValidationError as exc:
                raise ValidationError(exc.message, source=path, line=lineno) from None
    return claims
