"""Estimator-style wrapper around claim extraction."""

from __future__ import annotations

from typing import Iterable

from sklearn.base import BaseEstimator, TransformerMixin

from .conllu import Corpus, SourceRecord
from .matching import (
    DEFAULT_AFFIRMATIVE_WH_WORDS,
    DEFAULT_BE_LEMMAS,
    DEFAULT_CHILD_DEPRELS,
    DEFAULT_SIM_THRESHOLD,
    Claim,
    HypothesisSpec,
    extract_claims,
)


class ClaimExtractor(BaseEstimator, TransformerMixin):
    """Stateless transformer turning parsed records into claims.

    Parameters mirror HypothesisSpec so the extractor plugs into
    grid-search style tooling; fit only validates them.

    >>> extractor = ClaimExtractor(entity_name="Neymar", property_lemmas=["dive", "diver"])
    >>> claims = extractor.fit(corpus).transform(corpus)   # doctest: +SKIP
    """

    def __init__(
        self,
        entity_name: str = "",
        property_lemmas: Iterable[str] = (),
        canonical_property: str | None = None,
        entity_sim_threshold: float = DEFAULT_SIM_THRESHOLD,
        property_sim_threshold: float = DEFAULT_SIM_THRESHOLD,
        child_deprels: Iterable[str] = DEFAULT_CHILD_DEPRELS,
        be_lemmas: Iterable[str] = DEFAULT_BE_LEMMAS,
        affirmative_wh_words: Iterable[str] = DEFAULT_AFFIRMATIVE_WH_WORDS,
    ):
        self.entity_name = entity_name
        self.property_lemmas = property_lemmas
        self.canonical_property = canonical_property
        self.entity_sim_threshold = entity_sim_threshold
        self.property_sim_threshold = property_sim_threshold
        self.child_deprels = child_deprels
        self.be_lemmas = be_lemmas
        self.affirmative_wh_words = affirmative_wh_words

    def _spec(self) -> HypothesisSpec:
        lemmas = list(self.property_lemmas)
        canonical = self.canonical_property
        if canonical is None:
            canonical = lemmas[0] if lemmas else ""
        return HypothesisSpec(
            entity_name=self.entity_name,
            property_lemmas=frozenset(lemmas),
            canonical_property=canonical,
            entity_sim_threshold=self.entity_sim_threshold,
            property_sim_threshold=self.property_sim_threshold,
            child_deprels=frozenset(self.child_deprels),
            be_lemmas=frozenset(self.be_lemmas),
            affirmative_wh_words=frozenset(self.affirmative_wh_words),
        )

    def fit(self, X: Corpus | Iterable[SourceRecord] | None = None, y=None) -> "ClaimExtractor":
        """Validate parameters; no state is learned from X."""
        self.spec_ = self._spec()
        return self

    def transform(self, X: Corpus | Iterable[SourceRecord]) -> list[Claim]:
        return extract_claims(X, self._spec())
