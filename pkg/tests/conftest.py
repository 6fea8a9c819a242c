from pathlib import Path

import pytest

import claimkit as ck
from counts_fixture import FIXTURES


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def neymar_spec() -> ck.HypothesisSpec:
    return ck.load_hypothesis_spec(str(FIXTURES / "hypothesis_neymar.json"))


@pytest.fixture
def canonical_corpus() -> ck.Corpus:
    return ck.load_corpus(
        str(FIXTURES / "canonical_records.jsonl"),
        str(FIXTURES / "canonical.conllu"),
        "Neymar",
    )


@pytest.fixture
def tableclaims_corpus() -> ck.Corpus:
    return ck.load_corpus(
        str(FIXTURES / "tableclaims_records.jsonl"),
        str(FIXTURES / "tableclaims.conllu"),
        "Neymar",
    )
