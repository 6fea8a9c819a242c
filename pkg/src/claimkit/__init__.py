"""Claim detection and aggregation over dependency-parsed social media records."""

from .aggregate import (
    BinomialTestResult,
    ClaimTally,
    DecisionReport,
    VERDICT_REFUTED,
    VERDICT_SUPPORTED,
    VERDICT_UNDECIDED,
    binomial_test,
    binomial_test_pvalue,
    combine_scores,
    media_difference,
    mean_proportion,
    proportion_yes,
    tally,
    wilson_interval,
)
from .conllu import (
    Corpus,
    MEDIA_TEXT,
    MEDIA_TYPES,
    MEDIA_VIDEO,
    SEGMENT_SNIPPET,
    SEGMENT_TITLE,
    SentenceTree,
    SourceRecord,
    Token,
    attach_parses,
    dedup_by_url,
    load_corpus,
    load_records,
    parse_conllu,
    to_conllu,
)
from .crowd import (
    RATING_LABELS,
    STANCE_LABELS,
    CrowdRating,
    Histogram,
    Histogram3,
    Histogram5,
    VideoStats,
    bias_histogram,
    filter_accepted,
    merge_histogram,
    normalize_bias,
    normalize_rating,
    overall_stats,
    per_video_stats,
    pooled_stats,
    rating_histogram,
    read_ratings_csv,
    shift,
)
from .errors import ClaimkitError, ParseError, UndefinedProportionError, ValidationError
from .extractor import ClaimExtractor
from .matching import (
    Claim,
    HypothesisSpec,
    classify_polarity,
    count_negations,
    detect_entity,
    detect_property,
    extract_claim,
    extract_claims,
    levenshtein,
    load_hypothesis_spec,
    read_claims_jsonl,
    similarity,
    validate_structure,
    write_claims_jsonl,
)
from .reports import build_report, render_csv, render_json, render_text, write_crowd_outputs

__version__ = "0.1.0"

__all__ = [
    "BinomialTestResult",
    "Claim",
    "ClaimExtractor",
    "ClaimTally",
    "ClaimkitError",
    "Corpus",
    "CrowdRating",
    "DecisionReport",
    "Histogram",
    "Histogram3",
    "Histogram5",
    "HypothesisSpec",
    "MEDIA_TEXT",
    "MEDIA_TYPES",
    "MEDIA_VIDEO",
    "ParseError",
    "RATING_LABELS",
    "SEGMENT_SNIPPET",
    "SEGMENT_TITLE",
    "STANCE_LABELS",
    "SentenceTree",
    "SourceRecord",
    "Token",
    "UndefinedProportionError",
    "ValidationError",
    "VERDICT_REFUTED",
    "VERDICT_SUPPORTED",
    "VERDICT_UNDECIDED",
    "VideoStats",
    "attach_parses",
    "bias_histogram",
    "binomial_test",
    "binomial_test_pvalue",
    "build_report",
    "classify_polarity",
    "combine_scores",
    "count_negations",
    "dedup_by_url",
    "detect_entity",
    "detect_property",
    "extract_claim",
    "extract_claims",
    "filter_accepted",
    "levenshtein",
    "load_corpus",
    "load_hypothesis_spec",
    "load_records",
    "media_difference",
    "mean_proportion",
    "merge_histogram",
    "normalize_bias",
    "normalize_rating",
    "overall_stats",
    "parse_conllu",
    "per_video_stats",
    "pooled_stats",
    "proportion_yes",
    "rating_histogram",
    "read_claims_jsonl",
    "read_ratings_csv",
    "render_csv",
    "render_json",
    "render_text",
    "shift",
    "similarity",
    "tally",
    "to_conllu",
    "validate_structure",
    "wilson_interval",
    "write_claims_jsonl",
    "write_crowd_outputs",
]
