"""Crowd rating ingestion and summary statistics.

Workers rate videos on a 1..5 scale after stating a prior stance.
Both are normalized onto [0, 1] so the stated prior and the evidence
based rating can be compared directly: the drop from prior to rating is
the shift the footage produced.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from math import fsum
from typing import ClassVar, Iterable, Sequence

from .errors import ValidationError
from .formatting import percent_points

BIAS_SKEPTICAL = "skeptical"
BIAS_NEUTRAL = "neutral"
BIAS_SUPPORTIVE = "supportive"
BIAS_VALUES = (BIAS_SKEPTICAL, BIAS_NEUTRAL, BIAS_SUPPORTIVE)

# How the stance is spelled in ratings CSV files.
_FORM_TO_BIAS = {"no": BIAS_SKEPTICAL, "neutral": BIAS_NEUTRAL, "yes": BIAS_SUPPORTIVE}

# One bin per answer to "how often does it happen", lowest to highest.
RATING_LABELS = ("no-dives", "little-bit", "sometimes", "many-times", "massive-dives")
STANCE_LABELS = ("skeptical", "neutral", "supportive")
RATING_MIN = 1
RATING_MAX = 5

_RATINGS_HEADER = ("worker_id", "video_id", "prior_bias", "rating", "proof_correct")


@dataclass(frozen=True)
class CrowdRating:
    worker_id: str
    video_id: str
    prior_bias: str
    rating: int
    proof_correct: bool

    def __post_init__(self) -> None:
        if self.prior_bias not in BIAS_VALUES:
            raise ValidationError(
                f"prior_bias must be one of {BIAS_VALUES}, got {self.prior_bias!r}"
            )
        if not RATING_MIN <= self.rating <= RATING_MAX:
            raise ValidationError(
                f"rating must be in [{RATING_MIN}, {RATING_MAX}], got {self.rating}"
            )


def read_ratings_csv(path: str) -> list[CrowdRating]:
    """Read worker ratings, validating every row."""
    ratings: list[CrowdRating] = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ValidationError("ratings file is empty", source=path)
        missing = [c for c in _RATINGS_HEADER if c not in reader.fieldnames]
        if missing:
            raise ValidationError(
                f"ratings header missing column(s): {', '.join(missing)}", source=path, line=1
            )
        for row in reader:
            lineno = reader.line_num
            try:
                rating = int(row["rating"])
            except (TypeError, ValueError):
                raise ValidationError(
                    f"rating must be an integer, got {row.get('rating')!r}", source=path, line=lineno
                ) from None
            proof = str(row.get("proof_correct", "")).strip().lower()
            if proof not in ("true", "false"):
                raise ValidationError(
                    f"proof_correct must be true or false, got {row.get('proof_correct')!r}",
                    source=path,
                    line=lineno,
                )
            form_bias = str(row.get("prior_bias", "")).strip().lower()
            if form_bias not in _FORM_TO_BIAS:
                raise ValidationError(
                    f"prior_bias must be one of {tuple(_FORM_TO_BIAS)}, got {row.get('prior_bias')!r}",
                    source=path,
                    line=lineno,
                )
            try:
                ratings.append(
                    CrowdRating(
                        worker_id=str(row["worker_id"]),
                        video_id=str(row["video_id"]),
                        prior_bias=_FORM_TO_BIAS[form_bias],
                        rating=rating,
                        proof_correct=proof == "true",
                    )
                )
            except ValidationError as exc:
                raise ValidationError(exc.message, source=path, line=lineno) from None
    return ratings


def filter_accepted(ratings: Iterable[CrowdRating]) -> list[CrowdRating]:
    """Keep only ratings whose attention proof was answered correctly."""
    return [r for r in ratings if r.proof_correct]


def normalize_bias(prior_bias: str) -> float:
    """Map a stated prior onto [0, 1]: skeptical=0, neutral=0.5, supportive=1."""
    try:
        return {BIAS_SKEPTICAL: 0.0, BIAS_NEUTRAL: 0.5, BIAS_SUPPORTIVE: 1.0}[prior_bias]
    except KeyError:
        raise ValidationError(f"unknown prior_bias {prior_bias!r}") from None


def normalize_rating(rating: int) -> float:
    """Map a 1..5 rating onto [0, 1] linearly."""
    if not RATING_MIN <= rating <= RATING_MAX:
        raise ValidationError(f"rating must be in [{RATING_MIN}, {RATING_MAX}], got {rating}")
    return (rating - RATING_MIN) / (RATING_MAX - RATING_MIN)


@dataclass(frozen=True)
class VideoStats:
    video_id: str
    n_ratings: int
    avg_bias: float
    avg_rating: float


def per_video_stats(ratings: Iterable[CrowdRating]) -> list[VideoStats]:
    """Mean normalized bias and rating per video, in first-seen order."""
    groups: dict[str, list[CrowdRating]] = {}
    for r in ratings:
        groups.setdefault(r.video_id, []).append(r)
    stats = []
    for video_id, group in groups.items():
        stats.append(
            VideoStats(
                video_id=video_id,
                n_ratings=len(group),
                avg_bias=fsum(normalize_bias(r.prior_bias) for r in group) / len(group),
                avg_rating=fsum(normalize_rating(r.rating) for r in group) / len(group),
            )
        )
    return stats


def overall_stats(per_video: Sequence[VideoStats]) -> tuple[float, float]:
    """Mean of the per-video averages, each video weighted equally."""
    if not per_video:
        raise ValidationError("overall_stats needs at least one video")
    bias = fsum(v.avg_bias for v in per_video) / len(per_video)
    rating = fsum(v.avg_rating for v in per_video) / len(per_video)
    return bias, rating


def pooled_stats(ratings: Sequence[CrowdRating]) -> tuple[float, float]:
    """Mean over all ratings, each rating weighted equally."""
    if not ratings:
        raise ValidationError("pooled_stats needs at least one rating")
    bias = fsum(normalize_bias(r.prior_bias) for r in ratings) / len(ratings)
    rating = fsum(normalize_rating(r.rating) for r in ratings) / len(ratings)
    return bias, rating


def shift(avg_bias: float, avg_rating: float) -> float:
    """Prior-to-rating drop in percentage points; positive means down."""
    return (avg_bias - avg_rating) * 100.0


@dataclass(frozen=True)
class Histogram:
    """Ordered bin counts with their labels."""

    labels: tuple[str, ...]
    counts: tuple[int, ...]

    EXPECTED_BINS: ClassVar[int | None] = None

    def __post_init__(self) -> None:
        if len(self.labels) != len(self.counts):
            raise ValidationError("histogram labels and counts differ in length")
        if self.EXPECTED_BINS is not None and len(self.counts) != self.EXPECTED_BINS:
            raise ValidationError(
                f"expected {self.EXPECTED_BINS} bins, got {len(self.counts)}"
            )
        if any(c < 0 for c in self.counts):
            raise ValidationError("histogram counts must be >= 0")

    @property
    def total(self) -> int:
        return sum(self.counts)

    def percents(self) -> tuple[int, ...]:
        if self.total == 0:
            return tuple(0 for _ in self.counts)
        return tuple(percent_points(c / self.total) for c in self.counts)


class Histogram3(Histogram):
    EXPECTED_BINS = 3


class Histogram5(Histogram):
    EXPECTED_BINS = 5


def bias_histogram(ratings: Iterable[CrowdRating]) -> Histogram3:
    counts = {b: 0 for b in BIAS_VALUES}
    for r in ratings:
        counts[r.prior_bias] += 1
    return Histogram3(labels=STANCE_LABELS, counts=tuple(counts.values()))


def rating_histogram(ratings: Iterable[CrowdRating]) -> Histogram5:
    counts = [0] * (RATING_MAX - RATING_MIN + 1)
    for r in ratings:
        counts[r.rating - RATING_MIN] += 1
    return Histogram5(labels=RATING_LABELS, counts=tuple(counts))


def merge_histogram(h5: Histogram5) -> Histogram3:
    """Collapse the five rating bins onto the three stances.

    The two lowest answers become skeptical, the middle stays neutral,
    and the two highest become supportive.
    """
    if len(h5.counts) != 5:
        raise ValidationError(f"expected a 5-bin histogram, got {len(h5.counts)} bins")
    c = h5.counts
    return Histogram3(labels=STANCE_LABELS, counts=(c[0] + c[1], c[2], c[3] + c[4]))
