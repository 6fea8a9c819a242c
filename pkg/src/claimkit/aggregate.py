"""Per-media claim tallies and the statistics built on them.

The binomial test is exact: the p-value sums Binomial(n, null_p) point
masses no larger than the observed outcome's, computed in rational
arithmetic so no rounding enters before the final float.  Interval
estimates use the Wilson score construction.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb, sqrt
from statistics import NormalDist
from typing import Iterable, Mapping

from .conllu import MEDIA_TYPES
from .errors import UndefinedProportionError, ValidationError
from .formatting import round_half_up
from .matching import Claim

VERDICT_SUPPORTED = "supported"
VERDICT_REFUTED = "refuted"
VERDICT_UNDECIDED = "undecided"


@dataclass(frozen=True)
class ClaimTally:
    """Yes/no claim counts for one entity and media kind."""

    entity: str
    media: str
    n_urls: int
    n_claims: int
    yes: int
    no: int

    def __post_init__(self) -> None:
        if self.media not in MEDIA_TYPES:
            raise ValidationError(f"media must be one of {MEDIA_TYPES}, got {self.media!r}")
        for name in ("n_urls", "n_claims", "yes", "no"):
            if getattr(self, name) < 0:
                raise ValidationError(f"{name} must be >= 0")
        if self.yes + self.no != self.n_claims:
            raise ValidationError(
                f"yes + no must equal n_claims ({self.yes} + {self.no} != {self.n_claims})"
            )
        if self.n_claims > self.n_urls:
            raise ValidationError(
                f"n_claims ({self.n_claims}) exceeds n_urls ({self.n_urls})"
            )


def tally(claims: Iterable[Claim], url_counts: Mapping[str, int], entity: str) -> list[ClaimTally]:
    """Fold claims into one tally per media present in url_counts.

    url_counts gives the number of distinct source urls per media, the
    denominator claims were drawn from.  A claim for a media not in
    url_counts is an error.
    """
    counts = {media: [0, 0] for media in MEDIA_TYPES if media in url_counts}
    for claim in claims:
        if claim.media not in counts:
            raise ValidationError(f"claim media {claim.media!r} missing from url counts")
        counts[claim.media][0 if claim.positive else 1] += 1
    tallies = []
    for media, (yes, no) in counts.items():
        tallies.append(
            ClaimTally(
                entity=entity,
                media=media,
                n_urls=int(url_counts[media]),
                n_claims=yes + no,
                yes=yes,
                no=no,
            )
        )
    return tallies


def proportion_yes(t: ClaimTally) -> float:
    if t.n_claims == 0:
        raise UndefinedProportionError(
            f"no claims for entity {t.entity!r} media {t.media!r}"
        )
    return t.yes / t.n_claims


def media_difference(text_tally: ClaimTally, video_tally: ClaimTally) -> int:
    """Video minus text yes-share, in whole percentage points.

    Both proportions are rounded to whole percents first so the result
    matches what a reader computes from the displayed columns.
    """
    if text_tally.media != "text" or video_tally.media != "video":
        raise ValidationError("media_difference expects a text tally and a video tally")
    text_pct = int(round_half_up(proportion_yes(text_tally) * 100.0))
    video_pct = int(round_half_up(proportion_yes(video_tally) * 100.0))
    return video_pct - text_pct


def mean_proportion(text_tally: ClaimTally, video_tally: ClaimTally) -> float:
    """Unweighted mean of the two displayed (2-decimal) yes-shares."""
    text_p = round_half_up(proportion_yes(text_tally), 2)
    video_p = round_half_up(proportion_yes(video_tally), 2)
    return (text_p + video_p) / 2.0


@dataclass(frozen=True)
class BinomialTestResult:
    n: int
    k: int
    p_hat: float
    p_value: float
    ci_low: float
    ci_high: float
    verdict: str

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "p_hat": self.p_hat,
            "p_value": self.p_value,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "verdict": self.verdict,
        }


def _check_probability(value: float, name: str) -> None:
    if not 0.0 < value < 1.0:
        raise ValidationError(f"{name} must be strictly between 0 and 1, got {value}")


def binomial_test_pvalue(k: int, n: int, null_p: float = 0.5) -> float:
    """Exact two-sided binomial p-value by point-mass enumeration.

    Sums pmf(i) over all outcomes i whose probability under the null
    does not exceed pmf(k).  Evaluated with Fractions, so equal masses
    compare equal and the only rounding is the final conversion.
    """
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    if not 0 <= k <= n:
        raise ValidationError(f"k must be in [0, n], got k={k} n={n}")
    _check_probability(null_p, "null_p")
    p = Fraction(null_p)
    q = 1 - p
    masses = [comb(n, i) * p**i * q ** (n - i) for i in range(n + 1)]
    observed = masses[k]
    total = sum(m for m in masses if m <= observed)
    return float(min(total, Fraction(1)))


def wilson_interval(k: int, n: int, alpha: float = 0.05) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion, clamped to [0, 1]."""
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    if not 0 <= k <= n:
        raise ValidationError(f"k must be in [0, n], got k={k} n={n}")
    _check_probability(alpha, "alpha")
    z = NormalDist().inv_cdf(1.0 - alpha / 2.0)
    p_hat = k / n
    z2 = z * z
    denom = 1.0 + z2 / n
    center = (p_hat + z2 / (2.0 * n)) / denom
    margin = (z / denom) * sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n))
    low = max(0.0, center - margin)
    high = min(1.0, center + margin)
    # At the extremes the bound touches p_hat exactly; keep it free of
    # float dust so the interval always contains p_hat.
    if k == 0:
        low = 0.0
    if k == n:
        high = 1.0
    return (low, high)


def _verdict(ci_low: float, ci_high: float, null_p: float) -> str:
    if ci_low > null_p:
        return VERDICT_SUPPORTED
    if ci_high < null_p:
        return VERDICT_REFUTED
    return VERDICT_UNDECIDED


def binomial_test(yes: int, no: int, null_p: float = 0.5, alpha: float = 0.05) -> BinomialTestResult:
    """Test whether the yes-share differs from null_p.

    The verdict reads the Wilson interval against the null: supported
    when the interval lies above null_p, refuted when below, undecided
    when it straddles.
    """
    n = yes + no
    if n < 1:
        raise ValidationError("binomial_test needs at least one claim")
    if yes < 0 or no < 0:
        raise ValidationError("yes and no must be >= 0")
    _check_probability(alpha, "alpha")
    p_value = binomial_test_pvalue(yes, n, null_p)
    ci_low, ci_high = wilson_interval(yes, n, alpha)
    return BinomialTestResult(
        n=n,
        k=yes,
        p_hat=yes / n,
        p_value=p_value,
        ci_low=ci_low,
        ci_high=ci_high,
        verdict=_verdict(ci_low, ci_high, null_p),
    )


@dataclass(frozen=True)
class DecisionReport:
    """Weighted combination of per-media evidence for one entity."""

    entity: str
    per_media: Mapping[str, tuple[ClaimTally, BinomialTestResult]]
    weights: Mapping[str, float]
    combined_score: float
    pooled: BinomialTestResult
    verdict: str

    def to_dict(self) -> dict:
        return {
            "entity": self.entity,
            "per_media": {
                media: {"tally": asdict(t), "test": test.to_dict()}
                for media, (t, test) in self.per_media.items()
            },
            "weights": dict(self.weights),
            "combined_score": self.combined_score,
            "pooled": self.pooled.to_dict(),
            "verdict": self.verdict,
        }


def combine_scores(
    tallies_with_tests: Mapping[str, tuple[ClaimTally, BinomialTestResult]],
    weights: Mapping[str, float],
    null_p: float = 0.5,
    alpha: float = 0.05,
) -> DecisionReport:
    """Blend per-media yes-shares into one score and verdict.

    The combined score is the weights applied to each media's displayed
    (2-decimal) yes-share.  The verdict comes from a Wilson interval on
    weight-pooled counts, rounded to whole claims, against null_p.
    """
    if not tallies_with_tests:
        raise ValidationError("combine_scores needs at least one tally")
    if set(weights) != set(tallies_with_tests):
        raise ValidationError(
            f"weights must cover exactly the media present: "
            f"weights for {sorted(weights)}, tallies for {sorted(tallies_with_tests)}"
        )
    for media, w in weights.items():
        if w < 0:
            raise ValidationError(f"weight for {media!r} must be >= 0, got {w}")
    total_weight = sum(weights.values())
    if abs(total_weight - 1.0) > 1e-9:
        raise ValidationError(f"weights must sum to 1, got {total_weight}")
    entities = {t.entity for t, _ in tallies_with_tests.values()}
    if len(entities) != 1:
        raise ValidationError(f"tallies span multiple entities: {sorted(entities)}")
    for media, (t, _) in tallies_with_tests.items():
        if t.media != media:
            raise ValidationError(f"tally media {t.media!r} filed under key {media!r}")

    score = sum(
        weights[media] * round_half_up(proportion_yes(t), 2)
        for media, (t, _) in tallies_with_tests.items()
    )
    pooled_yes = int(round_half_up(sum(w * tallies_with_tests[m][0].yes for m, w in weights.items())))
    pooled_n = int(round_half_up(sum(w * tallies_with_tests[m][0].n_claims for m, w in weights.items())))
    if pooled_n < 1:
        raise ValidationError("pooled claim count rounded to zero; nothing to test")
    pooled = binomial_test(pooled_yes, pooled_n - pooled_yes, null_p=null_p, alpha=alpha)
    return DecisionReport(
        entity=next(iter(entities)),
        per_media=dict(tallies_with_tests),
        weights=dict(weights),
        combined_score=score,
        pooled=pooled,
        verdict=pooled.verdict,
    )
