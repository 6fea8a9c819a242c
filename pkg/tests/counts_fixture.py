from pathlib import Path

import claimkit as ck

FIXTURES = Path(__file__).parent / "fixtures"

# The six (entity, media, n_urls, yes, no) rows of the published counts
# comparison, reused across aggregation tests.
COUNTS_ROWS = [
    ("Neymar", "text", 579, 55, 16),
    ("Neymar", "video", 891, 62, 1),
    ("Messi", "text", 546, 32, 96),
    ("Messi", "video", 643, 21, 42),
    ("Ronaldo", "text", 558, 106, 4),
    ("Ronaldo", "video", 849, 95, 8),
]


def counts_tallies() -> dict[tuple[str, str], ck.ClaimTally]:
    return {
        (entity, media): ck.ClaimTally(entity, media, n_urls, yes + no, yes, no)
        for entity, media, n_urls, yes, no in COUNTS_ROWS
    }
