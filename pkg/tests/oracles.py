"""Independent reference implementations used only to check the library.

These are deliberately written differently from the package code: the
edit distance is the textbook recursion with memoization, and the
binomial p-value enumerates float probabilities directly.
"""

from functools import lru_cache
from math import comb


def levenshtein_recursive(a: str, b: str) -> int:
    @lru_cache(maxsize=None)
    def d(i: int, j: int) -> int:
        if i == 0:
            return j
        if j == 0:
            return i
        cost = 0 if a[i - 1] == b[j - 1] else 1
        return min(d(i - 1, j) + 1, d(i, j - 1) + 1, d(i - 1, j - 1) + cost)

    return d(len(a), len(b))


def binomial_pvalue_enum(k: int, n: int, null_p: float = 0.5) -> float:
    """Two-sided exact p-value via float enumeration.

    At null_p = 0.5 every pmf value is an exact dyadic float for n <= 20,
    so equality comparisons are safe there.
    """
    pmf = [comb(n, i) * null_p**i * (1.0 - null_p) ** (n - i) for i in range(n + 1)]
    observed = pmf[k]
    return min(1.0, sum(m for m in pmf if m <= observed))
