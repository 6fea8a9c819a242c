"""Display rounding and small rendering helpers.

Every number shown to users goes through round_half_up so that values
such as 0.475 render as 0.48 regardless of how the nearest binary float
falls.  Python's round() uses banker's rounding and would disagree with
the reference tables on exact halves.
"""

from __future__ import annotations

import math

# Absorbs float representation error just below an exact half, e.g.
# 19/40 stored as 0.47499999999999997 must still round up to 0.48.
_EPS = 1e-9

UNDEFINED_MARK = "—"  # em dash shown where a value has no defined answer


def round_half_up(x: float, ndigits: int = 0) -> float:
    """Round to ndigits decimal places with halves going up.

    Intended for non-negative display values (proportions, percents).
    """
    scale = 10.0 ** ndigits
    return math.floor(x * scale + 0.5 + _EPS) / scale


def half_up_int(x: float) -> int:
    return int(round_half_up(x, 0))


def percent_points(p: float) -> int:
    """Express a proportion in [0, 1] as a whole percent."""
    return half_up_int(p * 100.0)


def fmt_proportion(p: float | None) -> str:
    if p is None:
        return UNDEFINED_MARK
    return f"{round_half_up(p, 2):.2f}"


def fmt_signed(points: int) -> str:
    return f"+{points}" if points >= 0 else str(points)
