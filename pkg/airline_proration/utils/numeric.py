"""
Numeric helpers shared across modules.

Tolerance comparison and whole-number rounding modes.
"""

from decimal import ROUND_HALF_EVEN, ROUND_HALF_UP, Decimal
from enum import Enum

DEFAULT_TOLERANCE = 1e-9


def approx_equal(lhs: float, rhs: float, tol: float = DEFAULT_TOLERANCE) -> bool:
    """
    Compare two reals with a tolerance relative to their magnitude.

    Two values are equal when |lhs - rhs| <= tol * max(1, |lhs|, |rhs|),
    so small values are compared absolutely and large ones relatively.

    Args:
        lhs: First value.
        rhs: Second value.
        tol: Relative tolerance (default: 1e-9).

    Returns:
        True if the values agree within tolerance.
    """
    scale = max(1.0, abs(lhs), abs(rhs))
    return abs(lhs - rhs) <= tol * scale


class RoundingMode(str, Enum):
    """Tie handling for "round to the nearest whole number"."""

    HALF_AWAY = "half_away"
    HALF_EVEN = "half_even"


def round_whole(value: float, mode: RoundingMode = RoundingMode.HALF_AWAY) -> int:
    """
    Round a real to the nearest integer.

    Args:
        value: Input real.
        mode: HALF_AWAY rounds ties away from zero (2.5 -> 3, -2.5 -> -3);
              HALF_EVEN rounds ties to the even neighbour (2.5 -> 2).

    Returns:
        Rounded integer. Ties are decided on the exact binary value, so
        0.49999999999999994 rounds to 0.
    """
    rounding = ROUND_HALF_EVEN if RoundingMode(mode) is RoundingMode.HALF_EVEN else ROUND_HALF_UP
    return int(Decimal(value).quantize(Decimal(1), rounding=rounding))
