"""Utility functions for numeric tolerance and JSON serialization."""

from .numeric import DEFAULT_TOLERANCE, RoundingMode, approx_equal, round_whole

__all__ = ["DEFAULT_TOLERANCE", "RoundingMode", "approx_equal", "round_whole"]
