"""Orthogonal range searching, offline dominance and their test harness."""

from ._orsearch import (
    ConfigError,
    ContractViolation,
    Range2D,
    bench,
    dominance_pairs,
    generate,
    maxima,
    range_report,
    rectangle_enclosure,
    verify,
)

__all__ = [
    "ConfigError",
    "ContractViolation",
    "Range2D",
    "bench",
    "dominance_pairs",
    "generate",
    "maxima",
    "range_report",
    "rectangle_enclosure",
    "verify",
]
