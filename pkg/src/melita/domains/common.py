"""Helpers shared by the built-in domains."""
from __future__ import annotations


def bin4(x: float, thresholds: tuple[float, float, float]) -> int:
    """Quantize into four bins; boundary values fall upward."""
    a, b, c = thresholds
    if not a < b < c:
        raise ValueError(f"thresholds must be strictly increasing, got {thresholds}")
    if x < a:
        return 0
    if x < b:
        return 1
    if x < c:
        return 2
    return 3
