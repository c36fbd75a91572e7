"""Distances on sequence space, reported as exact enclosures."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .streams import DigitStream


def distance_d(a: DigitStream, b: DigitStream, depth: int):
    """Bracket ``(lower, upper)`` of ``sum_j 2^-j |a_j-b_j| / (|a_j-b_j|+1)``.

    ``lower`` is the exact partial sum over ``j <= depth``; every later term
    is below ``2^-j``, so the tail adds less than ``2^-depth``.
    """
    xs, ys = a.prefix(depth), b.prefix(depth)
    lower = Fraction(0)
    for j, (x, y) in enumerate(zip(xs, ys), start=1):
        diff = abs(x - y)
        if diff:
            lower += Fraction(diff, (diff + 1) << j)
    return lower, lower + Fraction(1, 1 << depth)


@dataclass(frozen=True)
class UltrametricDistance:
    """``2^-m`` for a common prefix of length ``m``; ``exact=False`` means only ``<= bound``."""

    bound: Fraction
    exact: bool

    def __str__(self):
        return str(self.bound) if self.exact else f"<= {self.bound}"


def common_prefix_length(a: DigitStream, b: DigitStream, depth: int):
    xs, ys = a.prefix(depth), b.prefix(depth)
    for m, (x, y) in enumerate(zip(xs, ys)):
        if x != y:
            return m
    return depth


def distance_dprime(a: DigitStream, b: DigitStream, depth: int) -> UltrametricDistance:
    m = common_prefix_length(a, b, depth)
    return UltrametricDistance(Fraction(1, 1 << m), exact=m < depth)
