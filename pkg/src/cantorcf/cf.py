"""Exact continued-fraction arithmetic on [0, 1].

Words are plain tuples of positive ints ``(a1, ..., an)`` standing for
``1/(a1 + 1/(a2 + ...))``. All values are :class:`fractions.Fraction`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import floor

TERMINATED = "terminated_rational"
EXHAUSTED = "precision_exhausted"
REACHED_MAX = "reached_max"


class DomainError(ValueError):
    pass


def check_word(word, allow_empty=False):
    word = tuple(int(a) for a in word)
    if not word and not allow_empty:
        raise DomainError("empty continued-fraction word")
    for a in word:
        if a < 1:
            raise DomainError(f"partial quotient {a} < 1")
    return word


def is_canonical(word):
    return len(word) == 1 or (len(word) > 1 and word[-1] >= 2)


def eval_finite(word) -> Fraction:
    """Value of ``[a1, ..., an]`` by folding the recursion from the right."""
    word = check_word(word)
    x = Fraction(1, word[-1])
    for a in reversed(word[:-1]):
        x = 1 / (a + x)
    return x


def rational_to_cf(x) -> tuple[int, ...]:
    """Canonical expansion of a rational in (0, 1] (Euclid's algorithm)."""
    x = Fraction(x)
    if not 0 < x <= 1:
        raise DomainError(f"{x} is not in (0, 1]")
    num, den = x.numerator, x.denominator
    digits = []
    while num:
        a, r = divmod(den, num)
        digits.append(a)
        num, den = r, num
    return tuple(digits)


def alternate_form(word) -> tuple[int, ...]:
    """The twin ``[..., an - 1, 1]`` of a word whose last digit exceeds 1."""
    word = check_word(word)
    if word[-1] == 1:
        raise DomainError("last digit is 1; no alternate form in this direction")
    return word[:-1] + (word[-1] - 1, 1)


def canonical_form(word) -> tuple[int, ...]:
    word = check_word(word)
    if len(word) > 1 and word[-1] == 1:
        return word[:-2] + (word[-2] + 1,)
    return word


def convergents(word) -> list[tuple[int, int]]:
    """Pairs ``(p_j, q_j)`` for ``j = -1, 0, 1, ..., n``.

    Entry ``i`` of the list holds index ``j = i - 1``.
    """
    word = check_word(word, allow_empty=True)
    table = [(1, 0), (0, 1)]
    (p2, q2), (p1, q1) = table
    for a in word:
        p2, q2, p1, q1 = p1, q1, a * p1 + p2, a * q1 + q2
        table.append((p1, q1))
    return table


def last_two(word):
    """``(p_n, q_n, p_{n-1}, q_{n-1})`` without building the whole table."""
    p2, q2, p1, q1 = 1, 0, 0, 1
    for a in word:
        p2, q2, p1, q1 = p1, q1, a * p1 + p2, a * q1 + q2
    return p1, q1, p2, q2


def tail_value(word, r) -> Fraction:
    """Exact value of ``[a1, ..., an, r]`` for a real tail ``r >= 1``."""
    word = check_word(word, allow_empty=True)
    r = Fraction(r)
    if r < 1:
        raise DomainError(f"tail {r} < 1")
    p, q, pp, qq = last_two(word)
    return (p * r + pp) / (q * r + qq)


@dataclass(frozen=True)
class Enclosure:
    """Closed rational interval ``[lo, hi]``."""

    lo: Fraction
    hi: Fraction

    @classmethod
    def point(cls, x):
        x = Fraction(x)
        return cls(x, x)

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    @property
    def exact(self):
        return self.lo == self.hi

    def __contains__(self, x):
        return self.lo <= x <= self.hi

    def disjoint(self, other):
        return self.hi < other.lo or other.hi < self.lo

    def contains_interval(self, other):
        return self.lo <= other.lo and other.hi <= self.hi


@dataclass(frozen=True)
class RankInterval:
    """The open interval of irrationals whose expansion starts with a given prefix."""

    rank: int
    lo: Fraction
    hi: Fraction
    measure: Fraction

    def __contains__(self, x):
        return self.lo < x < self.hi

    def closure(self):
        return Enclosure(self.lo, self.hi)

    def within(self, other):
        return other.lo <= self.lo and self.hi <= other.hi


def rank_interval(prefix) -> RankInterval:
    prefix = check_word(prefix)
    p, q, pp, qq = last_two(prefix)
    a, b = Fraction(p, q), Fraction(p + pp, q + qq)
    lo, hi = (a, b) if a < b else (b, a)
    return RankInterval(len(prefix), lo, hi, Fraction(1, q * (q + qq)))


def expand_certified(lo, hi, max_digits=None):
    """Partial quotients shared by every irrational in ``(lo, hi)``.

    Runs the Gauss map on both endpoints and stops as soon as they disagree.
    With ``lo == hi`` this is the plain expansion of a rational.
    Returns ``(digits, status)``.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if not 0 < lo <= hi <= 1:
        raise DomainError(f"need 0 < lo <= hi <= 1, got ({lo}, {hi})")
    if lo == hi:
        word = rational_to_cf(lo)
        if max_digits is not None and len(word) > max_digits:
            return word[:max_digits], REACHED_MAX
        return word, TERMINATED

    # Work on integer pairs so each step is a divmod: lo = a/b, hi = c/d.
    a, b = lo.numerator, lo.denominator
    c, d = hi.numerator, hi.denominator
    digits = []
    while max_digits is None or len(digits) < max_digits:
        if a == 0:
            return tuple(digits), EXHAUSTED
        k, rhi = divmod(d, c)
        # every x in (lo, hi) has floor(1/x) == k iff 1/lo <= k + 1
        if b > (k + 1) * a:
            return tuple(digits), EXHAUSTED
        digits.append(k)
        # (lo, hi) -> (1/hi - k, 1/lo - k)
        a, b, c, d = rhi, c, b - k * a, a
        if c == 0:
            return tuple(digits), EXHAUSTED
    return tuple(digits), REACHED_MAX


_WORD_RE = re.compile(r"^\[\s*(\d+(\s*,\s*\d+)*)?\s*\]$")


def format_word(word):
    return "[" + ",".join(str(a) for a in word) + "]"


def parse_word(text):
    m = _WORD_RE.match(text.strip())
    if not m:
        raise DomainError(f"not a continued-fraction word: {text!r}")
    body = m.group(1)
    return check_word(int(t) for t in body.split(",")) if body else ()


def format_rational(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a rational: {text!r}") from exc


def floor_inverse(x):
    """``floor(1/x)`` for rational ``x > 0``; the first digit law."""
    x = Fraction(x)
    return floor(1 / x)
