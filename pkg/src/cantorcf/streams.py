"""Digit sources: finite words, eventually periodic words, certified brackets."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd

import numpy as np

from .cf import (
    TERMINATED,
    DomainError,
    check_word,
    expand_certified,
    format_rational,
    format_word,
    parse_rational,
    parse_word,
)


class StreamExhausted(LookupError):
    """A digit was requested beyond what the stream can certify."""

    def __init__(self, available, requested):
        super().__init__(f"stream supplies {available} digits, digit {requested} requested")
        self.available = available
        self.requested = requested


class DigitStream:
    """Base class. Digits are 1-indexed; ``available`` is None when unbounded."""

    available: int | None = None

    @property
    def terminates(self) -> bool:
        """True when the stream encodes a rational that ends after ``available`` digits."""
        return False

    def _digit(self, j):
        raise NotImplementedError

    def digit(self, j):
        if j < 1:
            raise DomainError(f"digit index {j} < 1")
        if self.available is not None and j > self.available:
            raise StreamExhausted(self.available, j)
        return self._digit(j)

    def prefix(self, n):
        if self.available is not None and n > self.available:
            raise StreamExhausted(self.available, n)
        return tuple(self._digit(j) for j in range(1, n + 1))

    def supply(self, n):
        """Up to ``n`` leading digits, fewer if the stream runs out."""
        if self.available is not None:
            n = min(n, self.available)
        return self.prefix(n)


@dataclass(frozen=True)
class FiniteStream(DigitStream):
    word: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "word", check_word(self.word, allow_empty=True))

    @property
    def available(self):
        return len(self.word)

    @property
    def terminates(self):
        return True

    def _digit(self, j):
        return self.word[j - 1]

    def prefix(self, n):
        if n > len(self.word):
            raise StreamExhausted(len(self.word), n)
        return self.word[:n]

    def __str__(self):
        return format_word(self.word)


def _minimal_period(period):
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and period == period[:d] * (n // d):
            return period[:d]
    return period


@dataclass(frozen=True)
class PeriodicStream(DigitStream):
    """``preamble`` followed by ``period`` repeated forever.

    Stored in reduced form (shortest period, shortest preamble), so equal
    digit sequences compare equal.
    """

    preamble: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        pre = check_word(self.preamble, allow_empty=True)
        per = check_word(self.period)
        per = _minimal_period(per)
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = (per[-1],) + per[:-1]
        object.__setattr__(self, "preamble", pre)
        object.__setattr__(self, "period", per)

    def _digit(self, j):
        L = len(self.preamble)
        if j <= L:
            return self.preamble[j - 1]
        return self.period[(j - L - 1) % len(self.period)]

    def __str__(self):
        pre = ",".join(map(str, self.preamble))
        per = ",".join(map(str, self.period))
        return f"[{pre};({per})]"


@dataclass(frozen=True)
class CertifiedStream(DigitStream):
    """Digits common to every irrational in the open bracket ``(lo, hi)``."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if not 0 < lo < hi <= 1 and not (lo == hi and 0 < lo <= 1):
            raise DomainError(f"need 0 < lo < hi <= 1, got ({lo}, {hi})")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @cached_property
    def _expansion(self):
        return expand_certified(self.lo, self.hi)

    @property
    def status(self):
        return self._expansion[1]

    @property
    def available(self):
        return len(self._expansion[0])

    @property
    def terminates(self):
        return self.status == TERMINATED

    def _digit(self, j):
        return self._expansion[0][j - 1]

    def prefix(self, n):
        digits = self._expansion[0]
        if n > len(digits):
            raise StreamExhausted(len(digits), n)
        return digits[:n]

    def __str__(self):
        return f"{format_rational(self.lo)}:{format_rational(self.hi)}"


def random_bracket(seed, index, bits):
    """Uniform dyadic bracket ``(m/2^bits, (m+1)/2^bits)`` keyed by (seed, index)."""
    if bits < 1:
        raise DomainError("bits must be positive")
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(index,))
    words = ss.generate_state((bits + 31) // 32, dtype=np.uint32)
    m = int.from_bytes(words.astype("<u4").tobytes(), "little") >> (32 * len(words) - bits)
    # m = 0 would put lo on 0; probability 2^-bits, shift it off
    m = max(m, 1)
    return Fraction(m, 1 << bits), Fraction(m + 1, 1 << bits)


@dataclass(frozen=True)
class RandomStream(CertifiedStream):
    """Certified stream of a uniformly drawn point, reproducible from (seed, index)."""

    seed: int = 0
    index: int = 0
    bits: int = 64

    @classmethod
    def draw(cls, seed, index=0, bits=64):
        lo, hi = random_bracket(seed, index, bits)
        return cls(lo, hi, seed=seed, index=index, bits=bits)

    def __str__(self):
        return f"random:{self.seed}:{self.index}:{self.bits}"


@dataclass(frozen=True)
class SplitStream(DigitStream):
    """Odd- (parity 1) or even-indexed (parity 0) digits of a source."""

    source: DigitStream
    parity: int

    @property
    def available(self):
        n = self.source.available
        if n is None:
            return None
        return (n + 1) // 2 if self.parity else n // 2

    @property
    def terminates(self):
        return self.source.terminates

    def _digit(self, j):
        return self.source._digit(2 * j - 1 if self.parity else 2 * j)

    def prefix(self, n):
        if self.available is not None and n > self.available:
            raise StreamExhausted(self.available, n)
        need = 2 * n - 1 if self.parity else 2 * n
        digits = self.source.prefix(max(need, 0)) if n else ()
        return digits[0::2] if self.parity else digits[1::2]


@dataclass(frozen=True)
class InterleavedStream(DigitStream):
    """``c_{2k-1} = a_k``, ``c_{2k} = b_k``."""

    odd: DigitStream
    even: DigitStream

    @property
    def available(self):
        na, nb = self.odd.available, self.even.available
        if na is None and nb is None:
            return None
        if nb is None or (na is not None and na <= nb):
            return 2 * na
        return 2 * nb + 1

    @property
    def terminates(self):
        # an honest interleave only ends where both inputs end together
        na, nb = self.odd.available, self.even.available
        return (
            self.odd.terminates
            and self.even.terminates
            and (na == nb or na == nb + 1)
        )

    def _digit(self, j):
        k, r = divmod(j + 1, 2)
        return self.odd._digit(k) if r == 0 else self.even._digit(k)

    def prefix(self, n):
        if self.available is not None and n > self.available:
            raise StreamExhausted(self.available, n)
        a = self.odd.prefix((n + 1) // 2)
        b = self.even.prefix(n // 2)
        out = [0] * n
        out[0::2] = a
        out[1::2] = b
        return tuple(out)


@dataclass(frozen=True)
class PrefixedStream(DigitStream):
    """A finite head followed by another stream."""

    head: tuple[int, ...]
    tail: DigitStream = field(default_factory=lambda: FiniteStream(()))

    @property
    def available(self):
        n = self.tail.available
        return None if n is None else len(self.head) + n

    @property
    def terminates(self):
        return self.tail.terminates

    def _digit(self, j):
        h = len(self.head)
        return self.head[j - 1] if j <= h else self.tail._digit(j - h)

    def prefix(self, n):
        h = len(self.head)
        if n <= h:
            return tuple(self.head[:n])
        return tuple(self.head) + self.tail.prefix(n - h)


def periodic_split(stream: PeriodicStream):
    """Odd and even subsequences of an eventually periodic stream, kept periodic."""
    L, P = len(stream.preamble), len(stream.period)
    half = (L + 1) // 2
    sub = P if P % 2 else P // 2
    out = []
    for first in (1, 2):
        digits = [stream._digit(first + 2 * i) for i in range(half + sub)]
        out.append(PeriodicStream(tuple(digits[:half]), tuple(digits[half:])))
    return tuple(out)


def periodic_interleave(a: PeriodicStream, b: PeriodicStream):
    L = max(len(a.preamble), len(b.preamble))
    pa, pb = len(a.period), len(b.period)
    P = pa * pb // gcd(pa, pb)
    digits = []
    for k in range(1, L + P + 1):
        digits += [a._digit(k), b._digit(k)]
    return PeriodicStream(tuple(digits[: 2 * L]), tuple(digits[2 * L:]))


_PERIODIC_RE = re.compile(r"^\[\s*([\d,\s]*);\s*\(([\d,\s]+)\)\s*\]$")


def parse_stream(text) -> DigitStream:
    """Parse a stream descriptor.

    ``[2,1,3]`` finite, ``[2;(1,3)]`` periodic, ``lo:hi`` certified bracket,
    ``random:seed:index:bits`` a seeded uniform draw.
    """
    text = text.strip()
    m = _PERIODIC_RE.match(text)
    if m:
        pre = tuple(int(t) for t in m.group(1).split(",") if t.strip())
        per = tuple(int(t) for t in m.group(2).split(",") if t.strip())
        return PeriodicStream(pre, per)
    if text.startswith("["):
        return FiniteStream(parse_word(text))
    if text.startswith("random:"):
        try:
            _, seed, index, bits = text.split(":")
            return RandomStream.draw(int(seed), int(index), int(bits))
        except ValueError as exc:
            raise DomainError(f"bad random descriptor {text!r}") from exc
    if ":" in text:
        lo, hi = text.split(":", 1)
        return CertifiedStream(parse_rational(lo), parse_rational(hi))
    raise DomainError(f"unrecognised stream descriptor {text!r}")


def digit_at(stream: DigitStream, j: int) -> int:
    return stream.digit(j)
