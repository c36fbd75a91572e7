"""Cantor's bijection x = [a1, a2, ...] -> ([a1, a3, ...], [a2, a4, ...])."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cf import (
    DomainError,
    Enclosure,
    eval_finite,
    format_rational,
    format_word,
    rank_interval,
    rational_to_cf,
)
from .streams import (
    DigitStream,
    FiniteStream,
    InterleavedStream,
    PeriodicStream,
    PrefixedStream,
    SplitStream,
    StreamExhausted,
    periodic_interleave,
    periodic_split,
)

# digits used to enclose an infinite limit coordinate in a witness
WITNESS_DEPTH = 64


@dataclass(frozen=True)
class SplitPair:
    odd_stream: DigitStream
    even_stream: DigitStream


def split(a: DigitStream) -> SplitPair:
    if isinstance(a, PeriodicStream):
        return SplitPair(*periodic_split(a))
    if isinstance(a, FiniteStream):
        return SplitPair(FiniteStream(a.word[0::2]), FiniteStream(a.word[1::2]))
    if isinstance(a, InterleavedStream):
        return SplitPair(a.odd, a.even)
    return SplitPair(SplitStream(a, 1), SplitStream(a, 0))


def interleave(a: DigitStream, b: DigitStream) -> DigitStream:
    if isinstance(a, PeriodicStream) and isinstance(b, PeriodicStream):
        return periodic_interleave(a, b)
    if isinstance(a, SplitStream) and isinstance(b, SplitStream):
        if a.source is b.source and (a.parity, b.parity) == (1, 0):
            return a.source
    c = InterleavedStream(a, b)
    if a.available is not None and b.available is not None:
        return FiniteStream(c.prefix(c.available))
    return c


def inverse_digits(y1: DigitStream, y2: DigitStream) -> DigitStream:
    """Digits of the unique x with f(x) = (value(y1), value(y2))."""
    return interleave(y1, y2)


def image_intervals(prefix):
    """Rank intervals containing f1(x) and f2(x) for every x in I_n(prefix).

    f1 gets rank ceil(n/2), f2 gets rank floor(n/2); a component with no
    digits yet is only known to lie in (0, 1).
    """
    prefix = tuple(prefix)
    odd, even = prefix[0::2], prefix[1::2]
    return (
        rank_interval(odd).closure() if odd else Enclosure(Fraction(0), Fraction(1)),
        rank_interval(even).closure() if even else Enclosure(Fraction(0), Fraction(1)),
    )


def forward_value(x_digits: DigitStream, depth: int):
    """Enclosures of (f1(x), f2(x)) from ``depth`` digits of each component."""
    if depth < 1:
        raise DomainError("depth must be >= 1")
    try:
        prefix = x_digits.prefix(2 * depth)
    except StreamExhausted as exc:
        raise StreamExhausted(exc.available // 2, depth) from exc
    return image_intervals(prefix)


def stream_enclosure(stream: DigitStream, depth: int) -> Enclosure:
    """Closed enclosure of a stream's value from at most ``depth`` digits.

    Exact when the stream terminates within reach.
    """
    n = stream.available
    if stream.terminates and n is not None and n <= depth:
        return Enclosure.point(eval_finite(stream.prefix(n)) if n else 0)
    digits = stream.supply(depth)
    if not digits:
        return Enclosure(Fraction(0), Fraction(1))
    return rank_interval(digits).closure()


@dataclass(frozen=True)
class DiscontinuityWitness:
    rational_point: Fraction
    canonical_word: tuple[int, ...]
    limit_along_canonical: tuple[Enclosure, Enclosure]
    limit_along_alternate: tuple[Enclosure, Enclosure]

    @property
    def differs(self):
        return any(
            u.disjoint(v)
            for u, v in zip(self.limit_along_canonical, self.limit_along_alternate)
        )

    def to_json(self):
        return {
            "rational": format_rational(self.rational_point),
            "canonical_word": format_word(self.canonical_word),
            "limit_canonical": [_fmt_enclosure(e) for e in self.limit_along_canonical],
            "limit_alternate": [_fmt_enclosure(e) for e in self.limit_along_alternate],
        }


def _fmt_enclosure(e: Enclosure):
    if e.exact:
        return format_rational(e.lo)
    return f"{format_rational(e.lo)}..{format_rational(e.hi)}"


def _limit_image(head, tail: DigitStream):
    """lim_{c -> inf} f applied to digits (head, c, tail...).

    The component holding the exploding digit c is cut off just before it;
    the other component keeps its share of head followed by every other
    tail digit.
    """
    e = len(head) + 1
    cut = head[0::2] if e % 2 == 1 else head[1::2]
    kept_head = head[1::2] if e % 2 == 1 else head[0::2]
    cut_value = Enclosure.point(eval_finite(cut) if cut else 0)
    # tail digit i sits at position e + i; the kept parity takes odd i
    kept = PrefixedStream(tuple(kept_head), SplitStream(tail, 1))
    kept_value = stream_enclosure(kept, len(kept_head) + WITNESS_DEPTH)
    if e % 2 == 1:
        return cut_value, kept_value
    return kept_value, cut_value


def discontinuity_witness(x, tail: DigitStream) -> DiscontinuityWitness:
    """Two sequences tending to a rational x whose images under f have different limits.

    Along ``[a1..ak, j + [b]]`` and ``[a1..ak - 1, 1, j + [b]]`` with j -> inf.
    """
    x = Fraction(x)
    if not 0 < x < 1:
        raise DomainError(f"{x} is not a rational in (0, 1)")
    word = rational_to_cf(x)
    alt = word[:-1] + (word[-1] - 1, 1)
    return DiscontinuityWitness(
        x, word, _limit_image(word, tail), _limit_image(alt, tail)
    )
