import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cantorcf.cantor import (
    discontinuity_witness,
    forward_value,
    image_intervals,
    interleave,
    inverse_digits,
    split,
)
from cantorcf.cf import DomainError, rank_interval, rational_to_cf
from cantorcf.regularity import multifractal_example
from cantorcf.streams import (
    FiniteStream,
    PeriodicStream,
    RandomStream,
    StreamExhausted,
    parse_stream,
)

ONES = PeriodicStream((), (1,))
PHI = (math.sqrt(5) - 1) / 2
SQRT2_M1 = math.sqrt(2) - 1

words = st.lists(st.integers(1, 10**6), min_size=0, max_size=60).map(tuple)
periodics = st.builds(
    PeriodicStream,
    st.lists(st.integers(1, 9), max_size=7).map(tuple),
    st.lists(st.integers(1, 9), min_size=1, max_size=6).map(tuple),
)


def test_split_examples():
    pair = split(FiniteStream(tuple(range(1, 13))))
    assert pair.odd_stream.prefix(6) == (1, 3, 5, 7, 9, 11)
    assert pair.even_stream.prefix(6) == (2, 4, 6, 8, 10, 12)
    pair = split(ONES)
    assert pair.odd_stream == ONES and pair.even_stream == ONES


def test_split_multifractal_stream():
    pair = split(multifractal_example(12))
    assert pair.odd_stream.prefix(6) == (1,) * 6
    assert pair.even_stream.prefix(6) == (4, 16, 64, 256, 1024, 4096)


def test_interleave_examples():
    c = interleave(FiniteStream((1, 3, 5)), FiniteStream((2, 4, 6)))
    assert c.prefix(6) == (1, 2, 3, 4, 5, 6)
    assert interleave(parse_stream("[;(1)]"), parse_stream("[;(2)]")) == parse_stream("[;(1,2)]")
    assert inverse_digits(ONES, ONES) == ONES


def test_split_exhaustion():
    pair = split(RandomStream.draw(1, 0, 64))
    n = pair.odd_stream.available
    with pytest.raises(StreamExhausted):
        pair.odd_stream.prefix(n + 1)


@given(words, words)
def test_digit_level_bijection(a, b):
    pair = split(FiniteStream(a))
    assert interleave(pair.odd_stream, pair.even_stream).prefix(len(a)) == a
    m = min(len(a), len(b))
    back = split(interleave(FiniteStream(a[:m]), FiniteStream(b[:m])))
    assert back.odd_stream.prefix(m) == a[:m]
    assert back.even_stream.prefix(m) == b[:m]


def test_bijection_on_long_random_streams():
    s = RandomStream.draw(11, 0, 8192)
    pair = split(s)
    back = interleave(pair.odd_stream, pair.even_stream)
    n = s.available
    assert n > 2000
    assert back.prefix(n) == s.prefix(n)


@given(periodics)
def test_split_keeps_periodicity(x):
    pair = split(x)
    assert isinstance(pair.odd_stream, PeriodicStream)
    assert isinstance(pair.even_stream, PeriodicStream)
    assert pair.odd_stream.prefix(40) == x.prefix(80)[0::2]
    assert pair.even_stream.prefix(40) == x.prefix(80)[1::2]
    assert interleave(pair.odd_stream, pair.even_stream) == x


@given(periodics, periodics)
def test_interleave_keeps_periodicity(a, b):
    c = interleave(a, b)
    assert isinstance(c, PeriodicStream)
    digits = c.prefix(60)
    assert digits[0::2] == a.prefix(30) and digits[1::2] == b.prefix(30)


def golden_fraction(decimals=40):
    return Fraction((math.isqrt(5 * 10 ** (2 * decimals)) - 10**decimals) // 2, 10**decimals)


def test_forward_value_golden():
    f1, f2 = forward_value(ONES, 40)
    g = golden_fraction()
    # g sits within 1e-40 of the golden ratio, far inside the enclosure
    assert g in f1 and g in f2
    assert f1.width < 1e-12 and f2.width < 1e-12


def test_forward_value_one_two():
    f1, f2 = forward_value(parse_stream("[;(1,2)]"), 40)
    assert f1.width < 1e-12 and f2.width < 1e-12
    assert abs(float(f1.mid) - PHI) < 1e-12
    assert abs(float(f2.mid) - SQRT2_M1) < 1e-12


def test_forward_value_reports_reachable_depth():
    with pytest.raises(StreamExhausted) as info:
        forward_value(FiniteStream((1,) * 9), 5)
    assert info.value.available == 4


@given(st.lists(st.integers(1, 50), min_size=2, max_size=40).map(tuple))
def test_rank_functoriality(prefix):
    n = len(prefix)
    f1, f2 = image_intervals(prefix)
    r1 = rank_interval(prefix[0::2])
    r2 = rank_interval(prefix[1::2])
    assert r1.rank == math.ceil(n / 2) and r2.rank == n // 2
    assert (f1.lo, f1.hi) == (r1.lo, r1.hi)
    assert (f2.lo, f2.hi) == (r2.lo, r2.hi)


@given(words.filter(lambda w: len(w) >= 8), st.integers(1, 4))
def test_continuity_shadow(w, m):
    # streams sharing 2m digits have intersecting depth-m images
    other = w[:2 * m] + tuple(reversed(w[2 * m:]))
    a1, a2 = forward_value(FiniteStream(w), m)
    b1, b2 = forward_value(FiniteStream(other), m)
    assert not a1.disjoint(b1) and not a2.disjoint(b2)


def test_enclosure_width_shrinks():
    widths = [forward_value(ONES, m)[0].width for m in (5, 10, 20, 40)]
    assert widths == sorted(widths, reverse=True)
    for m, wd in zip((5, 10, 20, 40), widths):
        assert wd == rank_interval((1,) * m).measure


# --- discontinuity witnesses -------------------------------------------------

def test_witness_at_one_half():
    w = discontinuity_witness(Fraction(1, 2), ONES)
    c1, c2 = w.limit_along_canonical
    a1, a2 = w.limit_along_alternate
    # (2, j, 1, 1, ...) -> ([2, 1, 1, ...], 0)
    assert c2.exact and c2.lo == 0
    assert abs(float(c1.mid) - (3 - math.sqrt(5)) / 2) < 1e-15
    # (1, 1, j, 1, ...) -> ([1], [1, 1, ...])
    assert a1.exact and a1.lo == 1
    assert abs(float(a2.mid) - PHI) < 1e-15
    assert c1.disjoint(a1) and c2.disjoint(a2)
    assert w.differs


def witness_oracle(x, tail_digits, j=10**9, depth=200):
    """Evaluate f along both sequences at one huge j, numerically."""
    a = rational_to_cf(x)
    alt = a[:-1] + (a[-1] - 1, 1)
    out = []
    for head in (a, alt):
        digits = head + (j,) + tail_digits[:depth]
        pair = split(FiniteStream(digits))
        vals = []
        for comp in (pair.odd_stream, pair.even_stream):
            d = comp.prefix(comp.available)
            vals.append(float(rank_interval(d).closure().mid) if d else 0.0)
        out.append(tuple(vals))
    return out


@pytest.mark.parametrize("x", [Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)])
def test_witness_examples_against_numeric_limit(x):
    w = discontinuity_witness(x, ONES)
    along, alt = witness_oracle(x, (1,) * 400)
    for enc, v in zip(w.limit_along_canonical, along):
        assert abs(float(enc.mid) - v) < 1e-8
    for enc, v in zip(w.limit_along_alternate, alt):
        assert abs(float(enc.mid) - v) < 1e-8
    assert w.differs


def test_witness_with_finite_tail_is_exact():
    w = discontinuity_witness(Fraction(2, 3), FiniteStream((3, 4)))
    assert all(e.exact for e in w.limit_along_canonical + w.limit_along_alternate)
    assert w.differs


def test_witness_json_schema():
    j = discontinuity_witness(Fraction(1, 3), ONES).to_json()
    assert set(j) == {"rational", "canonical_word", "limit_canonical", "limit_alternate"}
    assert j["rational"] == "1/3" and j["canonical_word"] == "[3]"
    assert j["limit_canonical"][1] == "0/1"


@pytest.mark.parametrize("x", [Fraction(0), Fraction(1), Fraction(5, 4)])
def test_witness_domain(x):
    with pytest.raises(DomainError):
        discontinuity_witness(x, ONES)


def test_witness_all_small_denominators():
    for q in range(2, 51):
        for p in range(1, q):
            if math.gcd(p, q) == 1:
                assert discontinuity_witness(Fraction(p, q), ONES).differs
