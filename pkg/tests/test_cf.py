from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cantorcf import cf
from cantorcf.cf import (
    EXHAUSTED,
    REACHED_MAX,
    TERMINATED,
    DomainError,
    alternate_form,
    convergents,
    eval_finite,
    expand_certified,
    rank_interval,
    rational_to_cf,
    tail_value,
)

words = st.lists(st.integers(1, 10**6), min_size=1, max_size=50).map(tuple)
small_words = st.lists(st.integers(1, 20), min_size=1, max_size=25).map(tuple)


def recursive_eval(word):
    """Oracle: the defining recursion, literally."""
    if len(word) == 1:
        return Fraction(1, word[0])
    return 1 / (word[0] + recursive_eval(word[1:]))


@pytest.mark.parametrize("word, value", [
    ((1,), Fraction(1)),
    ((1, 2), Fraction(2, 3)),
    ((2, 1, 3), Fraction(4, 11)),
])
def test_eval_finite_examples(word, value):
    assert eval_finite(word) == value == recursive_eval(word)


@pytest.mark.parametrize("bad", [(), (0,), (2, 0, 1), (3, -1)])
def test_eval_finite_rejects(bad):
    with pytest.raises(DomainError):
        eval_finite(bad)


@pytest.mark.parametrize("x, word", [
    (Fraction(1, 2), (2,)),
    (Fraction(2, 3), (1, 2)),
    (Fraction(4, 11), (2, 1, 3)),
    (Fraction(1), (1,)),
])
def test_rational_to_cf_examples(x, word):
    assert rational_to_cf(x) == word


@pytest.mark.parametrize("bad", [Fraction(0), Fraction(-1, 3), Fraction(3, 2)])
def test_rational_to_cf_domain(bad):
    with pytest.raises(DomainError):
        rational_to_cf(bad)


def test_roundtrip_all_small_denominators():
    for q in range(1, 201):
        for p in range(1, q + 1):
            x = Fraction(p, q)
            w = rational_to_cf(x)
            assert cf.is_canonical(w)
            assert eval_finite(w) == x


@pytest.mark.parametrize("word, twin", [
    ((2,), (1, 1)),
    ((1, 2), (1, 1, 1)),
    ((2, 1, 3), (2, 1, 2, 1)),
])
def test_alternate_form(word, twin):
    assert alternate_form(word) == twin
    assert eval_finite(twin) == eval_finite(word)
    assert cf.canonical_form(twin) == word


def test_alternate_form_needs_last_digit_above_one():
    with pytest.raises(DomainError):
        alternate_form((2, 1))


def test_convergent_table_examples():
    assert convergents((2, 1, 3)) == [(1, 0), (0, 1), (1, 2), (1, 3), (4, 11)]
    assert [q for _, q in convergents((1,) * 5)][1:] == [1, 1, 2, 3, 5, 8]
    (p1, q1), (p2, q2) = convergents((2, 1, 3))[2:4]
    assert q2 * p1 - p2 * q1 == 1


@given(words)
def test_convergent_identities(w):
    t = convergents(w)
    assert len(t) == len(w) + 2
    p = [pq[0] for pq in t]  # p[j + 1] is p_j
    q = [pq[1] for pq in t]
    lo, hi = 1, 1
    for j in range(1, len(w) + 1):
        a = w[j - 1]
        assert p[j + 1] == a * p[j] + p[j - 1]
        assert q[j + 1] * p[j] - p[j + 1] * q[j] == (-1) ** j
        if j >= 2:
            assert q[j + 1] * p[j - 1] - p[j + 1] * q[j - 1] == (-1) ** (j - 1) * a
            gap = Fraction(p[j], q[j]) - Fraction(p[j + 1], q[j + 1])
            assert gap == Fraction((-1) ** j, q[j + 1] * q[j])
        lo, hi = lo * a, hi * (a + 1)
        assert lo <= q[j + 1] <= hi
    assert eval_finite(w) == Fraction(p[-1], q[-1])


@given(small_words)
def test_even_convergents_rise_odd_fall(w):
    vals = [Fraction(p, q) for p, q in convergents(w)[2:]]
    even = vals[1::2]
    odd = vals[0::2]
    assert all(u < v for u, v in zip(even, even[1:]))
    assert all(u > v for u, v in zip(odd, odd[1:]))
    if even:
        assert max(even) < min(odd)


@pytest.mark.parametrize("word, r, value", [
    ((2,), Fraction(2), Fraction(2, 5)),
    ((1,), Fraction(3, 2), Fraction(3, 5)),
    ((2, 1, 3), Fraction(1), Fraction(5, 14)),
])
def test_tail_value(word, r, value):
    assert tail_value(word, r) == value
    if r.denominator == 1:
        assert value == recursive_eval(word + (int(r),))


def test_tail_value_routes_agree():
    # appending r = 1 is the same as bumping the last digit
    assert tail_value((2, 1, 3), 1) == eval_finite((2, 1, 4))
    assert tail_value((1,), Fraction(3, 2)) == 1 / (1 + Fraction(2, 3))


def test_tail_value_rejects_small_tail():
    with pytest.raises(DomainError):
        tail_value((2,), Fraction(1, 2))


@given(small_words, st.fractions(min_value=1, max_value=10**4))
def test_tail_value_matches_recursion(w, r):
    x = 1 / r
    for a in reversed(w):
        x = 1 / (a + x)
    assert tail_value(w, r) == x


def test_rank_interval_examples():
    r = rank_interval((1, 1))
    assert (r.lo, r.hi, r.measure) == (Fraction(1, 2), Fraction(2, 3), Fraction(1, 6))
    r = rank_interval((2,))
    assert (r.lo, r.hi, r.measure) == (Fraction(1, 3), Fraction(1, 2), Fraction(1, 6))
    assert rank_interval((1, 1)).within(rank_interval((1,)))
    # open: endpoints excluded
    assert Fraction(1, 2) not in r and Fraction(2, 5) in r


@given(small_words, st.integers(1, 50))
def test_rank_interval_nesting_and_measure(w, k):
    r = rank_interval(w)
    p, q, pp, qq = cf.last_two(w)
    assert r.measure == r.hi - r.lo == Fraction(1, q * (q + qq))
    assert r.measure <= Fraction(1, q * q) <= 1
    assert rank_interval(w + (k,)).within(r)


@given(small_words, st.integers(1, 10**6))
def test_rank_interval_contains_extensions(w, k):
    # every [w, r] with r > 1 lies in the open rank interval
    assert tail_value(w, k + Fraction(1, 3)) in rank_interval(w)


def common_prefix_oracle(lo, hi, word):
    """Longest m such that the closed rank-m interval of ``word`` covers [lo, hi]."""
    best = 0
    for m in range(1, len(word) + 1):
        r = rank_interval(word[:m])
        if r.lo <= lo and hi <= r.hi:
            best = m
    return best


def test_expand_certified_rational():
    assert expand_certified(Fraction(2, 3), Fraction(2, 3), 10) == ((1, 2), TERMINATED)
    assert expand_certified(Fraction(4, 11), Fraction(4, 11), 2) == ((2, 1), REACHED_MAX)


def test_expand_certified_fibonacci_bracket():
    lo, hi = Fraction(987, 1597), Fraction(610, 987)
    digits, status = expand_certified(lo, hi, 20)
    assert status == EXHAUSTED
    assert digits == (1,) * 15
    assert common_prefix_oracle(lo, hi, (1,) * 30) == 15


def test_expand_certified_digit_law():
    lo = Fraction(1, 3) + Fraction(1, 10**6)
    digits, status = expand_certified(lo, lo + Fraction(1, 10**6), 5)
    assert digits[0] == 2
    # just above 1/3 the third digit is ~1/(9 eps) and varies across the bracket
    assert digits == (2, 1) and status == EXHAUSTED
    assert common_prefix_oracle(lo, lo + Fraction(1, 10**6), (2, 1, 10**5)) == 2


def test_expand_certified_golden_bracket():
    s = isqrt(5 * 10**80)
    lo = Fraction((s - 10**40) // 2, 10**40)
    digits, _ = expand_certified(lo, lo + Fraction(1, 10**40))
    assert digits[4] == 1
    assert set(digits) == {1}
    assert len(digits) == common_prefix_oracle(lo, lo + Fraction(1, 10**40), (1,) * 120)


@pytest.mark.parametrize("lo, hi", [(Fraction(0), Fraction(1, 2)), (Fraction(1, 2), Fraction(1, 3)),
                                    (Fraction(1, 2), Fraction(3, 2))])
def test_expand_certified_domain(lo, hi):
    with pytest.raises(DomainError):
        expand_certified(lo, hi, 5)


@settings(max_examples=300)
@given(st.integers(2, 10**12), st.integers(1, 10**6), st.integers(1, 10**4), st.integers(1, 10**4))
def test_expand_certified_agrees_with_inner_rationals(den, width, u, v):
    lo = Fraction(1, den) + Fraction(1, 7 * den)
    hi = min(lo + Fraction(width, den * den), Fraction(1))
    digits, _ = expand_certified(lo, hi)
    assert common_prefix_oracle(lo, hi, digits) == len(digits)
    inner = lo + (hi - lo) * Fraction(u, u + v)
    w = rational_to_cf(inner)
    # a rational strictly inside never contradicts a certified digit
    assert w[:len(digits)] == digits[:len(w)]


def test_text_forms():
    assert cf.format_word((2, 1, 3)) == "[2,1,3]"
    assert cf.parse_word("[2, 1, 3]") == (2, 1, 3)
    assert cf.format_rational(Fraction(6, 8)) == "3/4"
    assert cf.parse_rational("3/4") == Fraction(3, 4)
    with pytest.raises(DomainError):
        cf.parse_word("[2,x]")
