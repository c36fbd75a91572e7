"""Hölder bounds for the two components of Cantor's map, and digit statistics.

Logs and ratios are floats; everything underneath them (digits, interval
endpoints, differences) stays exact until the final ``log``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cantor import split
from .cf import DomainError, Enclosure, canonical_form, rank_interval
from .streams import DigitStream, FiniteStream, PeriodicStream, StreamExhausted

LOG2 = math.log(2)


class PrecisionError(ArithmeticError):
    """Enclosures could not be separated or tightened within the depth budget."""


def _log(x) -> float:
    """Natural log of a positive int or Fraction without float overflow."""
    if isinstance(x, int):
        return math.log(x)
    return math.log(x.numerator) - math.log(x.denominator)


@dataclass(frozen=True)
class HolderBand:
    component: str
    n: int
    lower: float
    upper: float  # math.inf when the bound is vacuous
    c1: float
    c2: float

    @property
    def vacuous(self):
        return math.isinf(self.upper)

    def __contains__(self, slope):
        return self.lower <= slope <= self.upper

    def to_json(self):
        return {
            "component": self.component,
            "n": self.n,
            "lower": self.lower,
            "upper": "inf" if self.vacuous else self.upper,
            "c1": self.c1,
            "c2": self.c2,
        }


def _ratio_term(a):
    # log((a + 2)/(a + 1)), exact argument
    return _log(Fraction(a + 2, a + 1))


def band_digits_needed(n, component):
    if component == "f1":
        return 2 * math.ceil(n / 2) + 5
    return 2 * (n // 2) + 6


def holder_band(a: DigitStream, n: int, component: str) -> HolderBand:
    """Two-sided bound on log|f_i(x) - f_i(y)| / log|x - y| for y in I_n(x) minus I_{n+1}(x)."""
    if component not in ("f1", "f2"):
        raise DomainError(f"unknown component {component!r}")
    if n < 1:
        raise DomainError("n must be >= 1")
    digits = (None,) + a.prefix(band_digits_needed(n, component))

    c1 = LOG2 / 2 + max(_ratio_term(digits[n + 2]), _ratio_term(digits[n + 3]))
    denom_lower = sum(_log(digits[j] + 1) for j in range(1, n + 4)) / n + c1 / n

    if component == "f1":
        m = math.ceil(n / 2)
        idx = [2 * j - 1 for j in range(1, m + 1)]
        idx_up = [2 * j - 1 for j in range(1, m + 4)]
        c2 = LOG2 / 2 + max(_ratio_term(digits[2 * m + 3]), _ratio_term(digits[2 * m + 5]))
        c2_weight = 1 / (2 * n)
    else:
        m = n // 2
        idx = [2 * j for j in range(1, m + 1)]
        idx_up = [2 * j for j in range(1, m + 4)]
        c2 = LOG2 / 2 + max(_ratio_term(digits[2 * m + 4]), _ratio_term(digits[2 * m + 6]))
        c2_weight = 1 / n

    lower = sum(_log(digits[j]) for j in idx) / n / denom_lower

    if all(digits[j] == 1 for j in range(1, n + 1)):
        upper = math.inf
    else:
        num_upper = sum(_log(digits[j] + 1) for j in idx_up) / n + c2 * c2_weight
        upper = num_upper / (sum(_log(digits[j]) for j in range(1, n + 1)) / n)

    return HolderBand(component, n, lower, upper, c1, c2)


def holder_band_f1(a: DigitStream, n: int) -> HolderBand:
    return holder_band(a, n, "f1")


def holder_band_f2(a: DigitStream, n: int) -> HolderBand:
    return holder_band(a, n, "f2")


@dataclass(frozen=True)
class SlopeSample:
    n: int
    slope: float
    x_desc: str
    y_desc: str
    enclosure_width_bound: float


def _component_prefix(digits, component):
    return digits[0::2] if component == "f1" else digits[1::2]


def _provably_equal(u: DigitStream, v: DigitStream):
    # only normalized stream types can be compared without evaluating
    if isinstance(u, PeriodicStream) and isinstance(v, PeriodicStream):
        return u == v
    if isinstance(u, FiniteStream) and isinstance(v, FiniteStream):
        return canonical_form(u.word) == canonical_form(v.word)
    return False


def _abs_diff(u: Enclosure, v: Enclosure):
    """Enclosure of |u - v|, or None if u and v overlap."""
    if u.hi < v.lo:
        return Enclosure(v.lo - u.hi, v.hi - u.lo)
    if v.hi < u.lo:
        return Enclosure(u.lo - v.hi, u.hi - v.lo)
    return None


def slope_sample(x: DigitStream, y: DigitStream, n: int, component: str,
                 precision: float = 1e-9, max_depth: int = 4096) -> SlopeSample:
    """log|f_i(x) - f_i(y)| / log|x - y| for x, y sharing exactly n digits.

    Depth doubles until the slope's enclosure is narrower than ``precision``.
    When the first differing digit falls outside the component, f_i(x) can
    equal f_i(y); if that is provable the log-ratio is +inf and returned as such.
    """
    if n < 1:
        raise DomainError("x and y must share at least one digit")
    if component not in ("f1", "f2"):
        raise DomainError(f"unknown component {component!r}")
    xs, ys = x.prefix(n + 1), y.prefix(n + 1)
    if xs[:n] != ys[:n] or xs[n] == ys[n]:
        raise DomainError(f"x and y do not share exactly {n} leading digits")
    attr = "odd_stream" if component == "f1" else "even_stream"
    if _provably_equal(getattr(split(x), attr), getattr(split(y), attr)):
        return SlopeSample(n, math.inf, str(x), str(y), 0.0)

    depth = n + 16
    while True:
        cap = [s.available for s in (x, y) if s.available is not None]
        final = bool(cap) and depth >= min(cap)
        if final:
            depth = min(cap)
        xd, yd = x.prefix(depth), y.prefix(depth)
        dx = _abs_diff(rank_interval(xd).closure(), rank_interval(yd).closure())
        fx, fy = _component_prefix(xd, component), _component_prefix(yd, component)
        df = _abs_diff(rank_interval(fx).closure(), rank_interval(fy).closure())
        if dx is not None and df is not None and dx.lo > 0 and df.lo > 0 and dx.hi < 1:
            # both logs negative: slope = A/B with A = -log|df|, B = -log|dx|
            a_lo, a_hi = -_log(df.hi), -_log(df.lo)
            b_lo, b_hi = -_log(dx.hi), -_log(dx.lo)
            s_lo, s_hi = a_lo / b_hi, a_hi / b_lo
            if s_hi - s_lo <= precision:
                return SlopeSample(n, (s_lo + s_hi) / 2, str(x), str(y), s_hi - s_lo)
        if final or depth >= max_depth:
            raise PrecisionError(
                f"slope not resolved to {precision} with {depth} digits; evaluate deeper"
            )
        depth = min(2 * depth, max_depth)


@dataclass(frozen=True)
class KhintchineResult:
    k: int
    log_value: float
    truncation_j: int
    tail_bound: float
    converged: bool = True


def _khintchine_tail(k, J):
    """Bracket of sum_{j > J} log(j+k)/log 2 * log1p(1/(j(j+2))).

    Terms decrease for j >= 2, so the sum lies between the integrals from
    J+1 and from J. Above: log1p(u) <= u <= 1/s^2. Below: log1p(u) >= u - u^2/2,
    u >= 1/(s+1)^2, u^2 <= 1/s^4, log(s+k) >= log s.
    """
    a = J
    if k == 0:
        upper = (math.log(a) + 1) / a
    else:
        upper = math.log(a + 1) / a + math.log1p(1 / a)
    b = J + 1
    lower = (
        math.log(b) / (b + 1)
        + math.log1p(1 / b)
        - (3 * math.log(b) + 1) / (9 * b**3) / 2
    )
    return lower / LOG2, upper / LOG2


def khintchine_truncated(k: int, J: int) -> KhintchineResult:
    """Partial product up to J plus a rigorous bracket on the rest."""
    if J < 16:
        raise DomainError("truncation must be >= 16 for the tail bracket")
    partial = math.fsum(
        math.log(j + k) / LOG2 * math.log1p(1 / (j * (j + 2))) for j in range(1, J + 1)
    )
    t_lo, t_hi = _khintchine_tail(k, J)
    # allowance for float rounding in the summed terms
    bound = (t_hi - t_lo) + J * 4e-16
    return KhintchineResult(k, partial + t_lo, J, bound)


def khintchine(k: int = 0, target_tail: float = 1e-7, max_terms: int = 1 << 24) -> KhintchineResult:
    """log K_k = sum_j log(j+k)/log 2 * log(1 + 1/(j(j+2))).

    The reported value is the partial sum plus the lower tail estimate; the
    true value lies in ``[log_value, log_value + tail_bound]``.
    """
    if k not in (0, 1):
        raise DomainError("k must be 0 or 1")
    if target_tail <= 0:
        raise DomainError("target_tail must be positive")
    J = 64
    while True:
        res = khintchine_truncated(k, J)
        if res.tail_bound <= target_tail:
            return res
        if 2 * J > max_terms:
            return KhintchineResult(k, res.log_value, J, res.tail_bound, converged=False)
        J *= 2


def ae_band():
    """Almost-everywhere range (log K0 / 2 log K1, log K1 / 2 log K0) of both Hölder exponents."""
    k0 = khintchine(0, 1e-7).log_value
    k1 = khintchine(1, 1e-7).log_value
    return k0 / (2 * k1), k1 / (2 * k0)


@dataclass(frozen=True)
class ErgodicReport:
    depth: int
    k: int
    mean_all: float
    mean_even: float
    mean_odd: float

    def csv_row(self):
        return f"{self.depth},{self.k},{self.mean_all!r},{self.mean_even!r},{self.mean_odd!r}"


ERGODIC_CSV_HEADER = "depth,k,mean_all,mean_even,mean_odd"


def ergodic_averages(a: DigitStream, n: int, k: int = 0) -> ErgodicReport:
    if n < 1:
        raise DomainError("n must be >= 1")
    digits = a.prefix(2 * n)
    logs = [_log(d + k) for d in digits]
    return ErgodicReport(
        n,
        k,
        math.fsum(logs[:n]) / n,
        math.fsum(logs[1::2]) / n,
        math.fsum(logs[0::2]) / n,
    )


def multifractal_example(n: int) -> FiniteStream:
    """a_j = 2^j for even j and 1 for odd j, first n digits."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return FiniteStream(tuple(1 << j if j % 2 == 0 else 1 for j in range(1, n + 1)))


__all__ = [
    "HolderBand",
    "KhintchineResult",
    "ErgodicReport",
    "PrecisionError",
    "SlopeSample",
    "StreamExhausted",
    "ae_band",
    "ergodic_averages",
    "holder_band",
    "holder_band_f1",
    "holder_band_f2",
    "khintchine",
    "khintchine_truncated",
    "multifractal_example",
    "slope_sample",
]
