"""Seeded sampling, figure data and batch verification suites."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from . import cf
from .cantor import discontinuity_witness, image_intervals, interleave, split
from .cf import DomainError
from .metric import distance_d, distance_dprime
from .regularity import (
    ae_band,
    ergodic_averages,
    holder_band,
    holder_band_f1,
    khintchine,
    khintchine_truncated,
    multifractal_example,
    slope_sample,
)
from .streams import CertifiedStream, FiniteStream, PeriodicStream, RandomStream, random_bracket

SCHEMA_VERSION = 1

# reference constants and pinned tolerances
LOG_K0 = 0.987849056
LOG_K1 = 1.409785988
KHINTCHINE_TOL = 1e-4
BAND_TOL = 1e-3
BAND_PRODUCT_TOL = 1e-9
SANDWICH_EPS = 1e-6
ERGODIC_TOL = 0.05
ERGODIC_PARITY_TOL = 0.08


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    samples: int = 200
    depth: int = 40
    bits: int = 256
    output_format: str = "json"
    output_path: str = "-"

    def __post_init__(self):
        if self.samples < 1:
            raise DomainError("samples must be >= 1")
        if self.depth < 1:
            raise DomainError("depth must be >= 1")
        if self.bits < 64:
            raise DomainError("bits must be >= 64")
        if self.bits < 3 * self.depth:
            raise DomainError(f"bits must be >= 3*depth = {3 * self.depth}")
        if self.output_format not in ("json", "csv"):
            raise DomainError(f"unknown format {self.output_format!r}")


def sample_irrational(seed: int, index: int, bits: int) -> RandomStream:
    if bits < 64:
        raise DomainError("bits must be >= 64")
    return RandomStream.draw(seed, index, bits)


def _rng(seed, index):
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))


def _fmt12(x):
    return f"{float(x):.12g}"


# --- figure data -----------------------------------------------------------

PLOT_SERIES = ("a1", "a2_given_a1_eq_1", "f1", "f2")


@dataclass(frozen=True)
class PlotPoint:
    x: str
    y: str
    depth: int
    bracket: tuple[Fraction, Fraction]
    enclosure: tuple[Fraction, Fraction] | None = None


@dataclass(frozen=True)
class PlotSeries:
    which: str
    points: tuple[PlotPoint, ...]
    depth: int

    def to_csv(self):
        lines = ["x,y,depth"]
        lines += [f"{p.x},{p.y},{p.depth}" for p in self.points]
        return "\n".join(lines) + "\n"

    def to_json(self):
        pts = []
        for p in self.points:
            d = {"x": p.x, "y": p.y, "depth": p.depth,
                 "bracket": [cf.format_rational(v) for v in p.bracket]}
            if p.enclosure is not None:
                d["enclosure"] = [cf.format_rational(v) for v in p.enclosure]
            pts.append(d)
        return {"schema_version": SCHEMA_VERSION, "which": self.which,
                "depth": self.depth, "points": pts}


def plot_series(which: str, points: int, depth: int = 40, seed: int = 0,
                bits: int = 256) -> PlotSeries:
    """Grid samples of a1, a2 given a1 = 1, f1 or f2.

    Point i is a certified bracket of width 2^-bits/N at a seeded random
    offset inside cell i, so no grid point sits on a rational.
    """
    if which not in PLOT_SERIES:
        raise DomainError(f"unknown series {which!r}")
    if points < 2:
        raise DomainError("points must be >= 2")
    left, span = (Fraction(1, 2), Fraction(1, 2)) if which == "a2_given_a1_eq_1" else (Fraction(0), Fraction(1))
    scale = span / points
    out = []
    for i in range(points):
        u_lo, u_hi = random_bracket(seed, i, bits)
        lo, hi = left + (i + u_lo) * scale, left + (i + u_hi) * scale
        stream = CertifiedStream(lo, hi)
        if which == "a1":
            out.append(PlotPoint(_fmt12(lo), str(stream.digit(1)), 1, (lo, hi)))
        elif which == "a2_given_a1_eq_1":
            out.append(PlotPoint(_fmt12(lo), str(stream.digit(2)), 2, (lo, hi)))
        else:
            digits = stream.supply(depth)
            f1, f2 = image_intervals(digits)
            enc = f1 if which == "f1" else f2
            out.append(PlotPoint(_fmt12(lo), _fmt12(enc.mid), len(digits), (lo, hi),
                                 (enc.lo, enc.hi)))
    return PlotSeries(which, tuple(out), depth)


def parse_plot_csv(text):
    lines = text.strip().splitlines()
    if lines[0] != "x,y,depth":
        raise DomainError("bad plot header")
    rows = []
    for line in lines[1:]:
        x, y, d = line.split(",")
        rows.append((Fraction(x), Fraction(y), int(d)))
    return rows


def a1_step_law_holds(x: Fraction, k: int) -> bool:
    """a1(x) = k iff 1/(k+1) < x <= 1/k."""
    return Fraction(1, k + 1) < x <= Fraction(1, k)


# --- random inputs for suites -----------------------------------------------

def random_digit(rng):
    r = rng.random()
    if r < 0.4:
        return int(rng.integers(1, 4))
    if r < 0.7:
        return int(rng.integers(1, 51))
    if r < 0.9:
        return int(1 / (1 - rng.random()))
    return int(rng.integers(1, 10**6 + 1))


def random_word(rng, length, max_digit=None):
    if max_digit is None:
        return tuple(random_digit(rng) for _ in range(length))
    return tuple(int(v) for v in rng.integers(1, max_digit + 1, size=length))


def random_periodic(rng, max_pre=10, max_period=6):
    pre = random_word(rng, int(rng.integers(0, max_pre + 1)))
    per = random_word(rng, int(rng.integers(1, max_period + 1)))
    return PeriodicStream(pre, per)


def sandwich_triple(rng, n_max=60):
    """(x, y, n, component) with x, y periodic and sharing exactly n digits.

    When the component's first differing digit is not forced by position
    n + 1 (f1 with odd n, f2 with even n), position n + 2 is made to differ as
    well so that f_i(x) != f_i(y).
    """
    n = int(rng.integers(1, n_max + 1))
    component = "f1" if rng.random() < 0.5 else "f2"
    x = random_periodic(rng, max_pre=n + 10)
    xs = x.prefix(n + 2)
    head = list(xs[:n])
    b = random_digit(rng)
    while b == xs[n]:
        b = random_digit(rng)
    head.append(b)
    if (component == "f1" and n % 2 == 1) or (component == "f2" and n % 2 == 0):
        b = random_digit(rng)
        while b == xs[n + 1]:
            b = random_digit(rng)
        head.append(b)
    head += random_word(rng, int(rng.integers(0, 6)))
    y = PeriodicStream(tuple(head), random_word(rng, int(rng.integers(1, 5))))
    return x, y, n, component


# --- suites ------------------------------------------------------------------

def suite_identities(cfg: RunConfig, qmax=200, max_len=50, max_digit=10**6):
    bad_roundtrip = 0
    n_rationals = 0
    for q in range(1, qmax + 1):
        for p in range(1, q + 1):
            if math.gcd(p, q) != 1:
                continue
            n_rationals += 1
            x = Fraction(p, q)
            w = cf.rational_to_cf(x)
            if cf.eval_finite(w) != x or not cf.is_canonical(w):
                bad_roundtrip += 1
    bad_words = 0
    for i in range(cfg.samples):
        rng = _rng(cfg.seed, i)
        w = random_word(rng, int(rng.integers(1, max_len + 1)), max_digit)
        if not word_identities_hold(w):
            bad_words += 1
    ok = bad_roundtrip == 0 and bad_words == 0
    return ok, {"rationals": n_rationals, "roundtrip_failures": bad_roundtrip,
                "words": cfg.samples, "identity_failures": bad_words}


def word_identities_hold(w) -> bool:
    t = cf.convergents(w)
    p = {j: t[j + 1][0] for j in range(-1, len(w) + 1)}
    q = {j: t[j + 1][1] for j in range(-1, len(w) + 1)}
    a = {j: w[j - 1] for j in range(1, len(w) + 1)}
    if (p[-1], q[-1], p[0], q[0]) != (1, 0, 0, 1):
        return False
    lo_prod, hi_prod = 1, 1
    for j in range(1, len(w) + 1):
        if p[j] != a[j] * p[j - 1] + p[j - 2] or q[j] != a[j] * q[j - 1] + q[j - 2]:
            return False
        if q[j] * p[j - 1] - p[j] * q[j - 1] != (-1) ** j:
            return False
        if j >= 2 and q[j] * p[j - 2] - p[j] * q[j - 2] != (-1) ** (j - 1) * a[j]:
            return False
        if j >= 2 and Fraction(p[j - 1], q[j - 1]) - Fraction(p[j], q[j]) != Fraction((-1) ** j, q[j] * q[j - 1]):
            return False
        lo_prod *= a[j]
        hi_prod *= a[j] + 1
        if not lo_prod <= q[j] <= hi_prod:
            return False
    return cf.eval_finite(w) == Fraction(p[len(w)], q[len(w)])


def suite_bijection(cfg: RunConfig, length=2000, functor_streams=100, functor_n=200):
    bad_roundtrip = 0
    for i in range(cfg.samples):
        rng = _rng(cfg.seed, i)
        a = FiniteStream(random_word(rng, length, 10**6))
        pair = split(a)
        c = interleave(pair.odd_stream, pair.even_stream)
        if c.prefix(length) != a.word:
            bad_roundtrip += 1
        u = FiniteStream(random_word(rng, length // 2, 10**6))
        v = FiniteStream(random_word(rng, length // 2, 10**6))
        back = split(interleave(u, v))
        if back.odd_stream.prefix(length // 2) != u.word or back.even_stream.prefix(length // 2) != v.word:
            bad_roundtrip += 1
    bad_functor = 0
    for i in range(min(cfg.samples, functor_streams)):
        rng = _rng(cfg.seed, 10**6 + i)
        word = random_word(rng, functor_n + 8)
        # a point y of I_n(x) that leaves I_{n+1}(x) right after the prefix
        tail = random_word(rng, 8)
        for n in range(1, functor_n + 1):
            f1, f2 = image_intervals(word[:n])
            r1 = cf.rank_interval(word[:n][0::2])
            if (f1.lo, f1.hi) != (r1.lo, r1.hi) or r1.rank != math.ceil(n / 2):
                bad_functor += 1
            if n >= 2:
                r2 = cf.rank_interval(word[:n][1::2])
                if (f2.lo, f2.hi) != (r2.lo, r2.hi) or r2.rank != n // 2:
                    bad_functor += 1
            y = word[:n] + tail
            g1, g2 = image_intervals(y)
            if not f1.contains_interval(g1) or not f2.contains_interval(g2):
                bad_functor += 1
    ok = bad_roundtrip == 0 and bad_functor == 0
    return ok, {"streams": cfg.samples, "length": length, "roundtrip_failures": bad_roundtrip,
                "functor_streams": min(cfg.samples, functor_streams), "functor_n": functor_n,
                "functor_failures": bad_functor}


def suite_sandwich(cfg: RunConfig, n_max=60, eps=SANDWICH_EPS):
    violations = 0
    worst = -math.inf
    vacuous = 0
    for i in range(cfg.samples):
        rng = _rng(cfg.seed, i)
        x, y, n, comp = sandwich_triple(rng, n_max)
        band = holder_band(x, n, comp)
        s = slope_sample(x, y, n, comp).slope
        vacuous += band.vacuous
        excess = max(band.lower - s, s - band.upper)
        worst = max(worst, excess)
        if excess > eps:
            violations += 1
    return violations == 0, {"triples": cfg.samples, "violations": violations,
                             "max_excess": worst, "vacuous_upper": vacuous, "eps": eps}


def suite_khintchine(cfg: RunConfig):
    metrics = {}
    ok = True
    for k, reference in ((0, LOG_K0), (1, LOG_K1)):
        res = khintchine(k, 1e-7)
        deeper = khintchine_truncated(k, 2 * res.truncation_j)
        honored = 0 <= deeper.log_value - res.log_value <= res.tail_bound
        err = abs(res.log_value - reference)
        metrics[f"log_K{k}"] = res.log_value
        metrics[f"log_K{k}_error"] = err
        metrics[f"log_K{k}_tail_bound"] = res.tail_bound
        metrics[f"log_K{k}_tail_honored"] = honored
        ok &= err < KHINTCHINE_TOL and honored
    means = [ergodic_averages(sample_irrational(cfg.seed, i, cfg.bits), cfg.depth).mean_all
             for i in range(cfg.samples)]
    grand = math.fsum(means) / len(means)
    metrics["grand_mean_log_a"] = grand
    metrics["grand_mean_error"] = abs(grand - 0.9878)
    ok &= abs(grand - 0.9878) < ERGODIC_TOL
    return ok, metrics


def suite_ergodic(cfg: RunConfig):
    sums = {key: [] for key in ("k0_all", "k0_even", "k0_odd", "k1_all", "k1_even", "k1_odd")}
    for i in range(cfg.samples):
        s = sample_irrational(cfg.seed, i, cfg.bits)
        for k in (0, 1):
            r = ergodic_averages(s, cfg.depth, k)
            sums[f"k{k}_all"].append(r.mean_all)
            sums[f"k{k}_even"].append(r.mean_even)
            sums[f"k{k}_odd"].append(r.mean_odd)
    metrics = {}
    ok = True
    for key, vals in sums.items():
        target = 0.9878 if key.startswith("k0") else 1.4098
        tol = ERGODIC_TOL if key.endswith("all") else ERGODIC_PARITY_TOL
        g = math.fsum(vals) / len(vals)
        metrics[key] = g
        ok &= abs(g - target) < tol
    return ok, metrics


def suite_witness(cfg: RunConfig, qmax=50):
    failures = []
    count = 0
    for q in range(2, qmax + 1):
        for p in range(1, q):
            if math.gcd(p, q) != 1:
                continue
            rng = _rng(cfg.seed, p * 1000 + q)
            for tail in (PeriodicStream((), (1,)), random_periodic(rng)):
                count += 1
                w = discontinuity_witness(Fraction(p, q), tail)
                if not w.differs:
                    failures.append(f"{p}/{q}")
    return not failures, {"witnesses": count, "failures": failures}


def suite_band(cfg: RunConfig):
    lo, hi = ae_band()
    ok = abs(lo - 0.3504) <= BAND_TOL and abs(hi - 0.7136) <= BAND_TOL
    ok &= abs(lo * hi - 0.25) <= BAND_PRODUCT_TOL and lo < 0.5 < hi
    up400 = holder_band_f1(multifractal_example(806), 400).upper
    up800 = holder_band_f1(multifractal_example(806), 800).upper
    ok &= up400 <= 0.02 and up800 <= up400
    return ok, {"lower": lo, "upper": hi, "product": lo * hi,
                "multifractal_upper_400": up400, "multifractal_upper_800": up800}


def suite_metric(cfg: RunConfig, depth=32):
    bad = 0
    for i in range(cfg.samples):
        rng = _rng(cfg.seed, i)
        a = random_word(rng, depth, 4)
        b = list(a)
        m = int(rng.integers(0, depth))
        b[m] = b[m] + int(rng.integers(1, 5))
        b[m + 1:] = random_word(rng, depth - m - 1, 4)
        sa, sb = FiniteStream(a), FiniteStream(tuple(b))
        lower, upper = distance_d(sa, sb, depth)
        dp = distance_dprime(sa, sb, depth)
        if not (dp.exact and dp.bound / 4 <= lower and upper < dp.bound):
            bad += 1
    return bad == 0, {"pairs": cfg.samples, "failures": bad}


SUITES = {
    "identities": suite_identities,
    "bijection": suite_bijection,
    "sandwich": suite_sandwich,
    "khintchine": suite_khintchine,
    "ergodic": suite_ergodic,
    "witness": suite_witness,
    "band": suite_band,
    "metric": suite_metric,
}


def run_suite(name: str, cfg: RunConfig) -> dict:
    if name not in SUITES:
        raise DomainError(f"unknown suite {name!r}")
    ok, metrics = SUITES[name](cfg)
    return {"schema_version": SCHEMA_VERSION, "suite": name, "pass": bool(ok),
            "config": {k: v for k, v in asdict(cfg).items() if k != "output_path"},
            "metrics": metrics}


def dump_report(report) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


__all__ = [
    "RunConfig",
    "PlotSeries",
    "SUITES",
    "a1_step_law_holds",
    "dump_report",
    "parse_plot_csv",
    "plot_series",
    "run_suite",
    "sample_irrational",
    "sandwich_triple",
]
