"""Continued fractions, Cantor's bijection between (0,1) and its square, and its Hölder regularity."""
from .cantor import (
    DiscontinuityWitness,
    SplitPair,
    discontinuity_witness,
    forward_value,
    image_intervals,
    interleave,
    inverse_digits,
    split,
)
from .cf import (
    DomainError,
    Enclosure,
    RankInterval,
    alternate_form,
    convergents,
    eval_finite,
    expand_certified,
    rank_interval,
    rational_to_cf,
    tail_value,
)
from .metric import distance_d, distance_dprime
from .regularity import (
    HolderBand,
    PrecisionError,
    ae_band,
    ergodic_averages,
    holder_band_f1,
    holder_band_f2,
    khintchine,
    multifractal_example,
    slope_sample,
)
from .streams import (
    CertifiedStream,
    DigitStream,
    FiniteStream,
    PeriodicStream,
    RandomStream,
    StreamExhausted,
    digit_at,
    parse_stream,
)

__version__ = "0.1.0"
