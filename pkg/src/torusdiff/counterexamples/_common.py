from __future__ import annotations

import random
from fractions import Fraction

from ..serialize import point_to_json, rational_str, region_to_json
from ..torus import Point, ProductSet

SAMPLE_BITS = 20


def window_start(x: Fraction, lo: Fraction, hi: Fraction, width: Fraction) -> Fraction:
    """Left end ``a`` of a window ``[a, a + width)`` whose interior holds x and [lo, hi].

    Takes the midpoint of the feasible range of left ends; the caller
    guarantees the range is nonempty.
    """
    left = max(x, hi) - width
    right = min(x, lo)
    if not left < right:
        raise ValueError("no window of the given width contains both x and [lo, hi]")
    return (left + right) / 2


def uniform_in(rng: random.Random, lo: Fraction, hi: Fraction) -> Fraction:
    """A dyadic rational strictly inside (lo, hi)."""
    k = rng.randrange(1, 2**SAMPLE_BITS)
    return lo + (hi - lo) * Fraction(k, 2**SAMPLE_BITS)


def witness_record(g: Point, h: Point, region: ProductSet, value: Fraction, **extra) -> dict:
    rec = {
        "point": point_to_json(g),
        "h": point_to_json(h),
        "region": region_to_json(region),
        "value": rational_str(value),
    }
    rec.update({k: rational_str(v) if isinstance(v, Fraction) else v for k, v in extra.items()})
    return rec


def flag(b: bool) -> Fraction:
    return Fraction(int(bool(b)))
