"""Exact binomial tail probabilities.

Two independent routes to P(X >= t) for X ~ Binomial(N, p): the closed-form
sum of binomial terms, and a dynamic-programming convolution of N Bernoulli
variables. The convolution generalizes to several blocks of trials, each with
its own success probability and threshold.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence


def binomial_tail(trials: int, p: Fraction, threshold: int) -> Fraction:
    """Closed form ``sum_{j >= threshold} C(N, j) p^j (1 - p)^(N - j)``."""
    p = Fraction(p)
    q = 1 - p
    return sum(
        (comb(trials, j) * p**j * q ** (trials - j) for j in range(max(threshold, 0), trials + 1)),
        Fraction(0),
    )


def binomial_tail_dp(trials: int, p: Fraction, threshold: int) -> Fraction:
    """Same tail via sequential convolution of Bernoulli(p) distributions."""
    p = Fraction(p)
    dist = [Fraction(1)]
    for _ in range(trials):
        nxt = [Fraction(0)] * (len(dist) + 1)
        for c, w in enumerate(dist):
            nxt[c] += w * (1 - p)
            nxt[c + 1] += w * p
        dist = nxt
    return sum(dist[max(threshold, 0):], Fraction(0))


def joint_below_probability(blocks: Sequence[tuple[int, Fraction, int]]) -> Fraction:
    """P(count_b < threshold_b for every block b), counts tracked jointly.

    ``blocks`` lists ``(trials, p, threshold)``. The state is the full tuple of
    per-block counts, so nothing assumes the blocks are independent; trials
    are fed one coordinate at a time in block order.
    """
    state = {tuple(0 for _ in blocks): Fraction(1)}
    for b, (trials, p, _) in enumerate(blocks):
        p = Fraction(p)
        for _ in range(trials):
            nxt: dict[tuple[int, ...], Fraction] = {}
            for counts, w in state.items():
                hit = counts[:b] + (counts[b] + 1,) + counts[b + 1:]
                nxt[counts] = nxt.get(counts, 0) + w * (1 - p)
                nxt[hit] = nxt.get(hit, 0) + w * p
            state = nxt
    return sum(
        (w for counts, w in state.items() if all(c < blk[2] for c, blk in zip(counts, blocks))),
        Fraction(0),
    )
