from fractions import Fraction as F
from math import comb

import pytest

from torusdiff.binomial import binomial_tail, binomial_tail_dp, joint_below_probability


def test_impossible_tail():
    assert binomial_tail(4, F(1, 3), 8) == 0


def test_single_term():
    assert binomial_tail(16, F(1, 5), 16) == F(1, 5) ** 16


def test_n5_against_direct_sum():
    p = F(1, 6)
    direct = sum(comb(25, j) * p**j * (1 - p) ** (25 - j) for j in range(20, 26))
    assert binomial_tail(25, p, 20) == direct == binomial_tail_dp(25, p, 20)
    assert direct < F(1, 2)


@pytest.mark.parametrize("n", range(1, 13))
def test_closed_form_matches_dp(n):
    assert binomial_tail(n * n, F(1, n + 1), 4 * n) == binomial_tail_dp(n * n, F(1, n + 1), 4 * n)


def test_threshold_zero_is_certain():
    assert binomial_tail(5, F(1, 2), 0) == 1


def test_joint_probability_factorizes():
    blocks = [(4, F(1, 3), 8), (9, F(1, 4), 12), (16, F(1, 5), 16)]
    product = 1
    for trials, p, t in blocks:
        product *= 1 - binomial_tail(trials, p, t)
    assert joint_below_probability(blocks) == product
