from fractions import Fraction as F

import pytest

from torusdiff.counterexamples import prop41_certificate, prop42_certificate
from torusdiff.errors import CandidateCapError


@pytest.mark.parametrize("n", range(1, 11))
def test_d_basis_ratio(n):
    c = prop41_certificate(n)
    assert c.verdict
    assert c.computed["ratio"] >= F(n + 1, 3)


def test_d_basis_examples():
    assert prop41_certificate(1).computed["ratio"] >= F(2, 3)
    assert prop41_certificate(3).computed["ratio"] >= F(4, 3)


@pytest.mark.parametrize("k", range(1, 7))
def test_g_basis_delta(k):
    c = prop42_certificate(k)
    assert c.verdict
    assert c.computed["delta_lower_bound"] >= 1
    assert c.computed["tiling_sum"] == 1
    assert c.computed["pair_average_min"] == F(1, 2)


def test_g_basis_norms():
    assert prop42_certificate(1).computed["scaled_norm"] == F(1, 4)
    assert prop42_certificate(3).computed["scaled_norm"] == F(1, 4)


def test_caps():
    with pytest.raises(CandidateCapError):
        prop41_certificate(5, cap=10)
    with pytest.raises(CandidateCapError):
        prop42_certificate(5, cap=10)
