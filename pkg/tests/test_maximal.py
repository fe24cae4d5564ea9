import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from torusdiff.errors import ZeroMeasureError
from torusdiff.maximal import (
    DeltaWitness,
    MaximalQuery,
    delta_witness_check,
    maximal_value,
    superlevel_set,
    weak_type_ratio,
    witness_average,
)
from torusdiff.rdf import build_family, rdf_cell, u_cell
from torusdiff.torus import FULL_SET, Point, ProductSet, Region, SimpleFunction

V1 = SimpleFunction.indicator(rdf_cell(1))


def restricted(g):
    return build_family("rdf-restricted", g)


class TestMaximalValue:
    def test_inside_first_cell(self):
        assert maximal_value(MaximalQuery(restricted(1), V1), Point.of({1: F(1, 4)})) == 1

    def test_inside_translate(self):
        assert maximal_value(MaximalQuery(restricted(1), V1), Point.of({1: F(3, 4)})) == 0

    def test_empty_supremum(self):
        q = MaximalQuery(restricted(2), V1, diameter_cap=F(1, 1000))
        assert maximal_value(q, Point()) == 0


class TestSuperlevel:
    def test_first_cell(self):
        region, m = superlevel_set(MaximalQuery(restricted(1), V1), F(1, 2))
        assert m == F(1, 2)
        assert region.pieces == (rdf_cell(1),)

    def test_above_every_average(self):
        region, m = superlevel_set(MaximalQuery(restricted(3), V1), 1)
        assert m == 0 and region.is_empty

    def test_weak_type_ratio(self):
        assert weak_type_ratio(MaximalQuery(restricted(1), V1), F(1, 2)) == F(1, 2)

    def test_d_basis_ratio(self):
        q = MaximalQuery(build_family("d-basis", 3), SimpleFunction.indicator(u_cell(3)))
        assert weak_type_ratio(q, F(1, 3)) >= F(4, 3)

    def test_zero_norm(self):
        with pytest.raises(ZeroMeasureError):
            weak_type_ratio(MaximalQuery(restricted(1), SimpleFunction(())), F(1, 2))


class TestWitness:
    def test_concentrated_bump(self):
        eps = F(1, 2**5)
        a2 = ProductSet.box([2 * eps, 2 * eps], [F(1, 2) - eps, F(1, 2) - eps])
        f = SimpleFunction.indicator(a2, 1 / a2.measure)
        g = Point.of({1: F(3, 8), 2: F(3, 8)})
        h = Point.of({1: F(5, 16), 2: F(5, 16)})
        assert witness_average(f, u_cell(2), h, g) == (16, True)

    def test_trivial(self):
        assert witness_average(V1, rdf_cell(1), Point(), Point()) == (1, True)

    def test_outside_closure(self):
        _, inside = witness_average(V1, rdf_cell(2), Point(), Point.of({1: F(3, 4)}))
        assert not inside


class TestDeltaCheck:
    def test_g_basis_k1(self):
        w = DeltaWitness(SimpleFunction.indicator(rdf_cell(3)), F(1, 3), Region.of(FULL_SET), 1)
        cert = delta_witness_check(w, build_family("g-basis", 3))
        assert cert.verdict
        assert cert.computed["m_E"] == 1 and cert.computed["norm_f"] == F(1, 8)

    def test_large_k_fails(self):
        w = DeltaWitness(SimpleFunction.indicator(rdf_cell(3)), F(1, 3), Region.of(FULL_SET), 5)
        assert not delta_witness_check(w, build_family("g-basis", 3)).verdict

    def test_empty_E_fails(self):
        w = DeltaWitness(SimpleFunction.indicator(rdf_cell(3)), F(1, 3), Region(()), 1)
        assert not delta_witness_check(w, build_family("g-basis", 3)).verdict

    def test_restricted_family_has_no_big_superlevel(self):
        w = DeltaWitness(SimpleFunction.indicator(rdf_cell(3)), F(1, 3), Region.of(FULL_SET), 1)
        assert not delta_witness_check(w, restricted(3)).verdict


# -- oracle: pointwise maximal function on a refinement grid ---------------------------




def grid_points(depth, dims):
    # centers of the level-`depth` dyadic grid on the first `dims` coordinates
    axis = [F(2 * j + 1, 2 ** (depth + 1)) for j in range(2**depth)]
    return [Point.from_sequence(v) for v in itertools.product(axis, repeat=dims)]


@st.composite
def small_functions(draw):
    gen = draw(st.integers(1, 4))
    fam = build_family("rdf-restricted", gen)
    chosen = draw(st.lists(st.integers(0, len(fam) - 1), min_size=1, max_size=3))
    coefs = draw(st.lists(st.integers(-3, 3).filter(bool), min_size=len(chosen), max_size=len(chosen)))
    f = SimpleFunction.of((c, fam.candidates[i].pieces[0]) for c, i in zip(coefs, chosen))
    return gen, fam, f


@given(small_functions(), st.sampled_from([F(1, 4), F(1, 2), F(1), F(3, 2)]))
def test_superlevel_agrees_with_pointwise_maximal(data, lam):
    gen, fam, f = data
    q = MaximalQuery(fam, f)
    region, m = superlevel_set(q, lam)
    # every candidate of generation <= 4 lives on two coordinates at resolution 1/4,
    # so Mf is constant on the open cells of the level-3 grid
    pts = grid_points(3, 2)
    pointwise = sum(1 for g in pts if maximal_value(q, g) > lam)
    assert F(pointwise, len(pts)) == m
    for g in pts:
        assert region.contains(g) == (maximal_value(q, g) > lam)


@given(small_functions(), st.integers(1, 4))
def test_maximal_scales_and_is_monotone(data, c):
    gen, fam, f = data
    q = MaximalQuery(fam, f)
    q_scaled = MaximalQuery(fam, f * c)
    for g in grid_points(2, 2):
        assert maximal_value(q_scaled, g) == c * maximal_value(q, g)
    _, m_lo = superlevel_set(q, F(1, 4))
    _, m_hi = superlevel_set(q, F(1, 2))
    assert m_hi <= m_lo
