"""End-to-end acceptance criteria, each with its own time limit.

Every criterion records one PASS/FAIL line, printed in the pytest summary.
"""

import itertools
import random
import time
from contextlib import contextmanager
from fractions import Fraction as F

import pytest

from conftest import ACCEPTANCE_LINES
from torusdiff.counterexamples import (
    lemma31_ratio,
    lemma32_shift,
    lemma33_build,
    prop31_certificate,
    prop32_certificate,
    prop41_certificate,
    prop42_certificate,
    theorem31_assemble,
)
from torusdiff.counterexamples.lemmas import sample_shift_input
from torusdiff.counterexamples.translates import prop32_function
from torusdiff.expbounds import exp_lower, exp_upper, half_inv_e_bounds
from torusdiff.maximal import MaximalQuery, maximal_value, superlevel_set
from torusdiff.rdf import REFERENCE_ROWS, build_family, family_profile, rdf_cell, rdf_group, rdf_levels
from torusdiff.torus import (
    Arc,
    CoordSet,
    Point,
    ProductSet,
    Region,
    SimpleFunction,
    diameter,
    inclusion_exclusion_measure,
    integrate,
    intersect,
    measure,
    pairwise_disjoint,
    rho,
)

pytestmark = pytest.mark.acceptance


@contextmanager
def criterion(number, title, limit):
    start = time.perf_counter()
    status = "FAIL"
    detail = ""
    try:
        yield
        elapsed = time.perf_counter() - start
        if elapsed < limit:
            status = "PASS"
        else:
            detail = " (over time limit)"
    finally:
        elapsed = time.perf_counter() - start
        line = f"[{status}] criterion {number}: {title}  {elapsed:.2f}s / {limit}s{detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    assert elapsed < limit, line


def test_criterion_1_table_rows():
    with criterion(1, "reference rows, cell measures, subgroup sizes, tiling", 1):
        for n, row in REFERENCE_ROWS.items():
            assert rdf_levels(n) == row
        for n in range(1, 21):
            assert measure(rdf_cell(n)) == F(1, 2**n)
            size = len(rdf_group(n)) if n <= 12 else 2 ** sum(rdf_levels(n))
            assert size == 2**n
        for n in range(1, 11):
            tiles = [rdf_cell(n).translate(h) for h in rdf_group(n)]
            assert sum(t.measure for t in tiles) == 1
            assert pairwise_disjoint(tiles)


def test_criterion_2_single_bump():
    with criterion(2, "single-bump weak-type failure, n = 1..10", 1):
        for n in range(1, 11):
            c = prop31_certificate(n, n_samples=1)
            eps = c.computed["epsilon"]
            assert c.computed["weak_ratio"] == 2 ** (n - 1) * (1 - 2**n * eps) ** n
            assert c.computed["weak_ratio"] >= 2 ** (n - 2)
            assert c.verdict
        for n in (2, 3):
            c = prop31_certificate(n, n_samples=4)
            averages = [v for k, v in c.computed.items() if k.endswith("_average")]
            assert averages and all(v == 2 ** (n * n) for v in averages)


def test_criterion_3_grid_of_bumps():
    with criterion(3, "grid of bumps, n = 2..5", 5):
        for n in range(2, 6):
            c = prop32_certificate(n, n_samples=2)
            assert c.verdict
            assert c.computed["m_A"] == c.computed["m_A_closed_form"] <= c.computed["m_A_bound"]
            assert c.computed["m_E"] == c.computed["m_E_closed_form"] >= c.computed["m_E_bound"]
            assert c.computed["norm_f"] == F(1, 2**n)
            assert c.computed["grid_size_formula"] == 2 ** (n * n - n)
            if n <= 3:
                assert c.computed["grid_size_enumerated"] == 2 ** (n * n - n)
                f = prop32_function(n, c.computed["epsilon"], enumerate_grid=True)
                assert f.l1_norm == F(1, 2**n)


def test_criterion_4_binomial_tail():
    with criterion(4, "binomial tail closed form = convolution, n = 2..12", 5):
        for n in range(2, 13):
            c = lemma31_ratio(n)
            assert c.computed["ratio"] == c.computed["ratio_dp"]
            assert c.computed["ratio"] < F(1, 2)
            assert c.verdict


def test_criterion_5_shifted_boxes():
    with criterion(5, "shifted boxes, 100 random inputs at n = 2, 3, 5, 8", 5):
        ub = exp_upper(-8)
        assert exp_lower(-8) == F(335462627902, 10**15) and ub == F(335462627903, 10**15)
        rng = random.Random(2024)
        for n in (2, 3, 5, 8):
            for _ in range(100):
                alphas, x = sample_shift_input(n, rng)
                c = lemma32_shift(n, alphas, x)
                y = [F(v) for v in c.witnesses[0]["y"]]
                assert all(yi < xi < yi + a for a, xi, yi in zip(alphas, x, y))
                assert c.computed["ratio"] > ub
                assert c.verdict


def test_criterion_6_periodic_grid():
    with criterion(6, "periodic grid sets at (K, L) = (1, 1) and (1, 2)", 30):
        for L in (1, 2):
            grid, c = lemma33_build(1, L, n_samples=10, seed=L)
            n = L + 1
            assert grid.a_measure <= F(n, n + 1) ** (n * n) < exp_lower(-L)
            assert grid.e_measure > half_inv_e_bounds()[1]
            averages = [v for k, v in c.computed.items() if k.endswith("_average")]
            diams = [v for k, v in c.computed.items() if k.endswith("_diameter")]
            assert len(averages) == len(diams) == 10
            assert all(v > exp_upper(-8) for v in averages)
            assert all(d < F(1, 2**L) for d in diams)
            assert c.verdict


def test_criterion_7_two_stage_assembly():
    with criterion(7, "two-stage assembly at epsilon = 1/2", 60):
        c = theorem31_assemble(F(1, 2), 2, n_samples=3)
        assert c.computed["m_union_A"] < F(1, 2)
        assert c.computed["m_E_joint_1_2"] == c.computed["m_E_1"] * c.computed["m_E_2"]
        assert all(v >= exp_upper(-8) for k, v in c.computed.items() if k.endswith("_average"))
        assert c.verdict


def test_criterion_8_nonlocal_bases():
    with criterion(8, "d-basis ratio, g-basis delta, g-basis profile", 5):
        for n in range(1, 11):
            c = prop41_certificate(n)
            assert c.computed["ratio"] >= F(n + 1, 3) and c.verdict
        for k in range(1, 7):
            c = prop42_certificate(k)
            assert c.computed["delta_lower_bound"] >= 1 and c.verdict
        profile = family_profile(build_family("g-basis", 10))
        assert any(m <= F(1, 2**9) and d >= F(1, 4) for m, d in profile)


# -- criterion 9: randomized engine checks ---------------------------------------------

DENOMS = (2, 3, 4, 5, 8, 16)


def rand_q(rng, zero=True):
    q = rng.choice(DENOMS)
    return F(rng.randrange(0 if zero else 1, q), q)


def rand_point(rng, dims=4):
    return Point.of({i: rand_q(rng) for i in range(1, dims + 1)})


def rand_coordset(rng):
    arcs = []
    for _ in range(rng.randint(1, 2)):
        q = rng.choice(DENOMS)
        arcs.append(Arc(rand_q(rng), F(rng.randint(1, q), q)))
    return CoordSet.from_arcs(arcs)


def rand_productset(rng, dims=3):
    idx = rng.sample(range(1, dims + 1), rng.randint(0, dims))
    return ProductSet.of({i: rand_coordset(rng) for i in idx})


def test_criterion_9_engine_properties():
    checks = 1000
    with criterion(9, f"engine properties, {checks} random checks each", 60):
        rng = random.Random(99)
        for _ in range(checks):
            g, h, k = rand_point(rng), rand_point(rng), rand_point(rng)
            assert rho(g, h) == rho(h, g) >= 0
            assert (rho(g, h) == 0) == (g == h)
            assert rho(g, k) <= rho(g, h) + rho(h, k)
        for _ in range(checks):
            s, t = rand_productset(rng), rand_point(rng)
            moved = s.translate(t)
            assert measure(moved) == measure(s) and diameter(moved) == diameter(s)
        for _ in range(checks):
            pieces = [rand_productset(rng) for _ in range(rng.randint(1, 4))]
            assert measure(Region(tuple(pieces))) == inclusion_exclusion_measure(pieces)
        for _ in range(checks):
            r, s = rand_productset(rng), rand_productset(rng)
            assert integrate(SimpleFunction.indicator(r), s) == measure(intersect(r, s))

        families = {g: build_family("rdf-restricted", g) for g in range(1, 5)}
        # generation <= 4 cells are unions of level-2 dyadic squares on two coordinates,
        # so every maximal function is constant on open level-3 grid cells
        axis = [F(2 * j + 1, 16) for j in range(8)]
        grid = [Point.of({1: a, 2: b}) for a, b in itertools.product(axis, repeat=2)]
        for _ in range(checks):
            fam = families[rng.randint(1, 4)]
            terms = [(rng.choice([-2, -1, 1, 2, 3]), rng.choice(fam.candidates).pieces[0]) for _ in range(rng.randint(1, 3))]
            q = MaximalQuery(fam, SimpleFunction.of(terms))
            lam = rng.choice([F(1, 4), F(1, 2), F(1), F(3, 2)])
            _, m = superlevel_set(q, lam)
            hits = sum(1 for p in grid if maximal_value(q, p) > lam)
            assert m == F(hits, len(grid))
