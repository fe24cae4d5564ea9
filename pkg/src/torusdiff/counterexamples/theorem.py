"""Stagewise assembly of the grid sets into A = U A_n and E = limsup E_n.

Stage n uses the grid construction with parameters (K_n, L_n). The schedule
takes L_n as the smallest integer with certified ``e^-L_n <= eps / 2^n`` and
``K_{n+1} = K_n + (L_n + 1)^2 + 1``, so the blocks of different stages are
disjoint and the sets E_n are independent.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Callable

from ..binomial import joint_below_probability
from ..certificate import Certificate
from ..errors import PreconditionError
from ..expbounds import exp_upper
from ..torus import Point, ProductSet, as_rational, diameter
from ._common import flag, witness_record
from .lemmas import GridConstruction, default_shape, lemma33_build

MAX_STAGES = 3


def schedule(epsilon: Fraction, stages: int) -> list[tuple[int, int]]:
    """[(K_n, L_n)] for n = 1..stages."""
    out = []
    K = 1
    for n in range(1, stages + 1):
        L = 1
        while exp_upper(-L) > epsilon / 2**n:
            L += 1
        out.append((K, L))
        K = K + (L + 1) ** 2 + 1
    return out


def _merge(grids: list[GridConstruction], points: list[Point]) -> Point:
    """Background coordinates from the last sample, block coordinates from each stage's own."""
    d = points[-1].as_dict()
    for grid, p in zip(grids, points):
        for i in grid.block:
            d[i] = p[i]
    return Point.of(d)


def _union_average(grids: list[GridConstruction], box: ProductSet) -> Fraction:
    # A-sets live on disjoint blocks, so their traces on a box are independent
    miss = Fraction(1)
    for grid in grids:
        miss *= 1 - grid.box_ratio(box)
    return 1 - miss


def theorem31_assemble(
    epsilon=Fraction(1, 2),
    stages: int = 2,
    shape_provider: Callable[[int, int], ProductSet] | None = None,
    n_samples: int = 3,
    seed: int = 0,
) -> Certificate:
    """Certify the finite-stage surrogate of the L^infinity counterexample.

    Checks m(A_1 u ... u A_s) < eps, exact independence of every group of the
    E_n, and for sampled points of the intersection of all E_n, one witness
    box per stage with small diameter and a large share of A.
    """
    eps = as_rational(epsilon)
    if not 0 < eps < 1:
        raise PreconditionError(f"epsilon must lie in (0, 1), got {eps}")
    if not 1 <= stages <= MAX_STAGES:
        raise PreconditionError(f"stages must lie in 1..{MAX_STAGES}, got {stages}")
    shape_provider = shape_provider or default_shape
    plan = schedule(eps, stages)

    grids, children = [], []
    for j, (K, L) in enumerate(plan):
        grid, cert = lemma33_build(K, L, shape_provider(K, L), n_samples=2, seed=seed + j, materialize=False)
        grids.append(grid)
        children.append(cert)

    computed = {"epsilon": eps}
    checks = []
    miss = Fraction(1)
    for j, ((K, L), grid) in enumerate(zip(plan, grids), start=1):
        computed[f"K_{j}"] = Fraction(K)
        computed[f"L_{j}"] = Fraction(L)
        computed[f"exp_minus_L_{j}_ub"] = exp_upper(-L)
        computed[f"eps_share_{j}"] = eps / 2**j
        computed[f"m_A_{j}"] = grid.a_measure
        computed[f"m_E_{j}"] = grid.e_measure
        checks.append((f"exp_minus_L_{j}_ub", "<=", f"eps_share_{j}"))
        if j > 1:
            prev_K, prev_L = plan[j - 2]
            computed[f"block_end_{j - 1}"] = Fraction(prev_K + (prev_L + 1) ** 2)
            checks.append((f"K_{j}", ">", f"block_end_{j - 1}"))
        miss *= 1 - grid.a_measure
    computed["m_union_A"] = 1 - miss
    computed["sum_m_A"] = sum((g.a_measure for g in grids), Fraction(0))
    checks += [("m_union_A", "<=", "sum_m_A"), ("m_union_A", "<", "epsilon")]

    for size in range(2, stages + 1):
        for group in itertools.combinations(range(stages), size):
            tag = "_".join(str(i + 1) for i in group)
            product = Fraction(1)
            cells = Fraction(1)
            for i in group:
                product *= grids[i].e_measure
                cells *= grids[i].cells_measure
            blocks = [(grids[i].n ** 2, Fraction(1, grids[i].n + 1), 4 * grids[i].n) for i in group]
            computed[f"m_E_joint_{tag}"] = cells * joint_below_probability(blocks)
            computed[f"m_E_product_{tag}"] = product
            checks.append((f"m_E_joint_{tag}", "==", f"m_E_product_{tag}"))

    computed["exp_minus_8_ub"] = exp_upper(-8)
    rng = random.Random(seed)
    witnesses = []
    for s in range(n_samples):
        g = _merge(grids, [grid.sample_E(rng, 2)[-1] for grid in grids])
        for j, ((K, L), grid) in enumerate(zip(plan, grids), start=1):
            key = f"s{s}_stage{j}"
            computed[f"{key}_in_E"] = flag(grid.in_E(g))
            checks.append((f"{key}_in_E", "==", "1"))
            h = grid.witness(g)
            box = grid.Q.translate(h)
            value = _union_average(grids, box)
            computed[f"{key}_average"] = value
            computed[f"{key}_diameter"] = diameter(box)
            computed[f"{key}_scale"] = Fraction(1, 2**L)
            computed[f"{key}_in_closure"] = flag(box.closure_contains(g))
            checks += [
                (f"{key}_average", ">=", "exp_minus_8_ub"),
                (f"{key}_diameter", "<", f"{key}_scale"),
                (f"{key}_in_closure", "==", "1"),
            ]
            witnesses.append(witness_record(g, h, box, value, stage=j))
    return Certificate(
        claim="theorem31",
        params={"epsilon": eps, "stages": stages},
        computed=computed,
        checks=checks,
        bound=eps,
        witnesses=witnesses,
        children=children,
    )
