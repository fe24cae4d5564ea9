"""Concentrated bumps against arbitrary translates of the cells U_n.

Because the full basis allows every translate ``h + U_n``, a tiny set near
the center of the torus (or a fine grid of such sets) is seen at full
strength from every point of a much larger set. These constructions show
that the maximal operator is not of weak type (1,1) and that averages fail
to converge back to an integrable function.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from ..certificate import Certificate
from ..errors import PreconditionError
from ..maximal import witness_average
from ..rdf import u_cell
from ..serialize import point_to_json
from ..torus import (
    Arc,
    CoordSet,
    Point,
    ProductSet,
    Region,
    SimpleFunction,
    as_rational,
    intersect,
    measure,
)
from ._common import flag, uniform_in, window_start, witness_record

HALF = Fraction(1, 2)


def _check_epsilon(n: int, eps: Fraction):
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    if not 0 < eps < Fraction(1, 2 ** (n + 1)):
        raise PreconditionError(f"epsilon must lie in (0, 2^-{n + 1}), got {eps}")


def _centered_witness(g: Point, centers, eps: Fraction, n: int) -> Point:
    width = Fraction(1, 2**n)
    return Point.from_sequence(window_start(g[i], c - eps, c + eps, width) for i, c in enumerate(centers, start=1))


# -- single bump --------------------------------------------------------------


def prop31_sets(n: int, eps: Fraction):
    """(A_n, U_n, E_n) for the single centered bump."""
    w = Fraction(1, 2**n)
    A = ProductSet.box([2 * eps] * n, [HALF - eps] * n)
    E = ProductSet.box([2 * (w - eps)] * n, [HALF - w + eps] * n)
    return A, u_cell(n), E


def prop31_certificate(n: int, epsilon=None, samples=(), n_samples: int = 4, seed: int = 0) -> Certificate:
    """Weak-type failure from a single bump, with sampled translate witnesses."""
    eps = as_rational(epsilon) if epsilon is not None else Fraction(1, 2 ** (2 * n + 1))
    _check_epsilon(n, eps)
    A, U, E = prop31_sets(n, eps)
    f = SimpleFunction.indicator(A, 1 / measure(A))
    m_E = measure(E)
    threshold = Fraction(2 ** (n * n - 1))
    computed = {
        "epsilon": eps,
        "m_A": measure(A),
        "m_U": measure(U),
        "m_E": m_E,
        "norm_f": f.l1_norm,
        "weak_ratio": threshold * m_E / f.l1_norm,
        "weak_ratio_closed_form": 2 ** (n - 1) * (1 - 2**n * eps) ** n,
        "weak_ratio_floor": Fraction(2**n, 4),
        "witness_target": Fraction(2 ** (n * n)),
    }
    checks = [
        ("weak_ratio", "==", "weak_ratio_closed_form"),
        ("weak_ratio", ">=", "weak_ratio_floor"),
    ]

    rng = random.Random(seed)
    lo, hi = HALF - Fraction(1, 2**n) + eps, HALF + Fraction(1, 2**n) - eps
    points = [Point.from_sequence([HALF] * n)]
    points += [Point.from_sequence(uniform_in(rng, lo, hi) for _ in range(n)) for _ in range(n_samples)]
    for g in samples:
        if not E.contains(g):
            raise PreconditionError(f"sample point {point_to_json(g)} is not in E_n")
        points.append(g)

    witnesses = []
    for j, g in enumerate(points):
        h = _centered_witness(g, [HALF] * n, eps, n)
        value, inside = witness_average(f, U, h, g)
        covers = A.issubset(U.translate(h))
        computed[f"w{j}_average"] = value
        computed[f"w{j}_valid"] = flag(inside and covers)
        checks += [(f"w{j}_average", ">=", "witness_target"), (f"w{j}_valid", "==", "1")]
        witnesses.append(witness_record(g, h, U.translate(h), value))
    return Certificate(
        claim="prop31",
        params={"n": n, "epsilon": eps},
        computed=computed,
        checks=checks,
        bound=computed["weak_ratio_floor"],
        witnesses=witnesses,
    )


# -- grid of bumps ------------------------------------------------------------


def odd_centers(n: int) -> list[Fraction]:
    return [Fraction(2 * j + 1, 2**n) for j in range(2 ** (n - 1))]


def prop32_sets(n: int, eps: Fraction):
    """(A_n, E_n) as products of per-coordinate arc unions around the grid P_n."""
    w = Fraction(1, 2**n)
    cs = odd_centers(n)
    a_axis = CoordSet.from_arcs(Arc(c - eps, 2 * eps) for c in cs)
    e_axis = CoordSet.from_arcs(Arc(c - w + eps, 2 * (w - eps)) for c in cs)
    A = ProductSet.of({i: a_axis for i in range(1, n + 1)})
    E = ProductSet.of({i: e_axis for i in range(1, n + 1)})
    return A, E


def prop32_function(n: int, eps: Fraction, enumerate_grid: bool = False) -> SimpleFunction:
    """f_n, either as one weighted indicator of A_n or summed over the grid P_n."""
    coef = Fraction(1, 2 ** (n * n)) / (2 * eps) ** n
    if not enumerate_grid:
        return SimpleFunction.indicator(prop32_sets(n, eps)[0], coef)
    terms = []
    for p in itertools.product(odd_centers(n), repeat=n):
        terms.append((coef, ProductSet.box([2 * eps] * n, [c - eps for c in p])))
    return SimpleFunction(tuple(terms))


GRID_ENUMERATION_MAX_N = 3


def prop32_certificate(n: int, epsilon=None, samples=(), n_samples: int = 4, seed: int = 0) -> Certificate:
    """Grid of bumps: exact Eqs. for m(A_n), m(E_n), ||f_n|| and translate witnesses.

    A user epsilon that breaks the lower bound on m(E_n) yields a false
    verdict (the failing comparison is kept in the certificate), not an error.
    """
    eps = as_rational(epsilon) if epsilon is not None else Fraction(1, 2 ** (n * n + 2 * n))
    _check_epsilon(n, eps)
    A, E = prop32_sets(n, eps)
    f = prop32_function(n, eps)
    computed = {
        "epsilon": eps,
        "grid_size_formula": Fraction(2 ** (n * n - n)),
        "m_A": measure(A),
        "m_A_closed_form": 2 ** (n * n - n) * (2 * eps) ** n,
        "m_A_bound": Fraction(1, 2**n),
        "m_E": measure(E),
        "m_E_closed_form": (1 - 2**n * eps) ** n,
        "m_E_bound": 1 - Fraction(1, 2**n),
        "norm_f": f.l1_norm,
        "norm_target": Fraction(1, 2**n),
        "witness_target": Fraction(1),
    }
    checks = [
        ("m_A", "==", "m_A_closed_form"),
        ("m_A", "<=", "m_A_bound"),
        ("m_E", "==", "m_E_closed_form"),
        ("m_E", ">", "m_E_bound"),
        ("norm_f", "==", "norm_target"),
    ]
    if n <= GRID_ENUMERATION_MAX_N:
        grid = list(itertools.product(odd_centers(n), repeat=n))
        f_sum = prop32_function(n, eps, enumerate_grid=True)
        computed["grid_size_enumerated"] = Fraction(len(grid))
        computed["norm_f_enumerated"] = f_sum.l1_norm
        checks += [
            ("grid_size_enumerated", "==", "grid_size_formula"),
            ("norm_f_enumerated", "==", "norm_f"),
        ]

    rng = random.Random(seed)
    w = Fraction(1, 2**n)
    cs = odd_centers(n)
    points = []
    for _ in range(n_samples + 1):
        p = [rng.choice(cs) for _ in range(n)]
        points.append((p, Point.from_sequence(uniform_in(rng, c - w + eps, c + w - eps) for c in p)))
    for g in samples:
        if not E.contains(g):
            raise PreconditionError(f"sample point {point_to_json(g)} is not in E_n")
        p = [min(cs, key=lambda c: abs(c - g[i])) for i in range(1, n + 1)]
        points.append((p, g))

    U = u_cell(n)
    witnesses = []
    for j, (p, g) in enumerate(points):
        h = _centered_witness(g, p, eps, n)
        value, inside = witness_average(f, U, h, g)
        bump = ProductSet.box([2 * eps] * n, [c - eps for c in p])
        computed[f"w{j}_average"] = value
        computed[f"w{j}_valid"] = flag(inside and bump.issubset(U.translate(h)))
        checks += [(f"w{j}_average", ">=", "witness_target"), (f"w{j}_valid", "==", "1")]
        witnesses.append(witness_record(g, h, U.translate(h), value))
    return Certificate(
        claim="prop32",
        params={"n": n, "epsilon": eps},
        computed=computed,
        checks=checks,
        bound=computed["m_E_bound"],
        witnesses=witnesses,
    )


MAX_ASSEMBLY_STAGES = 5


def prop32_assemble(N: int) -> Certificate:
    """Finite truncation of the summed construction over stages 1..N.

    Certifies m(A_1 u ... u A_N) against sum 2^-n and 1/2, and for every
    start n the union bound ``m(E_n n ... n E_N) >= 1 - sum_{k=n}^N 2^-k``.
    Default epsilons are used at every stage.
    """
    if not 1 <= N <= MAX_ASSEMBLY_STAGES:
        raise PreconditionError(f"stage count must lie in 1..{MAX_ASSEMBLY_STAGES}, got {N}")
    stages = {n: prop32_sets(n, Fraction(1, 2 ** (n * n + 2 * n))) for n in range(1, N + 1)}
    computed = {
        "m_union_A": Region(tuple(A for A, _ in stages.values())).measure,
        "union_bound": sum((Fraction(1, 2**n) for n in stages), Fraction(0)),
        "half": Fraction(1, 2),
    }
    checks = [("m_union_A", "<=", "union_bound"), ("m_union_A", "<=", "half")]
    for n in range(1, N + 1):
        inter = stages[n][1]
        for k in range(n + 1, N + 1):
            inter = intersect(inter, stages[k][1])
        computed[f"m_E_from_{n}"] = measure(inter)
        computed[f"E_bound_from_{n}"] = 1 - sum((Fraction(1, 2**k) for k in range(n, N + 1)), Fraction(0))
        checks.append((f"m_E_from_{n}", ">=", f"E_bound_from_{n}"))
    return Certificate(
        claim="prop32_assemble",
        params={"N": N},
        computed=computed,
        checks=checks,
        bound=computed["half"],
    )
