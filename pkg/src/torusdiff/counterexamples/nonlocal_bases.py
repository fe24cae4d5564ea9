"""Bases that misbehave only near the origin: the families D and G.

Each adds to R_0 sets whose closures contain 0 (two adjacent copies of U_n,
or V_n together with one of its translates). The extra sets make the
maximal operator large on big sets without affecting differentiation.
"""

from __future__ import annotations

from fractions import Fraction

from ..certificate import Certificate
from ..errors import CandidateCapError
from ..maximal import DeltaWitness, MaximalQuery, delta_witness_check, superlevel_set, weak_type_ratio
from ..rdf import CANDIDATE_CAP, build_family, d_candidate, family_size, g_candidate, rdf_cell, rdf_group, u_cell
from ..torus import FULL_SET, Region, SimpleFunction, average, measure, pairwise_disjoint
from ._common import flag

THIRD = Fraction(1, 3)


def prop41_certificate(n: int, cap: int = CANDIDATE_CAP) -> Certificate:
    """Weak-type ratio of M_D on chi_{U_n} at level 1/3 is at least (n+1)/3."""
    if family_size("d-basis", n) > cap:
        raise CandidateCapError(f"d-basis up to generation {n} exceeds the cap {cap}")
    family = build_family("d-basis", n, cap)
    f = SimpleFunction.indicator(u_cell(n))
    q = MaximalQuery(family, f)
    _, level_measure = superlevel_set(q, THIRD)
    union = Region(tuple(p for i in range(1, n + 1) for p in d_candidate(n, i).pieces))
    computed = {
        "lambda": THIRD,
        "norm_f": f.l1_norm,
        "m_superlevel": level_measure,
        "m_union_U_ni": union.measure,
        "union_target": (n + 1) * measure(u_cell(n)),
        "ratio": weak_type_ratio(q, THIRD),
        "ratio_bound": Fraction(n + 1, 3),
        "pair_average": min(average(f, d_candidate(n, i)) for i in range(1, n + 1)),
    }
    checks = [
        ("pair_average", ">", "lambda"),
        ("m_union_U_ni", "==", "union_target"),
        ("m_superlevel", ">=", "m_union_U_ni"),
        ("ratio", ">=", "ratio_bound"),
    ]
    return Certificate(
        claim="prop41",
        params={"n": n, "family": "d-basis", "max_generation": n},
        computed=computed,
        checks=checks,
        bound=computed["ratio_bound"],
    )


def prop42_certificate(k: int, cap: int = CANDIDATE_CAP) -> Certificate:
    """delta_k of G is at least 1, via f = chi_{V_{k+2}} and lambda = 1/3."""
    gen = k + 2
    if family_size("g-basis", gen) > cap:
        raise CandidateCapError(f"g-basis up to generation {gen} exceeds the cap {cap}")
    family = build_family("g-basis", gen, cap)
    v = rdf_cell(gen)
    f = SimpleFunction.indicator(v)
    translates = [v.translate(h) for h in rdf_group(gen)]
    pair_avgs = [average(f, g_candidate(gen, h)) for h in rdf_group(gen) if h.coords]

    child = delta_witness_check(DeltaWitness(f, THIRD, Region.of(FULL_SET), k), family)
    computed = {
        "tiling_sum": sum((measure(t) for t in translates), Fraction(0)),
        "tiling_disjoint": flag(pairwise_disjoint(translates)),
        "pair_average_min": min(pair_avgs),
        "pair_average_max": max(pair_avgs),
        "half": Fraction(1, 2),
        "lambda": THIRD,
        "scaled_norm": 2**k * f.l1_norm,
        "delta_lower_bound": child.computed["m_E"] if child.verdict else Fraction(0),
    }
    checks = [
        ("tiling_sum", "==", "1"),
        ("tiling_disjoint", "==", "1"),
        ("pair_average_min", "==", "half"),
        ("pair_average_max", "==", "half"),
        ("lambda", ">", "scaled_norm"),
        ("delta_lower_bound", "==", "1"),
    ]
    return Certificate(
        claim="prop42",
        params={"k": k, "family": "g-basis", "max_generation": gen},
        computed=computed,
        checks=checks,
        bound=Fraction(1),
        children=[child],
    )
