"""The dyadic cell scheme: cells V_n, subgroups H_n and basis families.

``rdf_levels(n)`` gives the dyadic levels of the cell ``V_n``: entry ``k``
on coordinate ``i`` means the factor ``(0, 2^-k)``. Levels sum to ``n``, so
``m(V_n) = 2^-n``. The sequence appends a new coordinate right after each
perfect square, climbs it to the current level, then refines the leading
coordinates one at a time.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import CandidateCapError
from .torus import Point, ProductSet, Region, diameter, measure

FAMILY_NAMES = ("rdf-restricted", "rdf-shapes", "d-basis", "g-basis")
CANDIDATE_CAP = 2**20


@lru_cache(maxsize=None)
def rdf_levels(n: int) -> tuple[int, ...]:
    """Level vector of V_n, e.g. ``rdf_levels(10) == (3, 3, 3, 1)``."""
    if n < 1:
        raise ValueError(f"generation must be >= 1, got {n}")
    m = math.isqrt(n - 1)  # m^2 < n <= (m+1)^2
    r = n - m * m
    if r <= m:
        levels = (m,) * m + (r,)
    else:
        j = r - m
        levels = (m + 1,) * j + (m,) * (m + 1 - j)
    assert sum(levels) == n
    return levels


@lru_cache(maxsize=None)
def rdf_cell(n: int) -> ProductSet:
    """V_n as a product set; U_n is ``rdf_cell(n * n)``."""
    return ProductSet.of({i: (0, Fraction(1, 2**k)) for i, k in enumerate(rdf_levels(n), start=1)})


def u_cell(n: int) -> ProductSet:
    """U_n = V_{n^2} = (0, 2^-n)^n."""
    return rdf_cell(n * n)


@lru_cache(maxsize=None)
def rdf_group(n: int) -> tuple[Point, ...]:
    """H_n in lexicographic order: the product of R_{2^k} over the levels of V_n."""
    axes = [[(i, Fraction(j, 2**k)) for j in range(2**k)] for i, k in enumerate(rdf_levels(n), start=1)]
    # entries are already reduced and in [0, 1), so build points directly
    return tuple(Point(tuple(e for e in combo if e[1])) for combo in itertools.product(*axes))


def unit_vector(n: int, i: int) -> Point:
    """e_{n,i}: 2^-n on coordinate i, zero elsewhere."""
    return Point.of({i: Fraction(1, 2**n)})


def d_candidate(n: int, i: int) -> Region:
    """U_{n,i} = U_n union (e_{n,i} + U_n)."""
    u = u_cell(n)
    return Region.of(u, u.translate(unit_vector(n, i)))


def g_candidate(n: int, h: Point) -> Region:
    """V_n union (h + V_n)."""
    v = rdf_cell(n)
    return Region.of(v, v.translate(h))


@dataclass(frozen=True)
class BasisFamily:
    """An explicitly enumerated truncation of a differentiation basis."""

    name: str
    max_generation: int
    candidates: tuple[Region, ...]
    labels: tuple[str, ...]

    def __len__(self):
        return len(self.candidates)


def _fmt(h: Point) -> str:
    return "(" + ",".join(f"{i}:{v}" for i, v in h.coords) + ")"


def family_size(name: str, max_generation: int) -> int:
    g = max_generation
    restricted = 2 ** (g + 1) - 2
    return {
        "rdf-restricted": restricted,
        "rdf-shapes": g,
        "d-basis": restricted + g * (g + 1) // 2,
        "g-basis": 2 * restricted,
    }[name]


@lru_cache(maxsize=32)
def build_family(name: str, max_generation: int, cap: int = CANDIDATE_CAP) -> BasisFamily:
    """Enumerate a named family up to ``max_generation``.

    ``rdf-restricted`` is R_0, ``rdf-shapes`` the untranslated cells V_n,
    ``d-basis`` is R_0 plus the U_{n,i} and ``g-basis`` is R_0 plus the
    ``V_n union (h + V_n)``.
    """
    if name not in FAMILY_NAMES:
        raise ValueError(f"unknown family {name!r}; expected one of {FAMILY_NAMES}")
    if max_generation < 1:
        raise ValueError("max_generation must be >= 1")
    size = family_size(name, max_generation)
    if size > cap:
        raise CandidateCapError(f"{name} up to generation {max_generation} has {size} candidates (cap {cap})")

    candidates, labels = [], []
    if name == "rdf-shapes":
        for n in range(1, max_generation + 1):
            candidates.append(Region.of(rdf_cell(n)))
            labels.append(f"V_{n}")
        return BasisFamily(name, max_generation, tuple(candidates), tuple(labels))

    for n in range(1, max_generation + 1):
        v = rdf_cell(n)
        for h in rdf_group(n):
            candidates.append(Region.of(v.translate(h)))
            labels.append(f"{_fmt(h)}+V_{n}")
    if name == "d-basis":
        for n in range(1, max_generation + 1):
            for i in range(1, n + 1):
                candidates.append(d_candidate(n, i))
                labels.append(f"U_{n},{i}")
    elif name == "g-basis":
        for n in range(1, max_generation + 1):
            for h in rdf_group(n):
                candidates.append(g_candidate(n, h))
                labels.append(f"V_{n}|{_fmt(h)}+V_{n}")
    return BasisFamily(name, max_generation, tuple(candidates), tuple(labels))


def family_profile(family: BasisFamily) -> list[tuple[Fraction, Fraction]]:
    """(measure, diameter) of every candidate, sorted by measure."""
    return sorted(((measure(c), diameter(c)) for c in family.candidates), key=lambda md: md[0])


# first ten cells of the scheme, as (level vector) rows
REFERENCE_ROWS = {
    1: (1,),
    2: (1, 1),
    3: (2, 1),
    4: (2, 2),
    5: (2, 2, 1),
    6: (2, 2, 2),
    7: (3, 2, 2),
    8: (3, 3, 2),
    9: (3, 3, 3),
    10: (3, 3, 3, 1),
}


def levels_str(levels) -> str:
    return "(" + ",".join(str(k) for k in levels) + ")"


def table1_certificate(max_n: int = 20, tiling_max_n: int = 10):
    """Reference rows, cell measures, subgroup sizes and the tiling by translates."""
    from .certificate import Certificate
    from .torus import pairwise_disjoint

    computed, checks = {}, []
    for n, row in REFERENCE_ROWS.items():
        computed[f"row{n}_match"] = Fraction(int(rdf_levels(n) == row))
        checks.append((f"row{n}_match", "==", "1"))
    for n in range(1, max_n + 1):
        computed[f"m_V{n}"] = measure(rdf_cell(n))
        computed[f"target_V{n}"] = Fraction(1, 2**n)
        computed[f"size_H{n}"] = Fraction(len(rdf_group(n)) if n <= 12 else math.prod(2**k for k in rdf_levels(n)))
        computed[f"target_H{n}"] = Fraction(2**n)
        checks += [(f"m_V{n}", "==", f"target_V{n}"), (f"size_H{n}", "==", f"target_H{n}")]
    for n in range(1, tiling_max_n + 1):
        tiles = [rdf_cell(n).translate(h) for h in rdf_group(n)]
        computed[f"tiling_sum_{n}"] = sum((t.measure for t in tiles), Fraction(0))
        computed[f"tiling_disjoint_{n}"] = Fraction(int(pairwise_disjoint(tiles)))
        checks += [(f"tiling_sum_{n}", "==", "1"), (f"tiling_disjoint_{n}", "==", "1")]
    return Certificate(
        claim="table1",
        params={"max_n": max_n, "tiling_max_n": tiling_max_n},
        computed=computed,
        checks=checks,
        bound=Fraction(1),
    )
