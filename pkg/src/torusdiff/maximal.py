"""Maximal operators over enumerated families, superlevel sets and witnesses.

For a finite family the (non-centered) maximal function at ``g`` is the
largest ``|f_B|`` over candidates whose closure contains ``g``; with a
diameter cap ``r0`` only candidates with ``diam(B) < r0`` count. An empty
supremum is 0.

The full translation-invariant basis is never enumerated. Lower bounds for
its maximal function come from explicit translates, see
:func:`witness_average`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .certificate import Certificate
from .errors import ZeroMeasureError
from .rdf import BasisFamily
from .serialize import region_to_json
from .torus import (
    ZERO,
    Point,
    ProductSet,
    Region,
    SimpleFunction,
    as_rational,
    as_region,
    average,
    diameter,
    measure,
)


@dataclass(frozen=True)
class MaximalQuery:
    family: BasisFamily
    f: SimpleFunction
    diameter_cap: Fraction | None = None

    def __post_init__(self):
        if self.diameter_cap is not None:
            cap = as_rational(self.diameter_cap)
            if cap <= 0:
                raise ValueError("diameter_cap must be positive")
            object.__setattr__(self, "diameter_cap", cap)

    @cached_property
    def admissible(self) -> tuple[tuple[Region, Fraction], ...]:
        """(candidate, |f_B|) for every candidate passing the diameter cap."""
        out = []
        for b in self.family.candidates:
            if self.diameter_cap is not None and not diameter(b) < self.diameter_cap:
                continue
            out.append((b, abs(average(self.f, b))))
        return tuple(out)


def maximal_value(q: MaximalQuery, g: Point) -> Fraction:
    """sup of |f_B| over admissible B with g in the closure of B (0 if none)."""
    return max((v for b, v in q.admissible if b.closure_contains(g)), default=ZERO)


def superlevel_set(q: MaximalQuery, lam) -> tuple[Region, Fraction]:
    """Union of admissible candidates with ``|f_B| > lam`` and its measure.

    Closures are replaced by the (measure-equal) half-open candidates.
    """
    lam = as_rational(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    pieces = []
    for b, v in q.admissible:
        if v > lam:
            pieces.extend(b.pieces)
    region = Region(tuple(pieces))
    return region, measure(region)


def weak_type_ratio(q: MaximalQuery, lam) -> Fraction:
    """``lam * m({M f > lam}) / ||f||_1``."""
    lam = as_rational(lam)
    norm = q.f.l1_norm
    if norm == 0:
        raise ZeroMeasureError("weak-type ratio needs ||f||_1 > 0")
    return lam * superlevel_set(q, lam)[1] / norm


def witness_average(f: SimpleFunction, shape: ProductSet, h: Point, g: Point) -> tuple[Fraction, bool]:
    """Average of f over ``h + shape`` and whether g lies in its closure.

    When the flag is true the average is a lower bound for the maximal
    function of any translation-invariant basis containing ``shape``.
    """
    if measure(shape) == 0:
        raise ZeroMeasureError("witness shape has measure zero")
    moved = shape.translate(h)
    return average(f, moved), moved.closure_contains(g)


def region_includes(inner, outer) -> bool:
    """``inner`` is contained in ``outer`` up to a null set: m(inner \\ outer) = 0."""
    inner, outer = as_region(inner), as_region(outer)
    return measure(inner & outer) == measure(inner)


@dataclass(frozen=True)
class DeltaWitness:
    """Claim: M f > lam on E, and lam * m(E) > 2^k ||f||_1."""

    f: SimpleFunction
    lam: Fraction
    E: Region
    k: int
    diameter_cap: Fraction | None = None


def delta_witness_check(w: DeltaWitness, family: BasisFamily) -> Certificate:
    """Certify m(E) as a lower bound for delta_k (or its truncated variant)."""
    lam = as_rational(w.lam)
    E = as_region(w.E)
    q = MaximalQuery(family, w.f, w.diameter_cap)
    level, level_measure = superlevel_set(q, lam)
    m_E = measure(E)
    inside = m_E > 0 and region_includes(E, level)
    computed = {
        "lambda": lam,
        "m_E": m_E,
        "lambda_m_E": lam * m_E,
        "norm_f": w.f.l1_norm,
        "scaled_norm": 2**w.k * w.f.l1_norm,
        "m_E_cap_superlevel": measure(E & level),
        "m_superlevel": level_measure,
        "E_nonnull": Fraction(int(m_E > 0)),
        "E_in_superlevel": Fraction(int(inside)),
    }
    checks = [
        ("lambda_m_E", ">", "scaled_norm"),
        ("E_nonnull", "==", "1"),
        ("m_E_cap_superlevel", "==", "m_E"),
    ]
    params = {"family": family.name, "max_generation": family.max_generation, "k": w.k}
    if w.diameter_cap is not None:
        params["diameter_cap"] = as_rational(w.diameter_cap)
    return Certificate(
        claim="delta_lower_bound" if w.diameter_cap is None else "delta_tilde_lower_bound",
        params=params,
        computed=computed,
        checks=checks,
        bound=computed["scaled_norm"],
        witnesses=[{"region": region_to_json(E), "value": f"{m_E.numerator}/{m_E.denominator}"}],
    )
