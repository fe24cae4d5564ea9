"""JSON encodings of rationals, points and sets.

Rationals are ``"p/q"`` strings (always with a denominator, ``"0/1"``),
points are sparse ``{index: value}`` maps, arcs are ``[start, length]``
pairs, product sets map indices to arc lists, and regions are lists of
product sets. Keys are coordinate indices written as decimal strings.
"""

from __future__ import annotations

from fractions import Fraction

from .torus import Arc, CoordSet, Point, ProductSet, Region, SimpleFunction, as_rational


def rational_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def point_to_json(g: Point) -> dict[str, str]:
    return {str(i): rational_str(v) for i, v in g.coords}


def point_from_json(data) -> Point:
    return Point.of({int(i): as_rational(v) for i, v in (data or {}).items()})


def productset_to_json(s: ProductSet):
    if s.empty:
        return None
    return {str(i): [[rational_str(a.start), rational_str(a.length)] for a in c.arcs] for i, c in s.factors}


def productset_from_json(data) -> ProductSet:
    if data is None:
        return ProductSet((), True)
    return ProductSet.of(
        {int(i): CoordSet.from_arcs(Arc(as_rational(s), as_rational(l)) for s, l in arcs) for i, arcs in data.items()}
    )


def region_to_json(r) -> list:
    if isinstance(r, ProductSet):
        r = Region.of(r)
    return [productset_to_json(p) for p in r.pieces]


def region_from_json(data) -> Region:
    if isinstance(data, dict):
        return Region.of(productset_from_json(data))
    return Region(tuple(productset_from_json(p) for p in data))


def function_to_json(f: SimpleFunction) -> list:
    return [{"coef": rational_str(c), "support": productset_to_json(s)} for c, s in f.terms]


def function_from_json(data) -> SimpleFunction:
    return SimpleFunction.of((as_rational(t["coef"]), productset_from_json(t["support"])) for t in data)
