"""Exact geometry and Haar measure on the infinite torus.

Everything here works with finitely supported objects: points with finitely
many nonzero coordinates, and product sets whose factors are the full circle
outside a finite set of indices. All scalars are :class:`fractions.Fraction`.

Arcs are half-open, ``[start, start + length)`` taken modulo 1. Boundaries
never change a measure, and closure membership is answered separately by
:func:`closure_contains`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Union

from .errors import EmptyRegionError, ZeroMeasureError

Rational = Fraction
RationalLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


def as_rational(x: RationalLike) -> Fraction:
    """Convert ``x`` to an exact Fraction.

    Accepts ints, Fractions and strings such as ``"3/8"`` or ``"0.125"``.
    Floats are rejected so that nothing is silently rounded.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def frac_part(x: Fraction) -> Fraction:
    if 0 <= x < 1:
        return x
    return x - math.floor(x)


def circle_dist(t: Fraction) -> Fraction:
    """Distance from ``t`` to the nearest integer, i.e. min(|t|, 1-|t|) mod 1."""
    u = frac_part(t)
    return min(u, 1 - u)


def _max_circle_dist(lo: Fraction, hi: Fraction) -> Fraction:
    # sup of circle_dist over [lo, hi]; it is 1/2 iff a half-integer lies inside
    if math.ceil(lo - HALF) <= hi - HALF:
        return HALF
    return max(circle_dist(lo), circle_dist(hi))


# ---------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class Point:
    """A point of the torus with finitely many nonzero coordinates.

    ``coords`` holds ``(index, value)`` pairs with 1-based strictly increasing
    indices and values in ``(0, 1)``; omitted coordinates are 0.
    """

    coords: tuple[tuple[int, Fraction], ...] = ()

    @classmethod
    def of(cls, mapping: Mapping[int, RationalLike] | None = None) -> "Point":
        entries = {}
        for i, v in (mapping or {}).items():
            i = int(i)
            if i < 1:
                raise ValueError(f"coordinate indices start at 1, got {i}")
            v = frac_part(as_rational(v))
            if v:
                entries[i] = v
        return cls(tuple(sorted(entries.items())))

    @classmethod
    def from_sequence(cls, values: Iterable[RationalLike]) -> "Point":
        return cls.of({i: v for i, v in enumerate(values, start=1)})

    def __getitem__(self, i: int) -> Fraction:
        for j, v in self.coords:
            if j == i:
                return v
        return ZERO

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.coords)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.coords)

    def __add__(self, other: "Point") -> "Point":
        d = self.as_dict()
        for i, v in other.coords:
            d[i] = d.get(i, ZERO) + v
        return Point.of(d)

    def __neg__(self) -> "Point":
        return Point.of({i: -v for i, v in self.coords})

    def __sub__(self, other: "Point") -> "Point":
        return self + (-other)


ORIGIN = Point()


def rho(g: Point, h: Point) -> Fraction:
    """The metric ``sum_n min(|g_n - h_n|, 1 - |g_n - h_n|) / 2^n``."""
    total = ZERO
    for i in sorted(set(g.support) | set(h.support)):
        total += circle_dist(g[i] - h[i]) / 2**i
    return total


# ---------------------------------------------------------------------------
# one-dimensional sets


@dataclass(frozen=True)
class Arc:
    """Half-open arc ``[start, start + length)`` on the circle."""

    start: Fraction
    length: Fraction

    def __post_init__(self):
        start, length = as_rational(self.start), as_rational(self.length)
        if not 0 < length <= 1:
            raise ValueError(f"arc length must lie in (0, 1], got {length}")
        start = ZERO if length == 1 else frac_part(start)
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "length", length)

    @property
    def measure(self) -> Fraction:
        return self.length

    def segments(self) -> list[tuple[Fraction, Fraction]]:
        end = self.start + self.length
        if end <= 1:
            return [(self.start, end)]
        return [(self.start, ONE), (ZERO, end - 1)]


def _normalize(segs: Iterable[tuple[Fraction, Fraction]]) -> tuple[tuple[Fraction, Fraction], ...]:
    out: list[list[Fraction]] = []
    for a, b in sorted(s for s in segs if s[0] < s[1]):
        if out and a <= out[-1][1]:
            if b > out[-1][1]:
                out[-1][1] = b
        else:
            out.append([a, b])
    return tuple((a, b) for a, b in out)


@dataclass(frozen=True)
class CoordSet:
    """Finite union of arcs on one circle coordinate.

    Stored canonically as sorted, merged half-open segments inside ``[0, 1]``;
    a wrap-around arc appears as two segments touching 0 and 1.
    """

    segments: tuple[tuple[Fraction, Fraction], ...] = ()

    @classmethod
    def from_arcs(cls, arcs: Iterable[Arc]) -> "CoordSet":
        return cls(_normalize(s for arc in arcs for s in arc.segments()))

    @classmethod
    def arc(cls, start: RationalLike, length: RationalLike) -> "CoordSet":
        return cls.from_arcs([Arc(start, length)])

    @classmethod
    def full(cls) -> "CoordSet":
        return FULL_COORD

    @property
    def is_empty(self) -> bool:
        return not self.segments

    @cached_property
    def is_full(self) -> bool:
        return self.segments == ((ZERO, ONE),)

    @cached_property
    def measure(self) -> Fraction:
        return sum((b - a for a, b in self.segments), ZERO)

    @property
    def arcs(self) -> tuple[Arc, ...]:
        segs = list(self.segments)
        if not segs:
            return ()
        if self.is_full:
            return (Arc(ZERO, ONE),)
        wrap = None
        if len(segs) > 1 and segs[0][0] == 0 and segs[-1][1] == 1:
            first, last = segs.pop(0), segs.pop()
            wrap = Arc(last[0], (last[1] - last[0]) + (first[1] - first[0]))
        arcs = [Arc(a, b - a) for a, b in segs]
        if wrap is not None:
            arcs.append(wrap)
        return tuple(sorted(arcs, key=lambda arc: arc.start))

    def contains(self, x: Fraction) -> bool:
        x = frac_part(x)
        return any(a <= x < b for a, b in self.segments)

    def closure_contains(self, x: Fraction) -> bool:
        x = frac_part(x)
        if any(a <= x <= b for a, b in self.segments):
            return True
        return x == 0 and any(b == 1 for _, b in self.segments)

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = self.__dict__["_hash"] = hash(self.segments)
            return h

    def shift(self, t: Fraction) -> "CoordSet":
        t = frac_part(t)
        if not t or self.is_full:
            return self
        out = []
        for a, b in self.segments:
            s = a + t
            if s >= 1:
                s -= 1
            e = s + (b - a)
            if e <= 1:
                out.append((s, e))
            else:
                out += [(s, ONE), (ZERO, e - 1)]
        return CoordSet(_normalize(out))

    def __and__(self, other: "CoordSet") -> "CoordSet":
        if self.is_full:
            return other
        if other.is_full:
            return self
        out = []
        xs, ys = self.segments, other.segments
        i = j = 0
        while i < len(xs) and j < len(ys):
            a = max(xs[i][0], ys[j][0])
            b = min(xs[i][1], ys[j][1])
            if a < b:
                out.append((a, b))
            if xs[i][1] < ys[j][1]:
                i += 1
            else:
                j += 1
        return CoordSet(tuple(out))

    def __or__(self, other: "CoordSet") -> "CoordSet":
        return CoordSet(_normalize(self.segments + other.segments))

    def complement(self) -> "CoordSet":
        out, prev = [], ZERO
        for a, b in self.segments:
            if a > prev:
                out.append((prev, a))
            prev = b
        if prev < 1:
            out.append((prev, ONE))
        return CoordSet(tuple(out))

    def __sub__(self, other: "CoordSet") -> "CoordSet":
        return self & other.complement()

    def issubset(self, other: "CoordSet") -> bool:
        ys = other.segments
        j = 0
        for a, b in self.segments:
            while j < len(ys) and ys[j][1] < b:
                j += 1
            if j == len(ys) or ys[j][0] > a:
                return False
        return True

    def overlaps(self, other: "CoordSet") -> bool:
        """True iff the intersection has positive length."""
        xs, ys = self.segments, other.segments
        i = j = 0
        while i < len(xs) and j < len(ys):
            if max(xs[i][0], ys[j][0]) < min(xs[i][1], ys[j][1]):
                return True
            if xs[i][1] < ys[j][1]:
                i += 1
            else:
                j += 1
        return False


FULL_COORD = CoordSet(((ZERO, ONE),))
EMPTY_COORD = CoordSet(())


@lru_cache(maxsize=4096)
def coord_spread(x: CoordSet, y: CoordSet) -> Fraction:
    """Supremum of the circle distance between points of the closures of x and y."""
    best = ZERO
    for a, b in x.segments:
        for c, d in y.segments:
            best = max(best, _max_circle_dist(a - d, b - c))
            if best == HALF:
                return best
    return best


# ---------------------------------------------------------------------------
# product sets and regions


def _as_coordset(value) -> CoordSet:
    if isinstance(value, CoordSet):
        return value
    if isinstance(value, Arc):
        return CoordSet.from_arcs([value])
    if isinstance(value, tuple) and len(value) == 2:
        return CoordSet.arc(*value)
    return CoordSet.from_arcs(value)


@dataclass(frozen=True)
class ProductSet:
    """A product of per-coordinate arc unions, full circle off a finite support.

    Full factors are never stored, and a product with an empty factor is the
    canonical empty set (``empty=True`` with no factors).
    """

    factors: tuple[tuple[int, CoordSet], ...] = ()
    empty: bool = False

    def __hash__(self):
        # sets are hashed repeatedly as cache keys, so remember the value
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = self.__dict__["_hash"] = hash((self.factors, self.empty))
            return h

    @classmethod
    def of(cls, mapping: Mapping[int, object] | None = None) -> "ProductSet":
        """Build from ``{index: CoordSet | Arc | (start, length) | [Arc, ...]}``."""
        stored = {}
        for i, value in (mapping or {}).items():
            i = int(i)
            if i < 1:
                raise ValueError(f"coordinate indices start at 1, got {i}")
            c = _as_coordset(value)
            if c.is_empty:
                return EMPTY_SET
            if not c.is_full:
                stored[i] = c
        return cls(tuple(sorted(stored.items())))

    @classmethod
    def box(cls, lengths: Iterable[RationalLike], starts: Iterable[RationalLike] | None = None) -> "ProductSet":
        """``prod_i [start_i, start_i + length_i)`` on coordinates 1, 2, ..."""
        lengths = list(lengths)
        starts = list(starts) if starts is not None else [0] * len(lengths)
        return cls.of({i: (s, l) for i, (s, l) in enumerate(zip(starts, lengths), start=1)})

    def factor(self, i: int) -> CoordSet:
        if self.empty:
            return EMPTY_COORD
        for j, c in self.factors:
            if j == i:
                return c
        return FULL_COORD

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.factors)

    @property
    def max_index(self) -> int:
        return self.factors[-1][0] if self.factors else 0

    @cached_property
    def measure(self) -> Fraction:
        if self.empty:
            return ZERO
        m = ONE
        for _, c in self.factors:
            m *= c.measure
        return m

    def with_factor(self, i: int, c: CoordSet) -> "ProductSet":
        d = dict(self.factors)
        d[i] = c
        return ProductSet.of(d)

    def contains(self, g: Point) -> bool:
        return not self.empty and all(c.contains(g[i]) for i, c in self.factors)

    def closure_contains(self, g: Point) -> bool:
        return not self.empty and all(c.closure_contains(g[i]) for i, c in self.factors)

    def __and__(self, other: "ProductSet") -> "ProductSet":
        return intersect(self, other)

    def overlaps(self, other: "ProductSet") -> bool:
        """True iff the intersection has positive measure."""
        if self.empty or other.empty:
            return False
        mine = dict(self.factors)
        for i, c in other.factors:
            if i in mine and not mine[i].overlaps(c):
                return False
        return True

    def issubset(self, other: "ProductSet") -> bool:
        if self.empty:
            return True
        if other.empty:
            return False
        return all(self.factor(i).issubset(c) for i, c in other.factors)

    def difference(self, other: "ProductSet") -> list["ProductSet"]:
        """``self \\ other`` as a list of pairwise disjoint product sets."""
        if not self.overlaps(other):
            return [] if self.empty else [self]
        out = []
        current = self
        for i, c in other.factors:
            mine = current.factor(i)
            outside = mine - c
            if not outside.is_empty:
                out.append(current.with_factor(i, outside))
            current = current.with_factor(i, mine & c)
        return out

    def translate(self, g: Point) -> "ProductSet":
        if self.empty:
            return self
        return ProductSet(tuple((i, c.shift(g[i])) for i, c in self.factors))


EMPTY_SET = ProductSet((), True)
FULL_SET = ProductSet()


def intersect(s1: ProductSet, s2: ProductSet) -> ProductSet:
    """Coordinatewise intersection of two product sets."""
    if s1.empty or s2.empty:
        return EMPTY_SET
    d = dict(s1.factors)
    for i, c in s2.factors:
        d[i] = d[i] & c if i in d else c
    return ProductSet.of(d)


@dataclass(frozen=True)
class Region:
    """Finite union of product sets (empty pieces are dropped)."""

    pieces: tuple[ProductSet, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(p for p in self.pieces if not p.empty))

    @classmethod
    def of(cls, *pieces: ProductSet) -> "Region":
        return cls(tuple(pieces))

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    @cached_property
    def measure(self) -> Fraction:
        return union_measure(self.pieces)

    def __or__(self, other: "Region") -> "Region":
        return Region(self.pieces + as_region(other).pieces)

    def __and__(self, other) -> "Region":
        other = as_region(other)
        return Region(tuple(intersect(p, q) for p in self.pieces for q in other.pieces))

    def translate(self, g: Point) -> "Region":
        return Region(tuple(p.translate(g) for p in self.pieces))

    def closure_contains(self, g: Point) -> bool:
        return any(p.closure_contains(g) for p in self.pieces)

    def contains(self, g: Point) -> bool:
        return any(p.contains(g) for p in self.pieces)


def as_region(r) -> Region:
    if isinstance(r, Region):
        return r
    if isinstance(r, ProductSet):
        return Region((r,))
    raise TypeError(f"expected Region or ProductSet, got {type(r).__name__}")


def pairwise_disjoint(pieces) -> bool:
    pieces = [p for p in pieces if not p.empty]
    if len(pieces) <= 8:
        return not any(p.overlaps(q) for p, q in itertools.combinations(pieces, 2))
    coords = sorted({i for p in pieces for i in p.support})
    # fast path: on every coordinate the factors in use are equal or disjoint,
    # so two pieces overlap exactly when all their factors coincide
    partitioned = True
    for i in coords:
        values = list({p.factor(i) for p in pieces})
        if len(values) > 64 or any(a.overlaps(b) for a, b in itertools.combinations(values, 2)):
            partitioned = False
            break
    if partitioned:
        keys = [tuple(p.factor(i) for i in coords) for p in pieces]
        return len(set(keys)) == len(keys)
    return not any(p.overlaps(q) for p, q in itertools.combinations(pieces, 2))


def disjointify(pieces) -> list[ProductSet]:
    """Rewrite a union of product sets as disjoint product sets (box subtraction)."""
    pieces = sorted((p for p in pieces if not p.empty), key=lambda p: p.measure, reverse=True)
    kept: list[ProductSet] = []
    for p in pieces:
        if not any(p.issubset(q) for q in kept):
            kept.append(p)
    if pairwise_disjoint(kept):
        return kept
    out: list[ProductSet] = []
    for p in kept:
        frags = [p]
        for q in out:
            nxt = []
            for f in frags:
                nxt.extend(f.difference(q) if f.overlaps(q) else [f])
            frags = nxt
            if not frags:
                break
        out.extend(frags)
    return out


def union_measure(pieces) -> Fraction:
    """Exact measure of a finite union of product sets."""
    return _union_measure(tuple(dict.fromkeys(p for p in pieces if not p.empty)))


@lru_cache(maxsize=256)
def _union_measure(pieces: tuple[ProductSet, ...]) -> Fraction:
    if pairwise_disjoint(pieces):
        return sum((p.measure for p in pieces), ZERO)
    return sum((p.measure for p in disjointify(pieces)), ZERO)


def inclusion_exclusion_measure(pieces) -> Fraction:
    """Measure of a union by inclusion-exclusion over all piece subsets.

    Exponential in the number of pieces; kept as an independent check on
    :func:`union_measure`. Branches whose running intersection is null are
    pruned, since every superset intersection is null too.
    """
    pieces = [p for p in pieces if not p.empty]
    total = ZERO

    def walk(start: int, current: ProductSet, size: int):
        nonlocal total
        for j in range(start, len(pieces)):
            nxt = pieces[j] if current is None else intersect(current, pieces[j])
            if nxt.measure == 0:
                continue
            total += nxt.measure if size % 2 == 0 else -nxt.measure
            walk(j + 1, nxt, size + 1)

    walk(0, None, 0)
    return total


def measure(r) -> Fraction:
    """Haar measure of a ProductSet or Region."""
    return r.measure


def _pair_spread(p: ProductSet, q: ProductSet) -> Fraction:
    n = max(p.max_index, q.max_index)
    total = Fraction(1, 2 ** (n + 1))  # implicit full coordinates beyond n
    for i in range(1, n + 1):
        total += coord_spread(p.factor(i), q.factor(i)) / 2**i
    return total


def diameter(r) -> Fraction:
    """Exact ``sup rho(g, h)`` over the closure of a ProductSet or Region."""
    pieces = as_region(r).pieces
    if not pieces:
        raise EmptyRegionError("diameter of an empty region is undefined")
    return max(_pair_spread(p, q) for p, q in itertools.combinations_with_replacement(pieces, 2))


def translate(r, g: Point):
    return r.translate(g)


def closure_contains(r, g: Point) -> bool:
    return r.closure_contains(g)


# ---------------------------------------------------------------------------
# simple functions


@dataclass(frozen=True)
class SimpleFunction:
    """Finite rational combination of indicators of product sets."""

    terms: tuple[tuple[Fraction, ProductSet], ...] = field(default=())

    @classmethod
    def indicator(cls, s: ProductSet, coef: RationalLike = 1) -> "SimpleFunction":
        return cls(((as_rational(coef), s),))

    @classmethod
    def of(cls, terms: Iterable[tuple[RationalLike, ProductSet]]) -> "SimpleFunction":
        return cls(tuple((as_rational(c), s) for c, s in terms))

    def __add__(self, other: "SimpleFunction") -> "SimpleFunction":
        return SimpleFunction(self.terms + other.terms)

    def __mul__(self, c: RationalLike) -> "SimpleFunction":
        c = as_rational(c)
        return SimpleFunction(tuple((c * a, s) for a, s in self.terms))

    __rmul__ = __mul__

    def __neg__(self) -> "SimpleFunction":
        return self * -1

    def __sub__(self, other: "SimpleFunction") -> "SimpleFunction":
        return self + (-other)

    def __call__(self, g: Point) -> Fraction:
        return sum((c for c, s in self.terms if s.contains(g)), ZERO)

    def atoms(self) -> list[tuple[ProductSet, Fraction]]:
        """Disjoint product sets on which ``self`` is constant (nonzero part only)."""
        atoms: list[tuple[ProductSet, Fraction]] = []
        for c, s in self.terms:
            if s.empty or c == 0:
                continue
            nxt = []
            rest = [s]
            for a, v in atoms:
                inside = intersect(a, s)
                if inside.measure == 0:
                    nxt.append((a, v))
                    continue
                nxt.append((inside, v + c))
                nxt.extend((piece, v) for piece in a.difference(s))
                rest = [f for r in rest for f in r.difference(a)]
            nxt.extend((r, c) for r in rest)
            atoms = nxt
        return atoms

    @cached_property
    def l1_norm(self) -> Fraction:
        if all(c >= 0 for c, _ in self.terms):
            return sum((c * s.measure for c, s in self.terms), ZERO)
        return sum((abs(v) * a.measure for a, v in self.atoms()), ZERO)


def integrate(f: SimpleFunction, r) -> Fraction:
    """``int_R f dm``, term by term."""
    region = as_region(r)
    total = ZERO
    for c, s in f.terms:
        if c:
            total += c * union_measure(intersect(s, p) for p in region.pieces)
    return total


def average(f: SimpleFunction, r) -> Fraction:
    """Mean value of f over R; raises ZeroMeasureError on null R."""
    m = measure(r)
    if m == 0:
        raise ZeroMeasureError("average over a set of measure zero")
    return integrate(f, r) / m
