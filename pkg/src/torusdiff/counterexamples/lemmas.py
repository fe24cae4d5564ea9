"""Dilated boxes, shifted boxes and the periodic grid sets A_{K,L}, E_{K,L}.

Notation: ``n = L + 1`` and the *block* is the run of ``n^2`` coordinates
``K+1 .. K+n^2``. On block coordinate i the basis box Q has side ``r_i``; the
grid step is ``beta_i = (1 + 1/n) r_i`` and ``l_i = floor(1 / beta_i)`` cells
fit on the circle. A is the union of the boxes ``p + I`` over grid points p;
E is the union of the dilated boxes ``p + (1 + 1/n) I`` minus their "too
many coordinates in the upper band" part.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from ..binomial import binomial_tail, binomial_tail_dp
from ..certificate import Certificate
from ..errors import PreconditionError
from ..expbounds import exp_lower, exp_upper, half_inv_e_bounds
from ..rdf import u_cell
from ..serialize import point_to_json, rational_str
from ..torus import Arc, CoordSet, Point, ProductSet, as_rational, diameter, measure
from ._common import SAMPLE_BITS, flag, uniform_in, witness_record

# -- dilated boxes -------------------------------------------------------------


def upper_band_tail(n: int) -> Fraction:
    """P(X >= 4n) for X ~ Binomial(n^2, 1/(n+1))."""
    return binomial_tail(n * n, Fraction(1, n + 1), 4 * n)


def _volume_ratio(n: int, alphas: Sequence[Fraction]) -> Fraction:
    # |J_n| / |(1+1/n) I_n| from the actual side lengths: distribution of the
    # number of coordinates lying in the upper band [alpha, (1+1/n) alpha)
    dist = [Fraction(1)]
    for a in alphas:
        low, up = a, a / n
        total = low + up
        nxt = [Fraction(0)] * (len(dist) + 1)
        for c, w in enumerate(dist):
            nxt[c] += w * low / total
            nxt[c + 1] += w * up / total
        dist = nxt
    return sum(dist[4 * n:], Fraction(0))


def lemma31_ratio(n: int, alphas: Sequence | None = None) -> Certificate:
    """Exact ``|J_n| / |(1+1/n) I_n|`` by three routes, compared with 1/2."""
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    if alphas is None:
        alphas = [Fraction(1, i + 1) for i in range(n * n)]
    alphas = [as_rational(a) for a in alphas]
    if len(alphas) != n * n or any(a <= 0 for a in alphas):
        raise PreconditionError(f"need {n * n} positive side lengths")
    p = Fraction(1, n + 1)
    computed = {
        "ratio": binomial_tail(n * n, p, 4 * n),
        "ratio_dp": binomial_tail_dp(n * n, p, 4 * n),
        "ratio_from_volumes": _volume_ratio(n, alphas),
        "chebyshev_bound": Fraction((n + 1) ** 2, 9 * n**3),
        "half": Fraction(1, 2),
    }
    checks = [
        ("ratio", "==", "ratio_dp"),
        ("ratio", "==", "ratio_from_volumes"),
        ("ratio", "<=", "chebyshev_bound"),
        ("ratio", "<", "half"),
    ]
    return Certificate(
        claim="lemma31",
        params={"n": n, "alphas": [rational_str(a) for a in alphas]},
        computed=computed,
        checks=checks,
        bound=computed["half"],
    )


# -- shifted boxes -------------------------------------------------------------


def shift_vector(n: int, alphas: Sequence[Fraction], x: Sequence[Fraction]) -> list[Fraction]:
    """y with ``y_i = 0`` on the lower band and ``alpha_i / n`` on the upper band."""
    return [Fraction(0) if 0 < xi < a else a / n for a, xi in zip(alphas, x)]


def upper_count(alphas, x) -> int:
    return sum(1 for a, xi in zip(alphas, x) if xi >= a)


def _check_shift_domain(n, alphas, x):
    if n < 2:
        raise PreconditionError(f"n must be >= 2, got {n}")
    if len(alphas) != n * n or len(x) != n * n:
        raise PreconditionError(f"need {n * n} side lengths and coordinates")
    for i, (a, xi) in enumerate(zip(alphas, x), start=1):
        if a <= 0:
            raise PreconditionError(f"alpha_{i} = {a} is not positive")
        if not 0 < xi < (1 + Fraction(1, n)) * a:
            raise PreconditionError(f"x_{i} = {xi} lies outside (0, (1+1/n) alpha_{i})")
    count = upper_count(alphas, x)
    if count >= 4 * n:
        raise PreconditionError(f"{count} coordinates in the upper band; x lies in J_n (limit {4 * n - 1})")


def sample_shift_input(n: int, rng: random.Random) -> tuple[list[Fraction], list[Fraction]]:
    """Random valid (alphas, x) for :func:`lemma32_shift`, fewer than 4n upper coordinates."""
    alphas = [Fraction(rng.randrange(1, 2**SAMPLE_BITS), 2**SAMPLE_BITS) for _ in range(n * n)]
    uppers = set(rng.sample(range(n * n), rng.randrange(min(4 * n, n * n + 1))))
    x = []
    for i, a in enumerate(alphas):
        if i in uppers:
            x.append(a + uniform_in(rng, Fraction(0), a / n))
        else:
            x.append(uniform_in(rng, Fraction(0), a))
    return alphas, x


def lemma32_shift(n: int, alphas: Sequence, x: Sequence) -> Certificate:
    """Shift ``y`` with ``x in y + I_n`` and a large overlap ``|(I_n + y) n I_n|``."""
    alphas = [as_rational(a) for a in alphas]
    x = [as_rational(v) for v in x]
    _check_shift_domain(n, alphas, x)
    y = shift_vector(n, alphas, x)
    count = upper_count(alphas, x)
    direct = Fraction(1)
    for a, yi in zip(alphas, y):
        direct *= (min(a, yi + a) - max(Fraction(0), yi)) / a
    e8_lb, e8_ub = exp_lower(-8), exp_upper(-8)
    q = Fraction(n - 1, n)
    computed = {
        "upper_count": Fraction(count),
        "contains": flag(all(yi < xi < yi + a for a, xi, yi in zip(alphas, x, y))),
        "ratio": q**count,
        "ratio_direct": direct,
        "ratio_floor": q ** (4 * n - 1),
        "ratio_chain": q ** (8 * (n - 1)),
        "exp_minus_8_lb": e8_lb,
        "exp_minus_8_ub": e8_ub,
    }
    checks = [
        ("contains", "==", "1"),
        ("ratio", "==", "ratio_direct"),
        ("ratio", ">=", "ratio_floor"),
        ("ratio_floor", ">", "ratio_chain"),
        ("ratio_chain", ">=", "exp_minus_8_ub"),
        ("ratio", ">=", "exp_minus_8_ub"),
    ]
    return Certificate(
        claim="lemma32",
        params={"n": n, "alphas": [rational_str(a) for a in alphas], "x": [rational_str(v) for v in x]},
        computed=computed,
        checks=checks,
        bound=e8_ub,
        witnesses=[{"y": [rational_str(v) for v in y]}],
    )


# -- periodic grid construction ------------------------------------------------


def diam_q_bound(K: int, L: int) -> Fraction:
    n2 = (L + 1) ** 2
    return Fraction(1, 2 ** (K + n2) * (n2 + 1)) * Fraction(L + 1, L + 2)


def box_sides(Q: ProductSet) -> list[Fraction]:
    """Side lengths r_1..r_k of ``Q = prod [0, r_i)``; raises if Q has another shape."""
    if Q.empty:
        raise PreconditionError("Q is empty")
    sides = []
    for i in range(1, Q.max_index + 1):
        c = Q.factor(i)
        if c.is_full:
            sides.append(Fraction(1))
            continue
        if len(c.segments) != 1 or c.segments[0][0] != 0:
            raise PreconditionError(f"factor {i} of Q is not an interval starting at 0")
        sides.append(c.segments[0][1])
    return sides


def default_shape(K: int, L: int) -> ProductSet:
    """Smallest cube U_m = (0, 2^-m)^m meeting the diameter bound, with m >= K + (L+1)^2."""
    bound = diam_q_bound(K, L)
    m = K + (L + 1) ** 2
    while diameter(u_cell(m)) > bound:
        m += 1
    return u_cell(m)


MATERIALIZE_ARC_CAP = 250_000


@dataclass(frozen=True)
class GridConstruction:
    K: int
    L: int
    Q: ProductSet

    @cached_property
    def sides(self) -> tuple[Fraction, ...]:
        return tuple(box_sides(self.Q))

    @property
    def n(self) -> int:
        return self.L + 1

    @property
    def block(self) -> range:
        return range(self.K + 1, self.K + self.n**2 + 1)

    def r(self, i: int) -> Fraction:
        return self.sides[i - 1] if i <= len(self.sides) else Fraction(1)

    def step(self, i: int) -> Fraction:
        return (1 + Fraction(1, self.n)) * self.r(i)

    def count(self, i: int) -> int:
        return math.floor(1 / self.step(i))

    @cached_property
    def a_measure(self) -> Fraction:
        m = Fraction(1)
        for i in self.block:
            m *= self.count(i) * self.r(i)
        return m

    @cached_property
    def cells_measure(self) -> Fraction:
        m = Fraction(1)
        for i in self.block:
            m *= self.count(i) * self.step(i)
        return m

    @cached_property
    def e_measure(self) -> Fraction:
        return (1 - upper_band_tail(self.n)) * self.cells_measure

    def arc_total(self) -> int:
        return sum(self.count(i) for i in self.block)

    def a_productset(self) -> ProductSet:
        """A_{K,L} with every grid arc listed; refuses very fine grids."""
        if self.arc_total() > MATERIALIZE_ARC_CAP:
            raise PreconditionError(f"grid has {self.arc_total()} arcs (cap {MATERIALIZE_ARC_CAP})")
        return ProductSet.of(
            {i: CoordSet.from_arcs(Arc(j * self.step(i), self.r(i)) for j in range(self.count(i))) for i in self.block}
        )

    def a_factor_near(self, i: int, window: CoordSet) -> CoordSet:
        """The grid arcs of A on block coordinate i that can meet ``window``."""
        r, beta, l = self.r(i), self.step(i), self.count(i)
        js = set()
        for a, b in window.segments:
            lo = max(0, math.floor((a - r) / beta))
            hi = min(l - 1, math.ceil(b / beta))
            js.update(range(lo, hi + 1))
        return CoordSet.from_arcs(Arc(j * beta, r) for j in sorted(js))

    def a_cumulative(self, i: int, x: Fraction) -> Fraction:
        """``m(A_i n [0, x))`` on block coordinate i, for 0 <= x <= 1."""
        r, beta = self.r(i), self.step(i)
        j = math.floor(x / beta)
        if j >= self.count(i):
            return self.count(i) * r
        return j * r + min(x - j * beta, r)

    def box_ratio(self, box: ProductSet) -> Fraction:
        """``m(box n A) / m(box)`` for a product set, in closed form per coordinate."""
        ratio = Fraction(1)
        for i in self.block:
            side = box.factor(i)
            hit = sum((self.a_cumulative(i, b) - self.a_cumulative(i, a) for a, b in side.segments), Fraction(0))
            ratio *= hit / side.measure
        return ratio

    def locate(self, g: Point):
        """Per block coordinate (grid point p_i, offset t_i), or None outside the cells."""
        out = []
        for i in self.block:
            beta = self.step(i)
            j = math.floor(g[i] / beta)
            t = g[i] - j * beta
            if j >= self.count(i) or t == 0:
                return None
            out.append((j * beta, t))
        return out

    def upper_count(self, g: Point) -> int | None:
        loc = self.locate(g)
        if loc is None:
            return None
        return sum(1 for i, (_, t) in zip(self.block, loc) if t >= self.r(i))

    def in_E(self, g: Point) -> bool:
        c = self.upper_count(g)
        return c is not None and c < 4 * self.n

    def witness(self, g: Point) -> Point:
        """h with g in the closure of ``h + Q`` and the shifted block box near A."""
        loc = self.locate(g)
        if loc is None or not self.in_E(g):
            raise PreconditionError(f"{point_to_json(g)} is not in E_{{K,L}}")
        h = {}
        for i in range(1, len(self.sides) + 1):
            if self.r(i) < 1:
                h[i] = g[i] - self.r(i) / 2
        for i, (p, t) in zip(self.block, loc):
            r = self.r(i)
            h[i] = p + (0 if t < r else r / self.n)
        return Point.of(h)

    def sample_E(self, rng: random.Random, count: int, extra_coords: int = 2) -> list[Point]:
        """Points of E: one cell-center point, then random cells, offsets and bands."""
        n = self.n
        top = len(self.sides) + extra_coords
        points = []
        center = {i: uniform_in(rng, Fraction(0), Fraction(1)) for i in range(1, top + 1)}
        for i in self.block:
            center[i] = (self.count(i) // 2) * self.step(i) + self.step(i) / 2
        points.append(Point.of(center))
        while len(points) < count:
            coords = {i: uniform_in(rng, Fraction(0), Fraction(1)) for i in range(1, top + 1)}
            uppers = 0
            for i in self.block:
                r, beta = self.r(i), self.step(i)
                p = rng.randrange(self.count(i)) * beta
                if rng.random() < 1 / (n + 1):
                    uppers += 1
                    coords[i] = p + r + (beta - r) * Fraction(rng.randrange(2**SAMPLE_BITS), 2**SAMPLE_BITS)
                else:
                    coords[i] = p + uniform_in(rng, Fraction(0), r)
            if uppers < 4 * n:
                points.append(Point.of(coords))
        return points


def lemma33_build(
    K: int,
    L: int,
    Q: ProductSet | None = None,
    samples: Sequence[Point] = (),
    n_samples: int = 10,
    seed: int = 0,
    materialize: bool | None = None,
) -> tuple[GridConstruction, Certificate]:
    """Build A_{K,L}, E_{K,L} from a basis box Q and certify sizes and witnesses.

    ``materialize`` lists every grid arc of A and checks its measure against
    the closed form; by default this happens when the grid is small enough.
    """
    if K < 1 or L < 1:
        raise PreconditionError("K and L must be positive")
    Q = default_shape(K, L) if Q is None else Q
    grid = GridConstruction(K, L, Q)
    n, n2 = grid.n, grid.n**2
    block_end = K + n2

    diam_Q = diameter(Q)
    bound = diam_q_bound(K, L)
    if diam_Q > bound:
        raise PreconditionError(f"diam(Q) = {diam_Q} exceeds the bound {bound}")
    sides = grid.sides
    if len(sides) < block_end:
        raise PreconditionError(f"Q constrains {len(sides)} coordinates, need at least {block_end}")

    e8_ub = exp_upper(-8)
    computed = {
        "diam_Q": diam_Q,
        "diam_Q_bound": bound,
        "support_size": Fraction(len(sides)),
        "block_end": Fraction(block_end),
        "dilated_side_max": max((1 + Fraction(1, n)) * sides[i - 1] for i in range(1, block_end + 1)),
        "dilated_side_bound": Fraction(1, n2 + 1),
        "m_A": grid.a_measure,
        "m_A_bound": Fraction(n, n + 1) ** n2,
        "exp_minus_L_lb": exp_lower(-L),
        "cells_measure": grid.cells_measure,
        "cells_bound": Fraction(n2, n2 + 1) ** n2,
        "upper_band_tail": upper_band_tail(n),
        "m_E": grid.e_measure,
        "half_inv_e_ub": half_inv_e_bounds()[1],
        "exp_minus_8_ub": e8_ub,
        "scale": Fraction(1, 2**L),
    }
    checks = [
        ("diam_Q", "<=", "diam_Q_bound"),
        ("support_size", ">=", "block_end"),
        ("dilated_side_max", "<=", "dilated_side_bound"),
        ("m_A", "<=", "m_A_bound"),
        ("m_A_bound", "<=", "exp_minus_L_lb"),
        ("cells_measure", ">=", "cells_bound"),
        ("m_E", ">=", "half_inv_e_ub"),
    ]
    if materialize is None:
        materialize = grid.arc_total() <= 5_000
    if materialize:
        computed["m_A_materialized"] = measure(grid.a_productset())
        checks.append(("m_A_materialized", "==", "m_A"))

    rng = random.Random(seed)
    points = grid.sample_E(rng, n_samples) + list(samples)
    witnesses = []
    q = Fraction(n - 1, n)
    for j, g in enumerate(points):
        in_E = grid.in_E(g)
        computed[f"w{j}_in_E"] = flag(in_E)
        checks.append((f"w{j}_in_E", "==", "1"))
        if not in_E:
            continue
        h = grid.witness(g)
        box = Q.translate(h)
        value = grid.box_ratio(box)
        computed[f"w{j}_average"] = value
        computed[f"w{j}_floor"] = q ** grid.upper_count(g)
        computed[f"w{j}_in_closure"] = flag(box.closure_contains(g))
        computed[f"w{j}_diameter"] = diameter(box)
        checks += [
            (f"w{j}_in_closure", "==", "1"),
            (f"w{j}_average", ">=", f"w{j}_floor"),
            (f"w{j}_average", ">=", "exp_minus_8_ub"),
            (f"w{j}_diameter", "<", "scale"),
        ]
        witnesses.append(witness_record(g, h, box, value))
    cert = Certificate(
        claim="lemma33",
        params={"K": K, "L": L, "Q_support": len(sides)},
        computed=computed,
        checks=checks,
        bound=computed["half_inv_e_ub"],
        witnesses=witnesses,
    )
    return grid, cert
