"""Rational brackets around e^x for rational x.

Inequalities against e^-8, e^-L or 1/(2e) are decided by comparing exact
rationals with these brackets: ``q > e^x`` is certified by ``q >= UB`` and
``q < e^x`` by ``q <= LB``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .torus import RationalLike, as_rational


def _exp_taylor(y: Fraction, tol: Fraction) -> tuple[Fraction, Fraction]:
    # y > 0; partial sum S_N < e^y < S_N + t_{N+1} / (1 - y/(N+2)) once N+2 > y
    term = Fraction(1)
    total = Fraction(1)
    k = 0
    while True:
        k += 1
        term = term * y / k
        total += term
        nxt = term * y / (k + 1)
        if k + 2 > y:
            remainder = nxt / (1 - y / (k + 2))
            if remainder <= tol:
                return total, total + remainder


def exp_bracket(x: RationalLike, tol: RationalLike) -> tuple[Fraction, Fraction]:
    """Exact ``lo <= e^x <= hi`` with ``hi - lo <= tol`` (strict unless x == 0)."""
    x, tol = as_rational(x), as_rational(tol)
    if x == 0:
        return Fraction(1), Fraction(1)
    if x > 0:
        return _exp_taylor(x, tol)
    lo, hi = _exp_taylor(-x, tol)
    # 1/lo - 1/hi = (hi - lo)/(lo hi) <= hi - lo since lo > 1
    return 1 / hi, 1 / lo


def _grid_exponent(v: Fraction, digits: int) -> int:
    e = math.floor(math.log10(float(v))) - digits + 1
    # correct possible float misrounding so that floor(v / 10^e) has `digits` digits
    while math.floor(v / Fraction(10) ** e) >= 10**digits:
        e += 1
    while math.floor(v / Fraction(10) ** e) < 10 ** (digits - 1):
        e -= 1
    return e


@lru_cache(maxsize=None)
def certified_exp_bounds(x: RationalLike, digits: int = 12) -> tuple[Fraction, Fraction]:
    """Decimal rationals ``LB < e^x < UB`` with ``UB - LB <= 10^-digits``.

    The bracket is rounded outward to ``digits`` significant decimals (or to
    ``10^-digits`` absolute, whichever is finer). ``x == 0`` returns (1, 1).

    >>> certified_exp_bounds(-8, 12)
    (Fraction(167731313951, 500000000000000), Fraction(335462627903, 1000000000000000))
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    x = as_rational(x)
    if x == 0:
        return Fraction(1), Fraction(1)
    lo, _ = exp_bracket(x, Fraction(1, 10**6) * (Fraction(1, 2) if x < 0 else 1))
    e = min(_grid_exponent(lo, digits), -digits)
    unit = Fraction(10) ** e
    tol = unit / 10
    while True:
        lo, hi = exp_bracket(x, tol)
        a, b = math.floor(lo / unit), math.ceil(hi / unit)
        if b - a == 1:
            return a * unit, b * unit
        tol /= 10


def exp_upper(x: RationalLike, digits: int = 12) -> Fraction:
    return certified_exp_bounds(as_rational(x), digits)[1]


def exp_lower(x: RationalLike, digits: int = 12) -> Fraction:
    return certified_exp_bounds(as_rational(x), digits)[0]


def half_inv_e_bounds(digits: int = 12) -> tuple[Fraction, Fraction]:
    """Bracket of 1/(2e), from the bracket of e^-1 halved."""
    lo, hi = certified_exp_bounds(Fraction(-1), digits)
    return lo / 2, hi / 2
