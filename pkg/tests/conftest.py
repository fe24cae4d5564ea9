from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from torusdiff.torus import Arc, CoordSet, Point, ProductSet

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

DENOMS = (2, 3, 4, 5, 6, 8, 12, 16)


@st.composite
def unit_rationals(draw, allow_zero=True):
    q = draw(st.sampled_from(DENOMS))
    p = draw(st.integers(0 if allow_zero else 1, q - 1))
    return Fraction(p, q)


@st.composite
def arcs(draw):
    start = draw(unit_rationals())
    q = draw(st.sampled_from(DENOMS))
    length = Fraction(draw(st.integers(1, q)), q)
    return Arc(start, length)


@st.composite
def coordsets(draw):
    return CoordSet.from_arcs(draw(st.lists(arcs(), min_size=1, max_size=2)))


@st.composite
def productsets(draw, max_coord=3):
    idx = draw(st.sets(st.integers(1, max_coord), max_size=max_coord))
    return ProductSet.of({i: draw(coordsets()) for i in idx})


@st.composite
def points(draw, max_coord=4):
    return Point.of({i: draw(unit_rationals()) for i in range(1, max_coord + 1)})


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
