import json
from fractions import Fraction as F

import pytest
from hypothesis import given

from conftest import points, productsets
from torusdiff.certificate import Certificate, from_dict, reverify
from torusdiff.counterexamples import lemma33_build, prop31_certificate, prop42_certificate, theorem31_assemble
from torusdiff.serialize import (
    function_from_json,
    function_to_json,
    point_from_json,
    point_to_json,
    productset_from_json,
    productset_to_json,
    rational_str,
    region_from_json,
    region_to_json,
)
from torusdiff.torus import EMPTY_SET, Region, SimpleFunction


def test_rational_strings():
    assert rational_str(F(0)) == "0/1"
    assert rational_str(F(6, 4)) == "3/2"


@given(points())
def test_point_round_trip(g):
    assert point_from_json(json.loads(json.dumps(point_to_json(g)))) == g


@given(productsets())
def test_productset_round_trip(s):
    assert productset_from_json(json.loads(json.dumps(productset_to_json(s)))) == s


def test_empty_productset_round_trip():
    assert productset_from_json(productset_to_json(EMPTY_SET)).empty


@given(productsets(), productsets())
def test_region_and_function_round_trip(a, b):
    r = Region.of(a, b)
    assert region_from_json(region_to_json(r)) == r
    f = SimpleFunction.indicator(a, F(3, 2)) - SimpleFunction.indicator(b)
    assert function_from_json(function_to_json(f)) == f


def test_verdict_follows_checks():
    c = Certificate("toy", {}, {"a": F(1, 3), "b": F(1, 2)}, [("a", "<", "b")], F(1, 2))
    assert c.verdict
    bad = Certificate("toy", {}, {"a": F(1, 3)}, [("a", ">=", "1/2")], F(1, 2))
    assert not bad.verdict and bad.failed_checks() == [("a", ">=", "1/2")]


def test_unknown_term_rejected():
    with pytest.raises(ValueError):
        Certificate("toy", {}, {}, [("missing", "<", "1")], F(1))


def test_child_failure_propagates():
    bad = Certificate("child", {}, {}, [("1", "<", "0")], F(0))
    parent = Certificate("parent", {}, {}, [], F(0), children=[bad])
    assert not parent.verdict


@pytest.mark.parametrize(
    "make",
    [
        lambda: prop31_certificate(3),
        lambda: prop42_certificate(2),
        lambda: lemma33_build(1, 1, n_samples=2)[1],
        lambda: theorem31_assemble(F(1, 2), 2, n_samples=1),
    ],
)
def test_certificates_round_trip(make):
    cert = make()
    text = cert.to_json()
    data = json.loads(text)
    assert reverify(data) == cert.verdict
    assert from_dict(data).to_json() == text
    assert make().to_json() == text  # deterministic


def test_tampering_is_detected():
    data = json.loads(prop31_certificate(2).to_json())
    data["computed"]["weak_ratio"] = "0/1"
    assert not reverify(data)
