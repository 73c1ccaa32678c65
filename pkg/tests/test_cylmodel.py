import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from klrwcyl.cylmodel import (
    DivisorData,
    check_lift,
    enumerate_lift_divisors,
    validate_cover,
    validate_divisor,
)
from klrwcyl.errors import InvalidInput, UnknownNode
from klrwcyl.quiver import make_quiver


def _cover(**kw):
    return validate_cover(kw)


def test_enumeration_for_three_pairs():
    c = _cover(pairs=[["p1", "q1"], ["p2", "q2"], ["p3", "q3"]])
    ds = enumerate_lift_divisors(c)
    assert len(ds) == 8
    assert all(check_lift(c, d).accepted for d in ds)


def test_empty_cover_has_the_zero_divisor():
    ds = enumerate_lift_divisors(_cover())
    assert [d.orders for d in ds] == [{}]


@pytest.mark.parametrize(
    "orders, condition",
    [
        ({"r1": -1, "f1": 1, "z": 2}, 0),
        ({"r1": -2, "f1": 1}, 1),
        ({"r1": 0, "f1": 1}, 1),
        ({"r1": -1, "f1": 2}, 2),
        ({"r1": -1, "f1": 1, "p": 1, "q": 1}, 3),
        ({"r1": -1, "f1": 1}, 3),
        ({"r1": -1, "f1": 1, "q": -1}, 3),
    ],
)
def test_violations_report_first_condition(orders, condition):
    c = _cover(root=["r1"], framing=["f1"], pairs=[["p", "q"]])
    rep = check_lift(c, DivisorData(orders))
    assert not rep.accepted
    assert rep.condition == condition
    assert rep.text() == f"VIOLATION: condition {condition}"


def test_accepted_divisor():
    c = _cover(root=["r1"], framing=["f1"], pairs=[["p", "q"]])
    rep = check_lift(c, validate_divisor({"orders": {"r1": -1, "f1": 1, "q": 1, "p": 0}}))
    assert rep.accepted and rep.text() == "ACCEPT"


@pytest.mark.parametrize(
    "raw",
    [
        {"root": ["a"], "framing": ["a"]},
        {"pairs": [["a", "b", "c"]]},
        {"pairs": [["a", "a"]]},
        {"sheets": ["S1"]},
        {"root": ["a"], "sheets": {"S": "1"}, "points": {"b": "S"}},
        {"root": ["a"], "sheets": {"S": "1"}, "points": {"a": "T"}},
        [],
    ],
)
def test_bad_covers(raw):
    with pytest.raises(InvalidInput):
        validate_cover(raw)


def test_cover_checks_quiver_labels():
    q = make_quiver(["1", "2"], [("1", "2")], {"1": 1, "2": 1})
    ok = {"sheets": {"S": "1", "T": "2"}, "points": {"p": "S", "q": "T"}, "pairs": [["p", "q"]]}
    assert validate_cover(ok, q).pairs == (("p", "q"),)
    with pytest.raises(InvalidInput):
        validate_cover({**ok, "pairs": [["q", "p"]]}, q)
    with pytest.raises(UnknownNode):
        validate_cover({"sheets": {"S": "9"}}, q)


@pytest.mark.parametrize("raw", [[], {"orders": []}, {"orders": {"a": 1.5}}, {"orders": {"a": True}}])
def test_bad_divisors(raw):
    with pytest.raises(InvalidInput):
        validate_divisor(raw)


def test_json_roundtrip():
    raw = {"sheets": {"S": "1"}, "root": ["r"], "framing": ["f"], "pairs": [["p", "q"]], "points": {
        "r": "S", "f": "S", "p": "S", "q": "S"}}
    c = validate_cover(raw)
    assert validate_cover(c.to_json()) == c
    d = DivisorData({"r": -1, "x": 0})
    assert d.orders == {"r": -1}
    assert validate_divisor(d.to_json()) == d
    assert d.text() == '{"orders": {"r": -1}}'


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 4))
def test_enumerated_divisors_are_accepted_and_distinct(r, f, p):
    c = _cover(
        root=[f"r{k}" for k in range(r)],
        framing=[f"f{k}" for k in range(f)],
        pairs=[[f"p{k}", f"q{k}"] for k in range(p)],
    )
    ds = enumerate_lift_divisors(c)
    assert len(ds) == 2 ** p
    assert len({d.text() for d in ds}) == len(ds)
    assert all(check_lift(c, d).accepted for d in ds)
