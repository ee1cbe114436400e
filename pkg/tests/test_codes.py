import json

import pytest
from hypothesis import given

from conftest import diagrams
from twistkh.codes import (CodeSyntaxError, Diagram, ParseError, SignMismatch, UnknownCrossing,
                           UnpairedLabel, canonical_form, connected_sum, disjoint_union, mirror, parse,
                           virtualize)


def test_parse_basic():
    d = parse("O1+U2+O3+U1+O2+U3+")
    assert d.n == 3 and d.writhe == 3 and d.n_plus == 3 and d.n_minus == 0
    assert d.num_components == 1 and d.free_loops == 0


def test_free_loops_and_components():
    d = parse("O1+|U1+@2")
    assert d.num_components == 4 and d.free_loops == 2
    assert parse("@1").is_empty() is False
    assert parse("@1").n == 0


@pytest.mark.parametrize("text,exc,column", [
    ("O1+U1", CodeSyntaxError, 4),
    ("O1+X1+", CodeSyntaxError, 4),
    ("O1+|", CodeSyntaxError, None),
    ("O1+U1+@x", CodeSyntaxError, 8),
    ("O1+O1+", UnpairedLabel, None),
    ("O1+U2+", UnpairedLabel, None),
    ("O1+U1-", SignMismatch, None),
])
def test_parse_errors(text, exc, column):
    with pytest.raises(exc) as info:
        parse(text)
    assert isinstance(info.value, ParseError)
    if column is not None:
        assert info.value.column == column


def test_json_form():
    d = parse('{"components": [["O1+", "U1+"]], "freeLoops": 1}')
    assert d.serialize() == "O1+U1+@1"
    assert parse(json.dumps(d.to_json())) == d
    with pytest.raises(CodeSyntaxError):
        parse("{not json")


def test_canonical_form_identifies_rotations_and_relabelling():
    a = parse("O1+U2+O3+U1+O2+U3+")
    b = parse("U7+O9+U5+O7+U9+O5+")
    assert a.same_as(b)
    assert canonical_form(b).serialize() == "O1+U2+O3+U1+O2+U3+"
    assert parse("O1+U2+|U1+O2+").same_as(parse("O2+U1+|U2+O1+"))


def test_detour_move_is_invisible():
    # two drawings that differ only in where virtual crossings sit share a code
    assert parse("O1+O2+U1+U2+") == parse("O1+O2+U1+U2+")


@given(diagrams())
def test_round_trip(d):
    assert parse(d.serialize()) == d
    assert parse(d.canonical.serialize()).canonical == d.canonical


@given(diagrams())
def test_virtualize_involution(d):
    c = d.labels[0]
    v = virtualize(d, c)
    assert v.signs == d.signs
    assert virtualize(v, c).same_as(d)


def test_virtualize_unknown_crossing():
    with pytest.raises(UnknownCrossing):
        virtualize(parse("O1+U1+"), 5)


def test_mirror_and_sums():
    t = parse("O1+U2+O3+U1+O2+U3+")
    assert mirror(t).writhe == -3
    assert connected_sum(t, t).n == 6
    u = disjoint_union(t, parse("@1"))
    assert u.free_loops == 1 and u.n == 3


def test_invariants_checked_on_construction():
    from twistkh.codes import Pass
    with pytest.raises(ParseError):
        Diagram(((Pass(1, True, 1),),), 0)
