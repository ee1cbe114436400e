import random

import pytest
from hypothesis import given, settings

from conftest import diagrams
from twistkh.atoms import EmptyDiagram, atoms_equal, build_atom, genus, orientable
from twistkh.codes import connected_sum, parse, virtualize
from twistkh.generate import random_diagram
from twistkh.states import CubeGeometry

FROZEN = {
    # code: (euler char, orientable, genus, white cells, black cells)
    "O1+U1+": (2, True, 0, 2, 1),
    "O1-U1-": (2, True, 0, 1, 2),
    "O1+U2+O3+U1+O2+U3+": (2, True, 0, 2, 3),
    "O1-U2-O3+U4+O2-U1-O4+U3+": (2, True, 0, 3, 3),
    "O1+O2+U1+U2+": (1, False, 1, 1, 2),
    "O1+|U1+": (1, False, 1, 1, 1),
    "U5-U4-O1+O6-U1+O3+O2+O5-O4-U6-U2+U3+": (-2, False, 4, 3, 1),
}


@pytest.mark.parametrize("code,expected", list(FROZEN.items()))
def test_frozen_atoms(code, expected):
    a = build_atom(parse(code))
    assert (a.euler_char, a.orientable, a.genus, len(a.white_cells), len(a.black_cells)) == expected
    assert genus(a) == a.genus and orientable(a) == a.orientable


def test_empty_diagram():
    with pytest.raises(EmptyDiagram):
        build_atom(parse("@2"))


def test_equality():
    t = build_atom(parse("O1+U2+O3+U1+O2+U3+"))
    f8 = build_atom(parse("O1-U2-O3+U4+O2-U1-O4+U3+"))
    assert atoms_equal(t, t)
    assert not atoms_equal(t, f8)
    assert t == build_atom(parse("O1+U2+O3+U1+O2+U3+").canonical)


def test_connected_sum_of_alternating_is_sphere():
    t = parse("O1+U2+O3+U1+O2+U3+")
    f8 = parse("O1-U2-O3+U4+O2-U1-O4+U3+")
    a = build_atom(connected_sum(t, f8))
    assert a.orientable and a.genus == 0 and a.euler_char == 2


def test_json_dump():
    data = build_atom(parse("O1+O2+U1+U2+")).to_json()
    assert set(data) == {"vertices", "edges", "blackCells", "whiteCells", "eulerChar", "orientable", "genus"}
    assert data["eulerChar"] == 1


@settings(max_examples=80, deadline=None)
@given(diagrams(max_n=6))
def test_euler_char_two_ways(d):
    a = build_atom(d)
    geom = CubeGeometry(d)
    assert a.euler_char == geom.gamma(0) + geom.gamma(geom.num_states - 1) - d.n
    assert a.euler_char == len(a.vertices) - len(a.frame_edges) + len(a.white_cells) + len(a.black_cells)


@settings(max_examples=80, deadline=None)
@given(diagrams(max_n=6))
def test_genus_rules(d):
    a = build_atom(d)
    for chi, g, o in a.components:
        assert g == ((2 - chi) // 2 if o else 2 - chi)
        if o:
            assert chi % 2 == 0
    assert a.genus >= 0


@settings(max_examples=80, deadline=None)
@given(diagrams(max_n=6))
def test_checkerboard(d):
    a = build_atom(d)
    white = sorted(arc for cell in a.white_cells for arc, _ in cell)
    black = sorted(arc for cell in a.black_cells for arc, _ in cell)
    assert white == black == list(range(len(a.frame_edges)))


@settings(max_examples=50, deadline=None)
@given(diagrams(max_n=5))
def test_virtualization_keeps_atom(d):
    a = build_atom(d)
    for c in d.labels:
        assert build_atom(virtualize(d, c)) == a


def test_relabelling_keeps_atom():
    rng = random.Random(3)
    for _ in range(30):
        d = random_diagram(rng, 5)
        comp = d.components[0]
        k = rng.randrange(len(comp))
        rotated = type(d)((comp[k:] + comp[:k],), 0)
        assert build_atom(rotated) == build_atom(d)
