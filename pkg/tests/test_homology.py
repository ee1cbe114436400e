from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import diagrams
from oracles import ClassicalCube
from twistkh.atoms import build_atom
from twistkh.bracket import jones_hat
from twistkh.codes import parse
from twistkh.homology import (HomologyTable, InconsistentComplex, betti, compute_homology, homology,
                              homology_over_field, occupied_diagonals, tables_equal, thickness,
                              uct_prediction)
from twistkh.khovanov import Ring, build_complex

# integral tables; classical ones agree with published Khovanov homology
FROZEN = {
    "@1": {(0, -1): (1, ()), (0, 1): (1, ())},
    "O1+U2+O3+U1+O2+U3+": {(0, 1): (1, ()), (0, 3): (1, ()), (2, 5): (1, ()), (3, 7): (0, (2,)),
                           (3, 9): (1, ())},
    "O1-U2-O3-U1-O2-U3-": {(-3, -9): (1, ()), (-2, -7): (0, (2,)), (-2, -5): (1, ()),
                           (0, -3): (1, ()), (0, -1): (1, ())},
    "O1-U2-O3+U4+O2-U1-O4+U3+": {(-2, -5): (1, ()), (-1, -3): (0, (2,)), (-1, -1): (1, ()),
                                 (0, -1): (1, ()), (0, 1): (1, ()), (1, 1): (1, ()), (2, 3): (0, (2,)),
                                 (2, 5): (1, ())},
    "O1+U2+|U1+O2+": {(0, 0): (1, ()), (0, 2): (1, ()), (2, 4): (1, ()), (2, 6): (1, ())},
    "O1+O2+U1+U2+": {(0, 1): (1, ()), (0, 3): (1, ()), (1, 2): (1, ()), (2, 4): (0, (2,)),
                     (2, 6): (1, ())},
    "O1+|U1+": {(0, 0): (1, ()), (0, 2): (1, ()), (1, 1): (1, ()), (1, 3): (1, ())},
}


@pytest.mark.parametrize("code,groups", list(FROZEN.items()))
def test_frozen_tables(code, groups):
    assert homology(build_complex(parse(code))).groups == groups


@pytest.mark.parametrize("code", ["O1+U2+O3+U1+O2+U3+", "O1-U2-O3+U4+O2-U1-O4+U3+", "O1+U2+|U1+O2+"])
def test_classical_matches_dense_oracle(code):
    d = parse(code)
    assert homology(build_complex(d)).groups == ClassicalCube(d).homology()


def test_trefoil_single_two_torsion():
    t = homology(build_complex(parse("O1+U2+O3+U1+O2+U3+")))
    assert t.torsion_entries() == [(3, 7, 2)]
    assert t.total_rank() == 4


def test_field_homology_and_uct_on_trefoil():
    cx = build_complex(parse("O1+U2+O3+U1+O2+U3+"))
    z = homology(cx)
    q = homology_over_field(cx, 0)
    f2 = homology_over_field(cx, 2)
    assert q.total_rank() == 4
    # each Z/2 adds one F2 class at its own and the previous bidegree
    assert f2.total_rank() == q.total_rank() + 2
    assert betti(f2) == uct_prediction(z, 2)
    assert betti(homology_over_field(cx, 3)) == uct_prediction(z, 3)


def test_virtual_trefoil_z2_matches_unsigned_cube():
    d = parse("O1+O2+U1+U2+")
    direct = betti(homology_over_field(build_complex(d), 2))
    assert direct == ClassicalCube(d, signed=False).betti_mod2()


def test_compute_homology_dispatch():
    cx = build_complex(parse("O1+U1+"), "z2")
    assert compute_homology(cx).ring == "Z2"
    cx = build_complex(parse("O1+U2+O3+U1+O2+U3+"), "frob:1,0")
    t = compute_homology(cx)
    assert not t.graded and t.groups == {(0, None): (2, ())}


def test_empty_diagram_has_one_generator():
    cx = build_complex(parse(""))
    assert homology(cx).groups == {(0, 0): (1, ())}
    assert homology_over_field(cx, 0).euler_characteristic() == jones_hat(parse(""))


def test_inconsistent_complex_detected():
    cx = build_complex(parse("O2-O3+U1-U3+O4+U4+O1-U2-"), twisted=False, check=False)
    with pytest.raises(InconsistentComplex):
        homology(cx)


def test_json_and_render():
    t = homology(build_complex(parse("O1+U2+O3+U1+O2+U3+")))
    data = t.to_json()
    assert data["ring"] == "Z"
    assert {"i": 3, "j": 7, "free": 0, "torsion": [2]} in data["groups"]
    assert HomologyTable.from_json(data) == t
    text = t.render()
    assert "Z2" in text and text.splitlines()[0].startswith("  j\\i")


def test_thickness_examples():
    unknot = homology(build_complex(parse("@1")))
    r = thickness(unknot, 0)
    assert r.diagonals == (-1, 1) and r.thickness == 2 and not r.violation
    tref = parse("O1+U2+O3+U1+O2+U3+")
    r = thickness(homology(build_complex(tref)), build_atom(tref))
    assert r.thickness == 2 and r.bound == 2
    vt = parse("O1+O2+U1+U2+")
    r = thickness(homology(build_complex(vt)), build_atom(vt))
    assert r.diagonals == (0, 1, 2, 3) and r.occupied == 4
    assert r.thickness == Fraction(5, 2) and r.bound == 3 and not r.violation


def test_tables_equal():
    t = homology(build_complex(parse("O1+U1+")))
    assert tables_equal([t, homology(build_complex(parse("@1")))])


@settings(max_examples=60, deadline=None)
@given(diagrams(max_n=5))
def test_euler_and_uct_properties(d):
    cx = build_complex(d)
    z = homology(cx)
    assert z.euler_characteristic() == jones_hat(d)
    assert homology_over_field(cx, 0).euler_characteristic() == jones_hat(d)
    for p in (2, 3, 5):
        assert betti(homology_over_field(cx, p)) == uct_prediction(z, p)
    assert set(occupied_diagonals(z)) == {j - 2 * i for i, j in z.groups}


@settings(max_examples=40, deadline=None)
@given(diagrams(max_n=5))
def test_orientable_atoms_match_classical_cube(d):
    if not build_atom(d).orientable:
        return
    assert homology(build_complex(d)).groups == ClassicalCube(d).homology()
