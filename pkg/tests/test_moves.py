import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import diagrams
from twistkh.bracket import jones_hat
from twistkh.codes import parse
from twistkh.generate import random_diagrams, random_move_pair, random_move_pairs
from twistkh.homology import homology
from twistkh.khovanov import build_complex
from twistkh.moves import (VALID_TRIANGLES, MoveNotApplicable, apply_r1, apply_r2, apply_r3,
                           find_r3_triangles, insert_triangle, r2_pairs, remove_r1, remove_r2)


def test_first_kink():
    assert apply_r1(parse("@1"), (0, 0), True, 1).serialize() == "O1+U1+"
    assert apply_r1(parse("@1"), (0, 0), False, -1).serialize() == "U1-O1-"


def test_r1_round_trip():
    t = parse("O1+U2+O3+U1+O2+U3+")
    k = apply_r1(t, (0, 2))
    assert k.n == 4
    assert remove_r1(k, 4) == t
    with pytest.raises(MoveNotApplicable):
        remove_r1(t, 1)


def test_r2_round_trip_and_detection():
    t = parse("O1+U2+O3+U1+O2+U3+")
    for parallel in (True, False):
        e = apply_r2(t, (0, 1), (0, 4), parallel, -1)
        assert e.n == 5
        assert (4, 5) in r2_pairs(e)
        assert remove_r2(e, 4, 5).same_as(t)
    with pytest.raises(MoveNotApplicable):
        remove_r2(t, 1, 2)


def test_r2_on_free_loop():
    e = apply_r2(parse("O1+U1+@1"), (0, 0), (1, 0))
    assert e.num_components == 2 and e.free_loops == 0
    assert homology(build_complex(e)) == homology(build_complex(parse("O1+U1+@1")))


def test_triangle_table():
    # 6 height orders x 8 orientations x before/after
    assert len(VALID_TRIANGLES) == 48


def test_r3_is_involution():
    host = parse("O1+U2+O3+U1+O2+U3+")
    d, tri = insert_triangle(host, [(0, 0), (0, 3), (0, 5)])
    e = apply_r3(d, tri)
    assert e.n == d.n
    assert apply_r3(e, tri.crossings).same_as(d)


def test_r3_rejects_non_triangle():
    with pytest.raises(MoveNotApplicable):
        apply_r3(parse("O1+U2+O3+U1+O2+U3+"), (1, 2, 3))


def test_r3_six_crossing_homology():
    host = parse("O1+O2+U1+U2+")
    d, tri = insert_triangle(host, [(0, 1), (0, 2), (0, 3)], heights=(0, 2, 1), flips=(1, -1, 1))
    assert d.n == 5
    d, tri = insert_triangle(parse("O1+U1+"), [(0, 0), (0, 1), (0, 1)])
    assert d.n == 4
    big, tri = insert_triangle(parse("O1-U2-O3-U1-O2-U3-"), [(0, 0), (0, 2), (0, 4)])
    assert big.n == 6
    assert homology(build_complex(apply_r3(big, tri))) == homology(build_complex(big))


@pytest.mark.parametrize("kind", ["R1", "R2", "R3"])
def test_random_pairs_shape(kind):
    rng = random.Random(1)
    for _ in range(10):
        d, e = random_move_pair(rng, kind, 7)
        assert e.n - d.n == {"R1": 1, "R2": 2, "R3": 0}[kind]
        assert max(d.n, e.n) <= 7


def test_random_diagrams_deterministic():
    a = [d.serialize() for d in random_diagrams(9, 20, 8)]
    b = [d.serialize() for d in random_diagrams(9, 20, 8)]
    assert a == b and all(1 <= parse(c).n <= 8 for c in a)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_moves_preserve_homology(seed):
    for kind, d, e in random_move_pairs(seed, 3, 6):
        assert jones_hat(d) == jones_hat(e)
        assert homology(build_complex(d)) == homology(build_complex(e))


@settings(max_examples=30, deadline=None)
@given(diagrams(max_n=5))
def test_found_triangles_apply(d):
    for tri in find_r3_triangles(d):
        e = apply_r3(d, tri)
        assert jones_hat(e) == jones_hat(d)
