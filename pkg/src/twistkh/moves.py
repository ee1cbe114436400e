"""Reidemeister moves on signed Gauss codes.

A *location* is ``(component, gap)``: inserting at gap ``g`` puts new
passes before pass ``g`` of the component (gap 0 and gap ``len`` coincide
cyclically).  A component index ``len(d.components) + f`` addresses free
loop ``f``, which then becomes a component.

Virtual detours let any two arcs be brought next to each other, so R1 and
R2 apply at any locations.  R3 applies to three strand segments forming a
triangle; valid triangles are read off an explicit planar configuration of
three lines, so the move is correct by construction.
"""

from __future__ import annotations

from itertools import permutations, product
from typing import NamedTuple, Sequence

from .codes import Diagram, Pass


class MoveNotApplicable(ValueError):
    pass


Location = tuple[int, int]


def _next_label(d: Diagram) -> int:
    return max(d.labels, default=0) + 1


def _insert(d: Diagram, inserts: Sequence[tuple[Location, Sequence[Pass]]]) -> Diagram:
    """Insert pass lists at locations; lists at the same gap keep their order."""
    ncomp = len(d.components)
    comps = [list(c) for c in d.components]
    new_loops: dict[int, list[Pass]] = {}
    by_comp: dict[int, list[tuple[int, int, Sequence[Pass]]]] = {}
    for order, ((c, g), passes) in enumerate(inserts):
        if c >= ncomp:
            f = c - ncomp
            if f >= d.free_loops:
                raise MoveNotApplicable(f"no free loop {f}")
            new_loops.setdefault(f, []).extend(passes)
            continue
        m = len(comps[c])
        if not 0 <= g <= m:
            raise MoveNotApplicable(f"gap {g} out of range for component {c}")
        by_comp.setdefault(c, []).append((g % m if m else 0, order, passes))
    for c, items in by_comp.items():
        # insert from the back so earlier gaps stay valid; same gap keeps insertion order
        for g, _, passes in sorted(items, key=lambda x: (-x[0], -x[1])):
            comps[c][g:g] = list(passes)
    out = [tuple(c) for c in comps]
    out += [tuple(new_loops[f]) for f in sorted(new_loops)]
    return Diagram(tuple(out), d.free_loops - len(new_loops))


def _remove(d: Diagram, labels: set[int]) -> Diagram:
    comps = []
    freed = 0
    for comp in d.components:
        kept = tuple(p for p in comp if p.crossing not in labels)
        if kept:
            comps.append(kept)
        else:
            freed += 1
    return Diagram(tuple(comps), d.free_loops + freed)


def _positions(d: Diagram, label: int) -> list[tuple[int, int]]:
    return [(ci, j) for ci, comp in enumerate(d.components) for j, p in enumerate(comp) if p.crossing == label]


def _adjacent(d: Diagram, a: tuple[int, int], b: tuple[int, int]) -> bool:
    if a[0] != b[0]:
        return False
    m = len(d.components[a[0]])
    return (a[1] + 1) % m == b[1] or (b[1] + 1) % m == a[1]


# -- R1 -----------------------------------------------------------------

def apply_r1(d: Diagram, location: Location, over_first: bool = True, sign: int = 1) -> Diagram:
    """Add a kink; ``over_first`` and ``sign`` pick one of the four curls."""
    x = _next_label(d)
    return _insert(d, [(location, (Pass(x, over_first, sign), Pass(x, not over_first, sign)))])


def remove_r1(d: Diagram, label: int) -> Diagram:
    pos = _positions(d, label)
    if len(pos) != 2 or not _adjacent(d, *pos):
        raise MoveNotApplicable(f"crossing {label} is not a kink")
    return _remove(d, {label})


# -- R2 -----------------------------------------------------------------

def apply_r2(d: Diagram, over_at: Location, under_at: Location, parallel: bool = True,
             sign: int = 1) -> Diagram:
    """Push the strand at ``under_at`` under the strand at ``over_at``."""
    a = _next_label(d)
    b = a + 1
    top = (Pass(a, True, sign), Pass(b, True, -sign))
    if parallel:
        bottom = (Pass(a, False, sign), Pass(b, False, -sign))
    else:
        bottom = (Pass(b, False, -sign), Pass(a, False, sign))
    return _insert(d, [(over_at, top), (under_at, bottom)])


def r2_pairs(d: Diagram) -> list[tuple[int, int]]:
    """Crossing pairs removable by an inverse R2."""
    out = []
    labels = d.labels
    for i, a in enumerate(labels):
        for b in labels[i + 1:]:
            if _r2_removable(d, a, b):
                out.append((a, b))
    return out


def _r2_removable(d: Diagram, a: int, b: int) -> bool:
    if d.signs[a] != -d.signs[b]:
        return False
    pa, pb = _positions(d, a), _positions(d, b)

    def passage(pos):
        return d.components[pos[0]][pos[1]].over

    for over in (True, False):
        xa = [p for p in pa if passage(p) == over][0]
        xb = [p for p in pb if passage(p) == over][0]
        if not _adjacent(d, xa, xb):
            return False
    return True


def remove_r2(d: Diagram, a: int, b: int) -> Diagram:
    if a not in d.signs or b not in d.signs or not _r2_removable(d, a, b):
        raise MoveNotApplicable(f"crossings {a}, {b} do not bound an R2 bigon")
    return _remove(d, {a, b})


# -- R3 -----------------------------------------------------------------

def _cross(u, v) -> float:
    return u[0] * v[1] - u[1] * v[0]


def _line_configuration(heights: Sequence[int], flips: Sequence[int], after: bool):
    """Three oriented lines forming a triangle, as three two-pass segments.

    Line ``i`` carries the crossings it makes with the other two lines, in
    the order met.  Crossing ``{i, j}`` is named by the pair; the higher
    line passes over.  ``after=True`` slides line 0 across the opposite
    vertex, which reverses the order along every line.
    """
    s3 = 3 ** 0.5
    base = [((0.0, 1.2 if after else 0.0), (1.0, 0.0)),
            ((0.0, 0.0), (0.5, s3 / 2)),
            ((1.0, 0.0), (-0.5, s3 / 2))]
    lines = [(p, (f * v[0], f * v[1])) for (p, v), f in zip(base, flips)]
    segs = []
    for i, (p, v) in enumerate(lines):
        hits = []
        for j, (q, w) in enumerate(lines):
            if i == j:
                continue
            # p + s v = q + r w
            den = _cross(v, w)
            s = _cross((q[0] - p[0], q[1] - p[1]), w) / den
            over = heights[i] > heights[j]
            vo, vu = (v, w) if over else (w, v)
            sign = 1 if _cross(vo, vu) > 0 else -1
            hits.append((s, (frozenset((i, j)), over, sign)))
        hits.sort(key=lambda x: x[0])
        segs.append(tuple(h for _, h in hits))
    return tuple(segs)


def _valid_triangles() -> frozenset:
    out = set()
    for heights in permutations(range(3)):
        for flips in product((1, -1), repeat=3):
            for after in (False, True):
                out.add(_line_configuration(heights, flips, after))
    return frozenset(out)


VALID_TRIANGLES = _valid_triangles()


class Triangle(NamedTuple):
    crossings: tuple[int, int, int]
    segments: tuple[tuple[tuple[int, int], tuple[int, int]], ...]  # ((comp, pos), (comp, pos)) x3


def _segment_candidates(d: Diagram, labels: set[int]):
    segs = []
    for ci, comp in enumerate(d.components):
        m = len(comp)
        if m < 2:
            continue
        for j in range(m):
            k = (j + 1) % m
            if m == 2 and j == 1:
                break
            p, q = comp[j], comp[k]
            if p.crossing != q.crossing and p.crossing in labels and q.crossing in labels:
                segs.append(((ci, j), (ci, k)))
    return segs


def _matches(d: Diagram, segs) -> bool:
    passes = [tuple(d.components[c][j] for c, j in seg) for seg in segs]
    for order in permutations(range(3)):
        # segment order[i] plays line i
        line_of = {}
        for line, si in enumerate(order):
            for p in passes[si]:
                line_of.setdefault(p.crossing, set()).add(line)
        if any(len(v) != 2 for v in line_of.values()):
            return False
        cand = []
        for si in order:
            cand.append(tuple((frozenset(line_of[p.crossing]), p.over, p.sign) for p in passes[si]))
        if tuple(cand) in VALID_TRIANGLES:
            return True
    return False


def find_r3_triangles(d: Diagram, crossings: Sequence[int] | None = None) -> list[Triangle]:
    labels = list(d.labels if crossings is None else crossings)
    out = []
    from itertools import combinations
    for trio in combinations(sorted(labels), 3):
        tset = set(trio)
        segs = _segment_candidates(d, tset)
        for combo in combinations(segs, 3):
            used = [pos for seg in combo for pos in seg]
            if len(set(used)) != 6:
                continue
            if _matches(d, combo):
                out.append(Triangle(trio, tuple(combo)))
                break
    return out


def apply_r3(d: Diagram, triangle: Triangle | Sequence[int]) -> Diagram:
    """Slide one strand of a triangle across the opposite crossing."""
    if not isinstance(triangle, Triangle):
        found = find_r3_triangles(d, triangle)
        if not found:
            raise MoveNotApplicable(f"crossings {tuple(triangle)} do not form an R3 triangle")
        triangle = found[0]
    elif not _matches(d, triangle.segments):
        raise MoveNotApplicable("segments do not form an R3 triangle")
    comps = [list(c) for c in d.components]
    for (c1, j1), (c2, j2) in triangle.segments:
        comps[c1][j1], comps[c2][j2] = d.components[c2][j2], d.components[c1][j1]
    return Diagram(tuple(tuple(c) for c in comps), d.free_loops)


def insert_triangle(d: Diagram, locations: Sequence[Location], heights=(2, 1, 0), flips=(1, 1, 1)) -> tuple[Diagram, Triangle]:
    """Splice a valid R3 triangle into ``d`` at three locations.

    The result is simply a bigger diagram that contains a triangle to which
    :func:`apply_r3` applies.
    """
    segs = _line_configuration(heights, flips, False)
    base = _next_label(d)
    names = {frozenset((0, 1)): base, frozenset((0, 2)): base + 1, frozenset((1, 2)): base + 2}
    inserts = []
    for loc, seg in zip(locations, segs):
        inserts.append((loc, tuple(Pass(names[pair], over, sign) for pair, over, sign in seg)))
    out = _insert(d, inserts)
    tri = find_r3_triangles(out, tuple(names.values()))
    if not tri:
        raise MoveNotApplicable("inserted triangle not recognized")
    return out, tri[0]
