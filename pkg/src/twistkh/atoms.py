"""Atoms: the frame of a diagram with its checkerboard cells.

The frame has one vertex per classical crossing and one edge per arc.
White cells are the circles of the all-A state and black cells those of
the all-B state (at each vertex the black corners join an under half-edge
to the next over half-edge clockwise).  Gluing the cells to the frame gives
a closed surface whose Euler characteristic is ``gamma_A + gamma_B - n``.

An atom is determined by three perfect matchings on the ``4n`` half-edge
ends: frame edges, black corners and white corners.  Two atoms are equal
when some bijection of ends preserves all three matchings.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .codes import Diagram
from .states import CubeGeometry


class EmptyDiagram(ValueError):
    pass


@dataclass(frozen=True)
class Atom:
    vertices: tuple[int, ...]  # crossing labels
    frame_edges: tuple[tuple[int, int], ...]  # per arc: (end, end)
    black_cells: tuple[tuple[tuple[int, int], ...], ...]  # (arc, direction) cycles
    white_cells: tuple[tuple[tuple[int, int], ...], ...]
    frame_match: tuple[int, ...]
    black_match: tuple[int, ...]
    white_match: tuple[int, ...]
    euler_char: int
    orientable: bool
    genus: int
    components: tuple[tuple[int, int, bool], ...]  # per surface component: (euler char, genus, orientable)

    def __eq__(self, other):
        if not isinstance(other, Atom):
            return NotImplemented
        return self.canonical_code == other.canonical_code

    def __hash__(self):
        return hash(self.canonical_code)

    @cached_property
    def canonical_code(self) -> tuple:
        return canonical_code(self.frame_match, self.black_match, self.white_match)

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.frame_edges],
            "blackCells": [[a for a, _ in cell] for cell in self.black_cells],
            "whiteCells": [[a for a, _ in cell] for cell in self.white_cells],
            "eulerChar": self.euler_char,
            "orientable": self.orientable,
            "genus": self.genus,
        }


def canonical_code(frame, black, white) -> tuple:
    """Isomorphism-invariant code of a 3-edge-coloured cubic graph on ends.

    Each connected piece is relabelled by breadth-first search from every
    possible start (colour order frame, black, white); the least code wins
    and the pieces are sorted.
    """
    n = len(frame)
    seen = [False] * n
    pieces = []
    for s in range(n):
        if seen[s]:
            continue
        comp = []
        q = deque([s])
        seen[s] = True
        while q:
            x = q.popleft()
            comp.append(x)
            for y in (frame[x], black[x], white[x]):
                if not seen[y]:
                    seen[y] = True
                    q.append(y)
        best = None
        for start in comp:
            label = {start: 0}
            order = [start]
            pos = 0
            while pos < len(order):
                x = order[pos]
                pos += 1
                for y in (frame[x], black[x], white[x]):
                    if y not in label:
                        label[y] = len(order)
                        order.append(y)
            code = tuple((label[frame[x]], label[black[x]], label[white[x]]) for x in order)
            if best is None or code < best:
                best = code
        pieces.append(best)
    return tuple(sorted(pieces))


def _orient_cells(geom: CubeGeometry, res_a, res_b, arcs: list[int]) -> bool:
    """Try to orient the cells so every frame edge is run in opposite directions."""
    # node ids: white cells 0..gA-1, black cells gA..
    ga = res_a.gamma
    adj: dict[int, list[tuple[int, int]]] = {}
    for a in arcs:
        w, dw = res_a.arc_circle[a], res_a.arc_dir[a]
        b, db = ga + res_b.arc_circle[a], res_b.arc_dir[a]
        # o_w * dw == -(o_b * db)  <=>  o_w * o_b == -dw * db
        rel = -dw * db
        adj.setdefault(w, []).append((b, rel))
        adj.setdefault(b, []).append((w, rel))
    colour: dict[int, int] = {}
    for start in adj:
        if start in colour:
            continue
        colour[start] = 1
        stack = [start]
        while stack:
            x = stack.pop()
            for y, rel in adj[x]:
                want = colour[x] * rel
                if y not in colour:
                    colour[y] = want
                    stack.append(y)
                elif colour[y] != want:
                    return False
    return True


def build_atom(d: Diagram, geometry: CubeGeometry | None = None) -> Atom:
    if d.n == 0:
        raise EmptyDiagram("an atom needs at least one classical crossing")
    geom = geometry or CubeGeometry(d)
    all_b = (1 << geom.n) - 1
    res_a, res_b = geom.resolve(0), geom.resolve(all_b)
    num_arcs = geom.num_classical_arcs
    n_ends = 2 * num_arcs
    frame = [e ^ 1 for e in range(n_ends)]
    black = geom.pair_b[:n_ends]
    white = geom.pair_a[:n_ends]
    white_cells = tuple(c.arcs for c in res_a.circles if c.arcs)
    black_cells = tuple(c.arcs for c in res_b.circles if c.arcs)

    # surface components = connected components of the frame
    parent = list(range(geom.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(num_arcs):
        u, v = find(geom.end_crossing[2 * a]), find(geom.end_crossing[2 * a + 1])
        if u != v:
            parent[u] = v
    groups: dict[int, list[int]] = {}
    for k in range(geom.n):
        groups.setdefault(find(k), []).append(k)
    comps = []
    for root, verts in sorted(groups.items(), key=lambda kv: kv[1][0]):
        arcs = [a for a in range(num_arcs) if find(geom.end_crossing[2 * a]) == root]
        faces = len({res_a.arc_circle[a] for a in arcs}) + len({res_b.arc_circle[a] for a in arcs})
        chi = len(verts) - len(arcs) + faces
        orientable = _orient_cells(geom, res_a, res_b, arcs)
        genus = (2 - chi) // 2 if orientable else 2 - chi
        comps.append((chi, genus, orientable))
    chi_total = geom.n - num_arcs + len(white_cells) + len(black_cells)
    return Atom(
        vertices=d.labels,
        frame_edges=tuple((2 * a, 2 * a + 1) for a in range(num_arcs)),
        black_cells=black_cells,
        white_cells=white_cells,
        frame_match=tuple(frame),
        black_match=tuple(black),
        white_match=tuple(white),
        euler_char=chi_total,
        orientable=all(c[2] for c in comps),
        genus=sum(c[1] for c in comps),
        components=tuple(comps),
    )


def atoms_equal(a: Atom, b: Atom) -> bool:
    return a == b


def genus(a: Atom) -> int:
    return a.genus


def orientable(a: Atom) -> bool:
    return a.orientable
