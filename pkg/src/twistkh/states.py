"""State cube geometry: smoothings, state circles and cube edges.

Arcs and ends
-------------
Arc ``a`` runs from one pass to the next along a component, in the order
components and passes appear in the code.  Its two *ends* are
``2a`` (where it leaves a crossing) and ``2a + 1`` (where it arrives).  Each
classical crossing owns four ends, named by role:

``o_in``/``o_out``
    ends of the arcs arriving at / leaving the over pass;
``u_in``/``u_out``
    the same for the under pass.

Smoothings
----------
The *oriented* smoothing pairs ``{o_in, u_out}`` and ``{u_in, o_out}``; the
other one pairs ``{o_in, u_in}`` and ``{o_out, u_out}``.  A-smoothing is the
oriented one at a positive crossing and the unoriented one at a negative
crossing (the usual Kauffman convention, under which the bracket satisfies
``<L> = <L_A> - q <L_B>`` and ``O1+U1+`` evaluates to ``1 + q^-2``).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .codes import Diagram

DEFAULT_MAX_CROSSINGS = 20

ROLES = ("o_in", "o_out", "u_in", "u_out")


class StateSpaceTooLarge(RuntimeError):
    pass


class BifurcationKind(str, Enum):
    MERGE = "Merge21"
    SPLIT = "Split12"
    SINGLE = "Single11"


class StateCircle(NamedTuple):
    """A circle of a state as its cyclic ``(arc, direction)`` sequence.

    ``direction`` is +1 where the circle's reference orientation runs along
    the diagram orientation of the arc.  The reference orientation is the
    one that traverses the circle's smallest arc forwards.  Free loops have
    an empty arc list.
    """

    arcs: tuple[tuple[int, int], ...]

    @property
    def min_arc(self) -> int:
        return min(a for a, _ in self.arcs)


@dataclass(frozen=True)
class Resolution:
    state: int
    circles: tuple[StateCircle, ...]
    arc_circle: tuple[int, ...]
    arc_dir: tuple[int, ...]

    @property
    def gamma(self) -> int:
        return len(self.circles)

    def circle_of_end(self, end: int) -> int:
        return self.arc_circle[end >> 1]


@dataclass(frozen=True)
class Bifurcation:
    kind: BifurcationKind
    state: int
    crossing: int
    source_circles: tuple[int, ...]
    target_circles: tuple[int, ...]
    local_ends: dict  # role -> (end, source circle, target circle)


def popcount(x: int) -> int:
    return bin(x).count("1")


class CubeGeometry:
    """Precomputed end tables for a diagram, with cached state resolution.

    Crossing index ``k`` refers to ``diagram.labels[k]`` and to bit ``k`` of
    a state (0 = A-smoothing, 1 = B-smoothing).
    """

    def __init__(self, diagram: Diagram, max_crossings: int = DEFAULT_MAX_CROSSINGS):
        if diagram.n > max_crossings:
            raise StateSpaceTooLarge(
                f"{diagram.n} crossings exceed the cap of {max_crossings}; raise --max-crossings to override")
        self.diagram = diagram
        self.n = diagram.n
        self.index = {label: k for k, label in enumerate(diagram.labels)}
        self.signs = [diagram.signs[label] for label in diagram.labels]
        self.free_loops = diagram.free_loops

        arcs_from = []  # pass position -> arc id
        roles: list[dict[str, int]] = [dict() for _ in range(self.n)]
        arc_component = []
        arc_id = 0
        for ci, comp in enumerate(diagram.components):
            m = len(comp)
            first = arc_id
            for j, p in enumerate(comp):
                k = self.index[p.crossing]
                out_arc = first + j
                in_arc = first + (j - 1) % m
                pre = "o" if p.over else "u"
                roles[k][pre + "_out"] = 2 * out_arc
                roles[k][pre + "_in"] = 2 * in_arc + 1
                arc_component.append(ci)
            arc_id += m
        self.num_classical_arcs = arc_id
        self.arc_component = tuple(arc_component)
        self.roles = roles
        self.end_crossing = [0] * (2 * arc_id)
        self.end_role = [""] * (2 * arc_id)
        for k, r in enumerate(roles):
            for role, end in r.items():
                self.end_crossing[end] = k
                self.end_role[end] = role

        self.pair_a = [0] * (2 * arc_id)
        self.pair_b = [0] * (2 * arc_id)
        for k, r in enumerate(roles):
            oriented = ((r["o_in"], r["u_out"]), (r["u_in"], r["o_out"]))
            unoriented = ((r["o_in"], r["u_in"]), (r["o_out"], r["u_out"]))
            a_pairs, b_pairs = (oriented, unoriented) if self.signs[k] > 0 else (unoriented, oriented)
            for x, y in a_pairs:
                self.pair_a[x], self.pair_a[y] = y, x
            for x, y in b_pairs:
                self.pair_b[x], self.pair_b[y] = y, x
        self._cache: dict[int, Resolution] = {}

    @property
    def num_states(self) -> int:
        return 1 << self.n

    def smoothing_pairs(self, k: int, b_smoothing: bool) -> tuple[tuple[int, int], tuple[int, int]]:
        r = self.roles[k]
        table = self.pair_b if b_smoothing else self.pair_a
        x = r["o_in"]
        y = table[x]
        rest = [e for e in r.values() if e not in (x, y)]
        return (x, y), (rest[0], rest[1])

    def resolve(self, state: int) -> Resolution:
        cached = self._cache.get(state)
        if cached is not None:
            return cached
        num = self.num_classical_arcs
        arc_circle = [-1] * (num + self.free_loops)
        arc_dir = [0] * (num + self.free_loops)
        circles = []
        pa, pb, ec = self.pair_a, self.pair_b, self.end_crossing
        for start in range(num):
            if arc_circle[start] >= 0:
                continue
            cid = len(circles)
            seq = []
            arc, d = start, 1
            while True:
                arc_circle[arc] = cid
                arc_dir[arc] = d
                seq.append((arc, d))
                end = 2 * arc + 1 if d > 0 else 2 * arc
                k = ec[end]
                partner = pb[end] if (state >> k) & 1 else pa[end]
                arc = partner >> 1
                d = 1 if partner & 1 == 0 else -1
                if arc == start:
                    break
            circles.append(StateCircle(tuple(seq)))
        for f in range(self.free_loops):
            arc_circle[num + f] = len(circles)
            arc_dir[num + f] = 1
            circles.append(StateCircle(()))
        res = Resolution(state, tuple(circles), tuple(arc_circle), tuple(arc_dir))
        self._cache[state] = res
        return res

    def gamma(self, state: int) -> int:
        return self.resolve(state).gamma

    def edge(self, state: int, k: int) -> Bifurcation:
        """Classify the cube edge leaving ``state`` in direction ``k``."""
        if (state >> k) & 1:
            raise ValueError("cube edges run from A- to B-smoothing; bit k must be 0")
        src = self.resolve(state)
        tgt = self.resolve(state | (1 << k))
        ends = self.roles[k]
        local = {role: (e, src.circle_of_end(e), tgt.circle_of_end(e)) for role, e in ends.items()}
        s_c = tuple(sorted({v[1] for v in local.values()}))
        t_c = tuple(sorted({v[2] for v in local.values()}))
        if len(s_c) == 2:
            kind = BifurcationKind.MERGE
        elif len(t_c) == 2:
            kind = BifurcationKind.SPLIT
        else:
            kind = BifurcationKind.SINGLE
        return Bifurcation(kind, state, k, s_c, t_c, local)

    def edges(self):
        for s in range(self.num_states):
            for k in range(self.n):
                if not (s >> k) & 1:
                    yield self.edge(s, k)

    def state_sum_summary(self) -> dict[int, list[int]]:
        """Height -> sorted list of circle counts over states of that height."""
        table: dict[int, list[int]] = defaultdict(list)
        for s in range(self.num_states):
            table[popcount(s)].append(self.gamma(s))
        return {h: sorted(v) for h, v in sorted(table.items())}

    def has_single_edges(self) -> bool:
        return any(b.kind is BifurcationKind.SINGLE for b in self.edges())


def resolve(d: Diagram, state: int) -> tuple[StateCircle, ...]:
    return CubeGeometry(d).resolve(state).circles


def cube_edge(d: Diagram, state: int, k: int) -> Bifurcation:
    return CubeGeometry(d).edge(state, k)


def state_sum_summary(d: Diagram, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> dict[int, list[int]]:
    return CubeGeometry(d, max_crossings).state_sum_summary()
