"""Twisted-coefficient Khovanov complex of a virtual link diagram.

Each state contributes the ordered (exterior) tensor product of one copy of
``V = <1, X>`` per circle, with generators written in canonical circle order
and ``X`` measured against the circle's reference orientation.  ``X`` is
only defined up to sign: reversing the orientation of a circle negates it.

The edge map at crossing ``k`` is computed in a basis local to ``k``:

1. move the participating circles to the front (sign of the permutation);
2. rewrite their ``X`` in the orientation fixed by the local convention;
3. apply ``m`` or ``Delta``;
4. rewrite back into reference orientations and canonical target order.

Edges on which one circle goes to one circle carry the zero map.  The
differential is the plain sum of edge maps; no extra edge signs are added.

Local convention
----------------
Draw the crossing with both strands pointing upwards and name the corner
positions ``NW, NE, SE, SW``.  :data:`STANDARD_CONVENTION` records which end
role sits at which corner for each crossing sign.  Circles touching the
crossing are oriented counter-clockwise around it (right-hand strand along
the diagram orientation, left-hand strand against it), and the circle
through ``NW`` is the first one (upper, resp. left), the circle through
``SE`` the second.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
from scipy import sparse

from .codes import Diagram
from .laurent import LaurentPolynomial
from .states import DEFAULT_MAX_CROSSINGS, BifurcationKind, CubeGeometry, Resolution, popcount

POSITIONS = ("NW", "NE", "SE", "SW")  # clockwise

STANDARD_CONVENTION: dict[int, dict[str, str]] = {
    +1: {"NW": "u_out", "NE": "o_out", "SE": "u_in", "SW": "o_in"},
    -1: {"NW": "o_out", "NE": "u_out", "SE": "o_in", "SW": "u_in"},
}


class AnticommutativityViolation(RuntimeError):
    """The assembled differential does not square to zero."""


class ConventionError(RuntimeError):
    """A local convention that does not orient circles coherently."""


class Inapplicable(ValueError):
    """Orientation data requested on a 1-to-1 edge, where none is needed."""


@dataclass(frozen=True)
class Ring:
    """Coefficient ring tag; ``frob`` carries integer ``(h, t)``."""

    kind: str = "Z"  # Z, Q, Z2, GFp, Frobenius
    p: int | None = None
    h: int = 0
    t: int = 0

    @property
    def graded(self) -> bool:
        return not (self.kind == "Frobenius" and (self.h or self.t))

    @property
    def characteristic(self) -> int:
        if self.kind == "Z2":
            return 2
        if self.kind == "GFp":
            return self.p
        return 0

    def __str__(self) -> str:
        if self.kind == "GFp":
            return f"GF({self.p})"
        if self.kind == "Frobenius":
            return f"Frobenius(h={self.h},t={self.t})"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "Ring":
        t = text.strip().lower()
        if t == "z":
            return cls("Z")
        if t == "q":
            return cls("Q")
        if t == "z2":
            return cls("Z2")
        if t.startswith("gfp:"):
            p = int(t[4:])
            if p < 2 or any(p % f == 0 for f in range(2, int(p ** 0.5) + 1)):
                raise ValueError(f"gfp needs a prime, got {p}")
            return cls("Z2") if p == 2 else cls("GFp", p=p)
        if t.startswith("frob:"):
            h, tt = (int(v) for v in t[5:].split(","))
            return cls("Frobenius", h=h, t=tt)
        raise ValueError(f"unknown ring {text!r}")


def _perm_sign(seq: Sequence[int]) -> int:
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv & 1 else 1


class LocalFrame:
    """The local convention resolved at one crossing."""

    __slots__ = ("first_end", "second_end", "local_dir")

    def __init__(self, roles: Mapping[str, int], table: Mapping[str, str]):
        pos_end = {pos: roles[table[pos]] for pos in POSITIONS}
        self.first_end = pos_end["NW"]
        self.second_end = pos_end["SE"]
        self.local_dir: dict[int, int] = {}
        for pos, role in table.items():
            # circles leave the crossing at NE/SW and enter at NW/SE
            leaving = pos in ("NE", "SW")
            is_out = role.endswith("_out")
            self.local_dir[pos_end[pos]] = 1 if leaving == is_out else -1


def rotated_convention(base: Mapping[int, Mapping[str, str]], turns: int) -> dict[int, dict[str, str]]:
    """Rotate the corner assignment clockwise by ``turns`` quarter turns."""
    out = {}
    for sign, table in base.items():
        out[sign] = {POSITIONS[(i + turns) % 4]: table[POSITIONS[i]] for i in range(4)}
    return out


@dataclass
class EdgeMap:
    state: int
    crossing: int
    kind: BifurcationKind
    # (source mask, target mask, coefficient)
    entries: list[tuple[int, int, int]] = field(default_factory=list)

    def is_zero(self) -> bool:
        return all(c == 0 for _, _, c in self.entries)

    def as_dict(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = defaultdict(int)
        for s, t, c in self.entries:
            out[(s, t)] += c
        return {k: v for k, v in out.items() if v}


def _reorient(label: int, eps: int, h: int) -> list[tuple[int, int]]:
    """Change of orientation on one circle: ``X -> h*1 - X`` (``-X`` when h = 0).

    This is the involution of ``R[X]/(X^2 - hX - t)``; it is its own inverse,
    so the same table converts in either direction.
    """
    if label == 0 or eps == 1:
        return [(label, 1)]
    return [(1, -1), (0, h)] if h else [(1, -1)]


def _multiply(la: int, lb: int, h: int, t: int) -> list[tuple[int, int]]:
    if la == 0 and lb == 0:
        return [(0, 1)]
    if la != lb:
        return [(1, 1)]
    out = []
    if h:
        out.append((1, h))
    if t:
        out.append((0, t))
    return out


def _comultiply(lc: int, h: int, t: int) -> list[tuple[int, int, int]]:
    if lc == 0:
        out = [(0, 1, 1), (1, 0, 1)]
        if h:
            out.append((0, 0, -h))
        return out
    out = [(1, 1, 1)]
    if t:
        out.append((0, 0, t))
    return out


class ComplexBuilder:
    """Edge maps for one diagram under a fixed local convention.

    ``convention`` maps crossing sign to the corner table, or may be a
    per-crossing list of such tables (used to rotate frames crossing by
    crossing).  ``twisted=False`` drops the orientation signs and keeps only
    the exterior ordering; it exists as a negative control and does not
    square to zero in general.
    """

    def __init__(self, diagram: Diagram, convention=None, max_crossings: int = DEFAULT_MAX_CROSSINGS,
                 geometry: CubeGeometry | None = None, twisted: bool = True):
        self.diagram = diagram
        self.twisted = twisted
        self.geom = geometry or CubeGeometry(diagram, max_crossings)
        conv = convention or STANDARD_CONVENTION
        self.frames = []
        for k in range(self.geom.n):
            table = conv[k][self.geom.signs[k]] if isinstance(conv, (list, tuple)) else conv[self.geom.signs[k]]
            self.frames.append(LocalFrame(self.geom.roles[k], table))

    def local_sign(self, res: Resolution, k: int, circle: int) -> int:
        """``eps`` with ``X_{C,ref} = eps * X_{C,local}`` for a circle at crossing ``k``."""
        frame = self.frames[k]
        if not self.twisted:
            return 1
        eps = 0
        for end, want in frame.local_dir.items():
            if res.circle_of_end(end) != circle:
                continue
            e = res.arc_dir[end >> 1] * want
            if eps and e != eps:
                raise ConventionError(
                    f"circle {circle} of state {res.state:b} is not coherently oriented at crossing {k}")
            eps = e
        if not eps:
            raise ValueError(f"circle {circle} does not touch crossing {k}")
        return eps

    def circle_order(self, res: Resolution, k: int) -> tuple[int, int]:
        """(first, second) circles at ``k`` in the state holding two of them."""
        frame = self.frames[k]
        a, b = res.circle_of_end(frame.first_end), res.circle_of_end(frame.second_end)
        if a == b:
            raise Inapplicable("crossing touches a single circle in this state")
        return a, b

    def _rest_map(self, src: Resolution, tgt: Resolution, skip_src, skip_tgt):
        """Pairs (source circle, target circle) for circles away from the crossing."""
        rest_src = [c for c in range(src.gamma) if c not in skip_src]
        pairs = []
        for c in rest_src:
            circ = src.circles[c]
            if circ.arcs:
                tc = tgt.arc_circle[circ.arcs[0][0]]
            else:
                tc = tgt.gamma - (src.gamma - c)
            pairs.append((c, tc))
        return pairs

    def edge_map(self, state: int, k: int, h: int = 0, t: int = 0) -> EdgeMap:
        geom = self.geom
        bif = geom.edge(state, k)
        em = EdgeMap(state, k, bif.kind)
        if bif.kind is BifurcationKind.SINGLE:
            return em
        src = geom.resolve(state)
        tgt = geom.resolve(state | (1 << k))
        frame = self.frames[k]
        if bif.kind is BifurcationKind.MERGE:
            a, b = self.circle_order(src, k)
            m = tgt.circle_of_end(frame.first_end)
            ea, eb = self.local_sign(src, k, a), self.local_sign(src, k, b)
            em_ = self.local_sign(tgt, k, m)
            rest = self._rest_map(src, tgt, (a, b), (m,))
            sign = _perm_sign([a, b] + [c for c, _ in rest]) * _perm_sign([m] + [tc for _, tc in rest])
            for mask in range(1 << src.gamma):
                la, lb = (mask >> a) & 1, (mask >> b) & 1
                base = 0
                for c, tc in rest:
                    if (mask >> c) & 1:
                        base |= 1 << tc
                for xa, ca in _reorient(la, ea, h):
                    for xb, cb in _reorient(lb, eb, h):
                        for lm, cm in _multiply(xa, xb, h, t):
                            for ym, cy in _reorient(lm, em_, h):
                                em.entries.append((mask, base | (ym << m), sign * ca * cb * cm * cy))
        else:
            c0 = src.circle_of_end(frame.first_end)
            f, g = self.circle_order(tgt, k)
            ec = self.local_sign(src, k, c0)
            ef, eg = self.local_sign(tgt, k, f), self.local_sign(tgt, k, g)
            rest = self._rest_map(src, tgt, (c0,), (f, g))
            sign = _perm_sign([c0] + [c for c, _ in rest]) * _perm_sign([f, g] + [tc for _, tc in rest])
            for mask in range(1 << src.gamma):
                lc = (mask >> c0) & 1
                base = 0
                for c, tc in rest:
                    if (mask >> c) & 1:
                        base |= 1 << tc
                for xc, cc in _reorient(lc, ec, h):
                    for lf, lg, cd in _comultiply(xc, h, t):
                        for yf, cf in _reorient(lf, ef, h):
                            for yg, cg in _reorient(lg, eg, h):
                                em.entries.append((mask, base | (yf << f) | (yg << g),
                                                   sign * cc * cd * cf * cg))
        return em


def _check_edge(builder: ComplexBuilder, state: int, k: int) -> None:
    s = state & ~(1 << k)
    if builder.geom.edge(s, k).kind is BifurcationKind.SINGLE:
        raise Inapplicable(f"crossing {k} is a 1-to-1 edge at state {s:b}")


def local_orientation_sign(d: Diagram, state: int, k: int, circle: int, convention=None) -> int:
    """Sign relating the reference and local orientation of ``circle`` at ``k``."""
    builder = ComplexBuilder(d, convention)
    _check_edge(builder, state, k)
    return builder.local_sign(builder.geom.resolve(state), k, circle)


def circle_order_at_crossing(d: Diagram, state: int, k: int, convention=None) -> tuple[int, int]:
    """First and second circle at ``k``, taken in whichever end of the edge has two."""
    builder = ComplexBuilder(d, convention)
    _check_edge(builder, state, k)
    res = builder.geom.resolve(state)
    if res.circle_of_end(builder.frames[k].first_end) == \
            res.circle_of_end(builder.frames[k].second_end):
        res = builder.geom.resolve(state ^ (1 << k))
    return builder.circle_order(res, k)


def edge_map(d: Diagram, state: int, k: int, h: int = 0, t: int = 0, convention=None) -> EdgeMap:
    return ComplexBuilder(d, convention).edge_map(state, k, h, t)


def frobenius_edge_map(d: Diagram, state: int, k: int, h: int, t: int, convention=None) -> EdgeMap:
    return edge_map(d, state, k, h, t, convention)


@dataclass
class BigradedComplex:
    """Normalized complex with global per-height differentials.

    Generators are indexed in order of (state, label mask); ``hom_degree``
    and ``q_degree`` hold the normalized ``(i, j)`` of each generator, and
    ``differentials[h]`` is the sparse matrix from height ``h`` to ``h + 1``
    (rows: target generators at ``h + 1``, columns: source generators at
    ``h``), indexed within each height.
    """

    diagram: Diagram
    ring: Ring
    states_by_height: dict[int, list[int]]
    generators: dict[int, list[tuple[int, int]]]  # height -> [(state, mask)]
    q_degrees: dict[int, np.ndarray]  # height -> normalized j per generator
    differentials: dict[int, sparse.csr_matrix]
    n_minus: int
    n_plus: int

    def height_to_i(self, h: int) -> int:
        return h - self.n_minus

    @property
    def heights(self) -> list[int]:
        return sorted(self.generators)

    def bidegrees(self) -> list[tuple[int, int]]:
        out = set()
        for h, js in self.q_degrees.items():
            for j in set(js.tolist()):
                out.add((self.height_to_i(h), j))
        return sorted(out)

    def dimensions(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = defaultdict(int)
        for h, js in self.q_degrees.items():
            i = self.height_to_i(h)
            for j in js.tolist():
                out[(i, int(j))] += 1
        return dict(out)

    def dimensions_by_height(self) -> dict[int, int]:
        return {self.height_to_i(h): len(g) for h, g in self.generators.items()}

    def euler_characteristic(self) -> LaurentPolynomial:
        return LaurentPolynomial(_signed_q_sum(self.dimensions()))

    def block(self, i: int, j: int) -> sparse.csr_matrix:
        """``d^{i,j}: C^{i,j} -> C^{i+1,j}`` (graded rings only)."""
        h = i + self.n_minus
        src = self.indices(h, j)
        tgt = self.indices(h + 1, j)
        if h not in self.differentials or len(src) == 0 or len(tgt) == 0:
            return sparse.csr_matrix((len(tgt), len(src)), dtype=np.int64)
        return self.differentials[h][tgt][:, src]

    def indices(self, h: int, j: int) -> np.ndarray:
        js = self.q_degrees.get(h)
        if js is None:
            return np.zeros(0, dtype=np.int64)
        return np.nonzero(js == j)[0]

    def d_squared_nonzero(self) -> list[int]:
        """Heights ``h`` where ``d_{h+1} d_h`` has a nonzero entry."""
        bad = []
        for h in self.heights:
            if h in self.differentials and h + 1 in self.differentials:
                prod = self.differentials[h + 1] @ self.differentials[h]
                prod.eliminate_zeros()
                if prod.nnz:
                    bad.append(h)
        return bad

    def to_json(self) -> dict:
        """Per-bidegree basis sizes and sparse triplets of ``d`` (graded rings)."""
        blocks = []
        if self.ring.graded:
            for (i, j) in self.bidegrees():
                m = self.block(i, j).tocoo()
                triplets = sorted(zip(m.row.tolist(), m.col.tolist(), m.data.tolist()))
                blocks.append({"i": i, "j": j, "dim": int(len(self.indices(i + self.n_minus, j))),
                               "d": [[r, c, v] for r, c, v in triplets if v]})
        else:
            for h in self.heights:
                m = self.differentials.get(h)
                trip = [] if m is None else sorted(zip(*(x.tolist() for x in (m.tocoo().row, m.tocoo().col,
                                                                                m.tocoo().data))))
                blocks.append({"i": self.height_to_i(h), "dim": len(self.generators[h]),
                               "d": [list(t) for t in trip if t[2]]})
        return {"diagram": self.diagram.serialize(), "ring": str(self.ring), "blocks": blocks}


def _signed_q_sum(dims: Mapping[tuple[int, int], int]) -> dict[int, int]:
    out: dict[int, int] = defaultdict(int)
    for (i, j), dim in dims.items():
        out[j] += (-1) ** (i % 2) * dim
    return out


def build_complex(d: Diagram, ring: Ring | str = "Z", convention=None,
                  max_crossings: int = DEFAULT_MAX_CROSSINGS, check: bool = True,
                  twisted: bool = True) -> BigradedComplex:
    """Assemble the normalized complex and (by default) assert ``d^2 = 0``."""
    if isinstance(ring, str):
        ring = Ring.parse(ring)
    builder = ComplexBuilder(d, convention, max_crossings, twisted=twisted)
    return assemble(builder, ring, check=check)


def assemble(builder: ComplexBuilder, ring: Ring, check: bool = True) -> BigradedComplex:
    geom = builder.geom
    d = builder.diagram
    n = geom.n
    shift = d.n_plus - 2 * d.n_minus
    states_by_height: dict[int, list[int]] = defaultdict(list)
    for s in range(geom.num_states):
        states_by_height[popcount(s)].append(s)
    generators: dict[int, list[tuple[int, int]]] = {}
    q_degrees: dict[int, np.ndarray] = {}
    offsets: dict[int, int] = {}
    for h in range(n + 1):
        gens = []
        js = []
        for s in states_by_height[h]:
            offsets[s] = len(gens)
            g = geom.gamma(s)
            for mask in range(1 << g):
                gens.append((s, mask))
                js.append(g - 2 * popcount(mask) + h + shift)
        generators[h] = gens
        q_degrees[h] = np.array(js, dtype=np.int64)
    differentials = {}
    h_, t_ = (ring.h, ring.t) if ring.kind == "Frobenius" else (0, 0)
    for h in range(n):
        rows, cols, vals = [], [], []
        for s in states_by_height[h]:
            for k in range(n):
                if (s >> k) & 1:
                    continue
                em = builder.edge_map(s, k, h_, t_)
                so, to = offsets[s], offsets[s | (1 << k)]
                for sm, tm, c in em.entries:
                    if c:
                        cols.append(so + sm)
                        rows.append(to + tm)
                        vals.append(c)
        mat = sparse.coo_matrix((np.array(vals, dtype=np.int64), (rows, cols)),
                                shape=(len(generators[h + 1]), len(generators[h]))).tocsr()
        mat.sum_duplicates()
        mat.eliminate_zeros()
        differentials[h] = mat
    cx = BigradedComplex(d, ring, dict(states_by_height), generators, q_degrees, differentials,
                         d.n_minus, d.n_plus)
    if check:
        bad = cx.d_squared_nonzero()
        if bad:
            raise AnticommutativityViolation(
                f"d^2 != 0 at heights {bad} for {d.serialize()}; the local convention table is inconsistent")
    return cx
