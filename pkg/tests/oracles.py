"""Independent reference computations used only by the tests.

Nothing here shares code with the library beyond the diagram data type:
circles are traced with a separate union-find, the classical cube uses the
unordered tensor product with edge signs ``(-1)^{#1s before k}``, homology
goes through sympy, and the GF(2) ranks use bitset elimination.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import product

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from twistkh.codes import Diagram


def _ends(d: Diagram):
    """Per crossing: over/under in/out arc ends; an arc is (component, index)."""
    info = defaultdict(dict)
    for ci, comp in enumerate(d.components):
        m = len(comp)
        for j, p in enumerate(comp):
            role = "o" if p.over else "u"
            info[p.crossing][role + "_in"] = ("head", ci, (j - 1) % m)
            info[p.crossing][role + "_out"] = ("tail", ci, j)
    return info


def circles(d: Diagram, smoothing: dict[int, int]) -> list[frozenset]:
    """Circles for a 0/1 choice per crossing label (0 = A-smoothing)."""
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    for ci, comp in enumerate(d.components):
        for j in range(len(comp)):
            union(("head", ci, j), ("tail", ci, j))
    sign = d.signs
    for k, e in _ends(d).items():
        oriented = (smoothing[k] == 0) == (sign[k] > 0)
        if oriented:
            union(e["o_in"], e["u_out"])
            union(e["u_in"], e["o_out"])
        else:
            union(e["o_in"], e["u_in"])
            union(e["o_out"], e["u_out"])
    groups = defaultdict(set)
    for x in list(parent):
        groups[find(x)].add(x[1:])
    out = [frozenset(g) for g in groups.values()]
    return out + [frozenset({("free", f)}) for f in range(d.free_loops)]


def bracket_by_states(d: Diagram) -> dict[int, int]:
    """Unnormalized bracket in ``q``: sum over states of (-q)^|s| (q + 1/q)^circles."""
    labels = d.labels
    out = defaultdict(int)
    for bits in product((0, 1), repeat=len(labels)):
        g = len(circles(d, dict(zip(labels, bits))))
        h = sum(bits)
        for k in range(g + 1):
            from math import comb
            out[h + g - 2 * k] += (-1) ** h * comb(g, k)
    return {e: c for e, c in out.items() if c}


class ClassicalCube:
    """Khovanov's cube with unordered tensors and standard edge signs.

    ``signed=False`` gives the cube mod 2 picture (all signs +1); on 1-to-1
    edges the map is zero either way.
    """

    def __init__(self, d: Diagram, signed: bool = True):
        self.d = d
        self.labels = d.labels
        n = len(self.labels)
        self.n = n
        self.states = list(product((0, 1), repeat=n))
        self.circ = {s: circles(d, dict(zip(self.labels, s))) for s in self.states}
        self.signed = signed
        self.shift = d.n_plus - 2 * d.n_minus
        self.gens = defaultdict(list)  # (i, j) -> [(state, frozenset of X-circles)]
        for s in self.states:
            cs = self.circ[s]
            h = sum(s)
            for xs in product((0, 1), repeat=len(cs)):
                marked = frozenset(c for c, x in zip(cs, xs) if x)
                j = len(cs) - 2 * len(marked) + h + self.shift
                self.gens[(h - d.n_minus, j)].append((s, marked))

    def _image(self, s, marked, k):
        """d of one generator along the edge flipping coordinate k."""
        t = s[:k] + (1,) + s[k + 1:]
        src, tgt = self.circ[s], self.circ[t]
        sign = (-1) ** sum(s[:k]) if self.signed else 1
        gone = [c for c in src if c not in tgt]
        new = [c for c in tgt if c not in src]
        kept = frozenset(c for c in marked if c in tgt)
        out = []
        if len(gone) == 2 and len(new) == 1:
            xs = sum(1 for c in gone if c in marked)
            if xs == 0:
                out.append((t, kept, sign))
            elif xs == 1:
                out.append((t, kept | {new[0]}, sign))
        elif len(gone) == 1 and len(new) == 2:
            a, b = new
            if gone[0] in marked:
                out.append((t, kept | {a, b}, sign))
            else:
                out.append((t, kept | {a}, sign))
                out.append((t, kept | {b}, sign))
        return out

    def block(self, i: int, j: int) -> Matrix:
        src = self.gens.get((i, j), [])
        tgt = self.gens.get((i + 1, j), [])
        index = {g: r for r, g in enumerate(tgt)}
        m = [[0] * len(src) for _ in tgt]
        for c, (s, marked) in enumerate(src):
            for k in range(self.n):
                if s[k]:
                    continue
                for t, tm, v in self._image(s, marked, k):
                    m[index[(t, tm)]][c] += v
        return Matrix(len(tgt), len(src), lambda r, c: m[r][c])

    def homology(self) -> dict[tuple[int, int], tuple[int, tuple[int, ...]]]:
        out = {}
        for (i, j), gens in self.gens.items():
            d_out = self.block(i, j)
            d_in = self.block(i - 1, j)
            f_out = _factors(d_out)
            f_in = _factors(d_in)
            free = len(gens) - len(f_out) - len(f_in)
            tor = tuple(sorted(x for x in f_in if x > 1))
            if free or tor:
                out[(i, j)] = (free, tor)
        return out

    def betti_mod2(self) -> dict[tuple[int, int], int]:
        out = {}
        for (i, j), gens in self.gens.items():
            b = len(gens) - rank_gf2(self.block(i, j)) - rank_gf2(self.block(i - 1, j))
            if b:
                out[(i, j)] = b
        return out


def _factors(m: Matrix) -> list[int]:
    if m.rows == 0 or m.cols == 0 or m.is_zero_matrix:
        return []
    return [abs(int(x)) for x in invariant_factors(m, domain=ZZ) if x != 0]


def rank_gf2(m: Matrix) -> int:
    rows = []
    for r in range(m.rows):
        bits = 0
        for c in range(m.cols):
            if int(m[r, c]) % 2:
                bits |= 1 << c
        if bits:
            rows.append(bits)
    rank = 0
    pivots: dict[int, int] = {}
    for v in rows:
        while v:
            top = v.bit_length() - 1
            if top in pivots:
                v ^= pivots[top]
            else:
                pivots[top] = v
                rank += 1
                break
    return rank
