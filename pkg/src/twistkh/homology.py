"""Homology tables of Khovanov complexes and thickness statistics."""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .khovanov import BigradedComplex, Ring
from .laurent import LaurentPolynomial
from .linalg import invariant_factors, rank_mod_p


class InconsistentComplex(ArithmeticError):
    pass


@dataclass(frozen=True)
class HomologyTable:
    """Groups ``Z^free + sum Z/d`` per bidegree.

    ``groups`` maps ``(i, j)`` to ``(free, torsion)`` and omits zero groups.
    For ungraded (deformed Frobenius) complexes ``j`` is ``None``.
    """

    ring: str
    groups: dict = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, HomologyTable):
            return NotImplemented
        return self.ring == other.ring and self.groups == other.groups

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.groups.items(), key=_sort_key))))

    @property
    def graded(self) -> bool:
        return all(j is not None for _, j in self.groups)

    def free_rank(self, i: int, j: int | None) -> int:
        return self.groups.get((i, j), (0, ()))[0]

    def torsion(self, i: int, j: int | None) -> tuple[int, ...]:
        return self.groups.get((i, j), (0, ()))[1]

    def total_rank(self) -> int:
        return sum(f for f, _ in self.groups.values())

    def torsion_entries(self) -> list[tuple[int, int, int]]:
        return [(i, j, d) for (i, j), (_, tor) in sorted(self.groups.items(), key=_sort_key) for d in tor]

    def euler_characteristic(self) -> LaurentPolynomial:
        out: dict[int, int] = defaultdict(int)
        for (i, j), (free, _) in self.groups.items():
            out[j] += (-1) ** (i % 2) * free
        return LaurentPolynomial(out)

    def poincare(self) -> str:
        """Terms ``rank * t^i q^j`` (torsion listed as ``Z_d``)."""
        parts = []
        for (i, j), (free, tor) in sorted(self.groups.items(), key=_sort_key):
            qpart = "" if j is None else f" q^{j}"
            if free:
                parts.append(f"{free} t^{i}{qpart}")
            for d in tor:
                parts.append(f"Z_{d} t^{i}{qpart}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "ring": self.ring,
            "groups": [{"i": i, "j": j, "free": free, "torsion": list(tor)}
                       for (i, j), (free, tor) in sorted(self.groups.items(), key=_sort_key)],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "HomologyTable":
        if isinstance(data, str):
            data = json.loads(data)
        groups = {(g["i"], g["j"]): (g["free"], tuple(g["torsion"])) for g in data["groups"]}
        return cls(data["ring"], groups)

    def render(self) -> str:
        """Grid with homological degree across and quantum degree down."""
        if not self.groups:
            return "(zero)"
        is_ = sorted({i for i, _ in self.groups})
        js = sorted({j for _, j in self.groups}, key=lambda x: (x is None, x), reverse=True)
        cells = {}
        for key, (free, tor) in self.groups.items():
            bits = []
            if free:
                bits.append("Z" if self.ring == "Z" else "F" if free == 1 else "")
                if free > 1:
                    bits[-1] = f"{'Z' if self.ring == 'Z' else 'F'}^{free}"
            bits += [f"Z{d}" for d in tor]
            cells[key] = "+".join(bits)
        width = max(4, max(len(c) for c in cells.values()) + 1)
        head = "j\\i".rjust(5) + "".join(str(i).rjust(width) for i in range(is_[0], is_[-1] + 1))
        lines = [head]
        for j in js:
            label = "*" if j is None else str(j)
            lines.append(label.rjust(5) + "".join(cells.get((i, j), ".").rjust(width)
                                                  for i in range(is_[0], is_[-1] + 1)))
        return "\n".join(lines)


def _sort_key(item):
    (i, j), _ = item
    return (i, -10 ** 9 if j is None else j)


def _blocks(cx: BigradedComplex):
    """Yield ``(i, j, dim C^{i,j}, d^{i,j}, d^{i-1,j})``."""
    if cx.ring.graded:
        dims = cx.dimensions()
        for (i, j), dim in sorted(dims.items()):
            yield i, j, dim, cx.block(i, j), cx.block(i - 1, j) if (i - 1, j) in dims else None
    else:
        dims = cx.dimensions_by_height()
        for i, dim in sorted(dims.items()):
            h = i + cx.n_minus
            yield i, None, dim, cx.differentials.get(h), cx.differentials.get(h - 1)


def homology(cx: BigradedComplex) -> HomologyTable:
    """Integral homology via Smith normal form of each block."""
    cache: dict[tuple, list[int]] = {}

    def factors(key, mat):
        if mat is None or mat.nnz == 0:
            return []
        if key not in cache:
            cache[key] = invariant_factors(mat)
        return cache[key]

    groups = {}
    for i, j, dim, d_out, d_in in _blocks(cx):
        out_f = factors((i, j), d_out)
        in_f = factors((i - 1, j), d_in)
        free = dim - len(out_f) - len(in_f)
        if free < 0:
            raise InconsistentComplex(f"negative rank at ({i}, {j}); is d^2 = 0?")
        tor = tuple(d for d in in_f if d > 1)
        if free or tor:
            groups[(i, j)] = (free, tor)
    return HomologyTable("Z", groups)


def homology_over_field(cx: BigradedComplex, p: int = 0) -> HomologyTable:
    """Betti numbers over GF(p), or over Q when ``p == 0``."""
    cache: dict[tuple, int] = {}

    def rank(key, mat):
        if mat is None or mat.nnz == 0:
            return 0
        if key not in cache:
            cache[key] = rank_mod_p(mat, p) if p else len(invariant_factors(mat))
        return cache[key]

    groups = {}
    for i, j, dim, d_out, d_in in _blocks(cx):
        free = dim - rank((i, j), d_out) - rank((i - 1, j), d_in)
        if free < 0:
            raise InconsistentComplex(f"negative rank at ({i}, {j}); is d^2 = 0?")
        if free:
            groups[(i, j)] = (free, ())
    return HomologyTable("Q" if p == 0 else ("Z2" if p == 2 else f"GF({p})"), groups)


def compute_homology(cx: BigradedComplex, ring: Ring | None = None) -> HomologyTable:
    ring = ring or cx.ring
    if ring.kind in ("Z", "Frobenius"):
        return homology(cx)
    return homology_over_field(cx, ring.characteristic)


def uct_prediction(table: HomologyTable, p: int) -> dict[tuple[int, int], int]:
    """GF(p) Betti numbers predicted from an integral table.

    ``dim H^{i,j}(F_p) = free(i,j) + #{p | d at (i,j)} + #{p | d at (i+1,j)}``.
    """
    out: dict[tuple[int, int], int] = defaultdict(int)
    for (i, j), (free, tor) in table.groups.items():
        out[(i, j)] += free
        hits = sum(1 for d in tor if d % p == 0)
        out[(i, j)] += hits
        out[(i - 1, j)] += hits
    return {k: v for k, v in out.items() if v}


def betti(table: HomologyTable) -> dict[tuple[int, int], int]:
    return {k: f for k, (f, _) in table.groups.items() if f}


@dataclass(frozen=True)
class ThicknessReport:
    """Diagonal statistics of a homology table against the atom bound.

    ``thickness`` is the width ``(max delta - min delta) / 2 + 1`` with
    ``delta = j - 2i``; it can be a half-integer because twisted
    homology of a virtual diagram mixes parities of ``j``.  ``occupied``
    is the plain count of distinct diagonals.  For an atom with connected
    frame the bound is ``2 + genus``; a split atom adds one per extra piece.
    """

    diagonals: tuple[int, ...]  # occupied values of j - 2i
    thickness: Fraction
    genus: int
    bound: int

    @property
    def occupied(self) -> int:
        return len(self.diagonals)

    @property
    def violation(self) -> bool:
        return self.thickness > self.bound

    def to_json(self) -> dict:
        return {"diagonals": list(self.diagonals), "occupied": self.occupied,
                "thickness": str(self.thickness), "genus": self.genus, "bound": self.bound,
                "violation": self.violation}


def occupied_diagonals(table: HomologyTable) -> tuple[int, ...]:
    return tuple(sorted({j - 2 * i for (i, j), (free, tor) in table.groups.items()
                         if j is not None and (free or tor)}))


def width(table: HomologyTable) -> Fraction:
    diags = occupied_diagonals(table)
    if not diags:
        return Fraction(0)
    return Fraction(diags[-1] - diags[0], 2) + 1


def thickness(table: HomologyTable, atom_or_genus) -> ThicknessReport:
    """Compare the width of ``table`` with the genus bound of an atom (or a bare genus)."""
    if isinstance(atom_or_genus, int):
        genus, bound = atom_or_genus, 2 + atom_or_genus
    else:
        genus = atom_or_genus.genus
        bound = 1 + sum(1 + g for _, g, _ in atom_or_genus.components)
    return ThicknessReport(occupied_diagonals(table), width(table), genus, bound)


def tables_equal(tables: Iterable[HomologyTable]) -> bool:
    tables = list(tables)
    return all(t == tables[0] for t in tables[1:])
