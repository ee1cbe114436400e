"""Oriented virtual link diagrams as signed Gauss codes.

A diagram is a tuple of components, each a cyclic sequence of passes
``(crossing, over, sign)``, plus a count of crossing-free unknotted loops.
Virtual crossings are not stored at all: two drawings that differ by a
detour move have the same code.

Text grammar::

    code      := [component ("|" component)*] ["@" k]
    component := pass+
    pass      := ("O" | "U") digits ("+" | "-")

Examples: ``"O1+U1+"`` (a positive kink), ``"O1+O2+U1+U2+"`` (virtual
trefoil), ``"@1"`` (the unknot with no crossings).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product
from typing import Iterable, NamedTuple, Sequence


class ParseError(ValueError):
    """Malformed Gauss code; ``column`` is 1-based when known."""

    def __init__(self, message: str, column: int | None = None):
        self.column = column
        if column is not None:
            message = f"column {column}: {message}"
        super().__init__(message)


class CodeSyntaxError(ParseError):
    pass


class UnpairedLabel(ParseError):
    pass


class SignMismatch(ParseError):
    pass


class UnknownCrossing(KeyError):
    pass


class Pass(NamedTuple):
    crossing: int
    over: bool
    sign: int  # +1 or -1

    def token(self) -> str:
        return f"{'O' if self.over else 'U'}{self.crossing}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class Diagram:
    """Oriented virtual link diagram.

    Construct through :func:`parse` or :meth:`from_components`; the
    constructor validates the label pairing but does not canonicalize.
    """

    components: tuple[tuple[Pass, ...], ...] = ()
    free_loops: int = 0

    def __post_init__(self):
        _validate(self.components, self.free_loops)

    @classmethod
    def from_components(cls, components: Iterable[Sequence], free_loops: int = 0) -> "Diagram":
        comps = []
        for comp in components:
            comps.append(tuple(p if isinstance(p, Pass) else Pass(*p) for p in comp))
        return cls(tuple(comps), free_loops)

    # -- statistics -----------------------------------------------------

    @cached_property
    def labels(self) -> tuple[int, ...]:
        return tuple(sorted({p.crossing for comp in self.components for p in comp}))

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def signs(self) -> dict[int, int]:
        return {p.crossing: p.sign for comp in self.components for p in comp}

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs.values() if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs.values() if s < 0)

    @property
    def writhe(self) -> int:
        return self.n_plus - self.n_minus

    @property
    def num_components(self) -> int:
        return len(self.components) + self.free_loops

    @property
    def num_arcs(self) -> int:
        return 2 * self.n + self.free_loops

    def is_empty(self) -> bool:
        return not self.components and self.free_loops == 0

    # -- serialization --------------------------------------------------

    def serialize(self) -> str:
        text = "|".join("".join(p.token() for p in comp) for comp in self.components)
        if self.free_loops:
            text += f"@{self.free_loops}"
        return text

    def to_json(self) -> dict:
        return {
            "components": [[p.token() for p in comp] for comp in self.components],
            "freeLoops": self.free_loops,
        }

    def __str__(self) -> str:
        return self.serialize()

    @cached_property
    def canonical(self) -> "Diagram":
        return canonical_form(self)

    def same_as(self, other: "Diagram") -> bool:
        """Equality of canonical forms."""
        return self.canonical.serialize() == other.canonical.serialize()


def _validate(components, free_loops: int) -> None:
    if free_loops < 0:
        raise ValueError("free loop count must be non-negative")
    seen: dict[int, list[Pass]] = {}
    for comp in components:
        if not comp:
            raise ValueError("empty component; count it as a free loop instead")
        for p in comp:
            if p.crossing <= 0:
                raise CodeSyntaxError(f"crossing label must be positive, got {p.crossing}")
            if p.sign not in (1, -1):
                raise CodeSyntaxError(f"bad sign {p.sign!r}")
            seen.setdefault(p.crossing, []).append(p)
    for label, occ in seen.items():
        if len(occ) != 2 or occ[0].over == occ[1].over:
            raise UnpairedLabel(f"label {label} must appear once over and once under")
        if occ[0].sign != occ[1].sign:
            raise SignMismatch(f"label {label} carries signs {occ[0].sign:+d} and {occ[1].sign:+d}")


_PASS_RE = re.compile(r"([OU])(\d+)([+-])")


def parse(text: str) -> Diagram:
    """Parse a Gauss code (text grammar or its JSON form)."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as err:
            raise CodeSyntaxError(f"invalid JSON: {err.msg}", err.colno) from err
        return from_json(data)
    free = 0
    body = stripped
    if "@" in stripped:
        at = stripped.index("@")
        body, tail = stripped[:at], stripped[at + 1:]
        if not tail.isdigit():
            raise CodeSyntaxError("free loop count after '@' must be a non-negative integer", at + 2)
        free = int(tail)
    components = []
    if body:
        offset = 0
        for chunk in body.split("|"):
            if not chunk:
                raise CodeSyntaxError("empty component", offset + 1)
            passes = []
            pos = 0
            while pos < len(chunk):
                m = _PASS_RE.match(chunk, pos)
                if m is None:
                    raise CodeSyntaxError(f"expected a pass like 'O1+', got {chunk[pos:pos + 4]!r}",
                                          offset + pos + 1)
                passes.append(Pass(int(m.group(2)), m.group(1) == "O", 1 if m.group(3) == "+" else -1))
                pos = m.end()
            components.append(tuple(passes))
            offset += len(chunk) + 1
    return Diagram(tuple(components), free)


def from_json(data: dict) -> Diagram:
    if not isinstance(data, dict) or not isinstance(data.get("components", []), list):
        raise CodeSyntaxError("JSON code needs a 'components' list")
    comps = data.get("components", [])
    text = "|".join("".join(comp) for comp in comps)
    free = int(data.get("freeLoops", 0))
    d = parse(text) if text else Diagram((), 0)
    return Diagram(d.components, free)


def _relabel(components: Sequence[Sequence[Pass]]) -> tuple[tuple[Pass, ...], ...]:
    mapping: dict[int, int] = {}
    out = []
    for comp in components:
        new = []
        for p in comp:
            if p.crossing not in mapping:
                mapping[p.crossing] = len(mapping) + 1
            new.append(Pass(mapping[p.crossing], p.over, p.sign))
        out.append(tuple(new))
    return tuple(out)


def _key(components) -> tuple:
    return tuple(tuple((p.crossing, 0 if p.over else 1, 0 if p.sign > 0 else 1) for p in comp)
                 for comp in components)


def canonical_form(d: Diagram) -> Diagram:
    """Minimal relabelled code over component orders and rotations.

    Labels are renumbered 1, 2, ... in order of first appearance, and the
    lexicographically least result is kept.  The search is exhaustive
    (``k! * prod(len)`` candidates), fine for desk-scale diagrams.
    """
    comps = d.components
    if not comps:
        return Diagram((), d.free_loops)
    best = None
    best_key = None
    for order in permutations(range(len(comps))):
        ordered = [comps[i] for i in order]
        for rots in product(*(range(len(c)) for c in ordered)):
            rotated = [c[r:] + c[:r] for c, r in zip(ordered, rots)]
            cand = _relabel(rotated)
            k = _key(cand)
            if best_key is None or k < best_key:
                best, best_key = cand, k
    return Diagram(best, d.free_loops)


# -- transformations ----------------------------------------------------

def virtualize(d: Diagram, label: int) -> Diagram:
    """Virtualize a classical crossing.

    On the code this exchanges the over and under passes of ``label`` and
    keeps its sign, so the smoothings at the crossing pair the same ends and
    every state has the same circles.
    """
    if label not in d.signs:
        raise UnknownCrossing(label)
    comps = tuple(
        tuple(Pass(p.crossing, not p.over, p.sign) if p.crossing == label else p for p in comp)
        for comp in d.components
    )
    return Diagram(comps, d.free_loops)


def relabel_compact(d: Diagram) -> Diagram:
    """Renumber labels 1..n in first-appearance order without rotating."""
    return Diagram(_relabel(d.components), d.free_loops)


def disjoint_union(d1: Diagram, d2: Diagram) -> Diagram:
    shift = max(d1.labels, default=0)
    moved = tuple(tuple(Pass(p.crossing + shift, p.over, p.sign) for p in comp) for comp in d2.components)
    return Diagram(d1.components + moved, d1.free_loops + d2.free_loops)


def mirror(d: Diagram) -> Diagram:
    """Crossing change at every crossing."""
    return Diagram(tuple(tuple(Pass(p.crossing, not p.over, -p.sign) for p in comp) for comp in d.components),
                   d.free_loops)


def connected_sum(d1: Diagram, d2: Diagram) -> Diagram:
    """Join the first components of two knot-like codes end to end."""
    if not d1.components or not d2.components:
        raise ValueError("connected sum needs a component with crossings on both sides")
    shift = max(d1.labels, default=0)
    moved = [tuple(Pass(p.crossing + shift, p.over, p.sign) for p in comp) for comp in d2.components]
    first = d1.components[0] + moved[0]
    return Diagram((first,) + d1.components[1:] + tuple(moved[1:]), d1.free_loops + d2.free_loops)
