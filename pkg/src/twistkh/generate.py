"""Seeded random virtual diagrams and Reidemeister move pairs.

Random diagrams: the crossing count is uniform on ``[1, max_crossings]``;
with probability ``split_prob`` the ``2n`` passes are cut into two
components, otherwise one.  The passes are a uniform shuffle of
``O1 U1 ... On Un`` and every sign is an independent fair coin.  Every
such sequence is a legal virtual diagram.
"""

from __future__ import annotations

import random
from typing import Iterator

from .codes import Diagram, Pass
from .moves import Triangle, apply_r1, apply_r2, apply_r3, insert_triangle


def random_diagram(rng: random.Random, n: int, components: int = 1) -> Diagram:
    passes = [Pass(k, o, 0) for k in range(1, n + 1) for o in (True, False)]
    rng.shuffle(passes)
    signs = {k: rng.choice((1, -1)) for k in range(1, n + 1)}
    passes = [Pass(p.crossing, p.over, signs[p.crossing]) for p in passes]
    if components <= 1 or len(passes) < 2:
        comps = (tuple(passes),)
    else:
        cuts = sorted(rng.sample(range(1, len(passes)), min(components, len(passes)) - 1))
        bounds = [0, *cuts, len(passes)]
        comps = tuple(tuple(passes[a:b]) for a, b in zip(bounds, bounds[1:]))
    return Diagram(comps, 0)


def random_diagrams(seed: int, count: int, max_crossings: int = 8, split_prob: float = 0.2,
                    min_crossings: int = 1) -> Iterator[Diagram]:
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(min_crossings, max_crossings)
        comps = 2 if n > 1 and rng.random() < split_prob else 1
        yield random_diagram(rng, n, comps)


def random_location(rng: random.Random, d: Diagram) -> tuple[int, int]:
    slots = [(c, g) for c, comp in enumerate(d.components) for g in range(len(comp))]
    slots += [(len(d.components) + f, 0) for f in range(d.free_loops)]
    return rng.choice(slots)


def random_move_pair(rng: random.Random, kind: str, max_crossings: int = 7,
                     split_prob: float = 0.2) -> tuple[Diagram, Diagram]:
    """A diagram and its image under one random move of the given kind.

    The pair has at most ``max_crossings`` crossings on the larger side.
    """
    if kind == "R1":
        n = rng.randint(1, max_crossings - 1)
        d = random_diagram(rng, n, 2 if n > 1 and rng.random() < split_prob else 1)
        return d, apply_r1(d, random_location(rng, d), rng.random() < 0.5, rng.choice((1, -1)))
    if kind == "R2":
        n = rng.randint(1, max_crossings - 2)
        d = random_diagram(rng, n, 2 if n > 1 and rng.random() < split_prob else 1)
        return d, apply_r2(d, random_location(rng, d), random_location(rng, d),
                           rng.random() < 0.5, rng.choice((1, -1)))
    if kind == "R3":
        n = rng.randint(1, max(1, max_crossings - 3))
        host = random_diagram(rng, n, 2 if n > 1 and rng.random() < split_prob else 1)
        heights = tuple(rng.sample(range(3), 3))
        flips = tuple(rng.choice((1, -1)) for _ in range(3))
        locs = [random_location(rng, host) for _ in range(3)]
        d, tri = insert_triangle(host, locs, heights, flips)
        return d, apply_r3(d, tri)
    raise ValueError(f"unknown move {kind!r}")


def random_move_pairs(seed: int, count: int, max_crossings: int = 7) -> Iterator[tuple[str, Diagram, Diagram]]:
    rng = random.Random(seed)
    kinds = ("R1", "R2", "R3")
    for t in range(count):
        kind = kinds[t % 3]
        d, e = random_move_pair(rng, kind, max_crossings)
        yield kind, d, e


__all__ = ["random_diagram", "random_diagrams", "random_location", "random_move_pair",
           "random_move_pairs", "Triangle"]
