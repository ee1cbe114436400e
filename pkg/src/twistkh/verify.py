"""Verification harness: structural checks run per diagram.

Checks
------
``d2``              the assembled differential squares to zero over Z
``euler``           graded Euler characteristic of chains and of homology equals the Jones polynomial
``virtualization``  homology and atom unchanged by virtualizing each crossing
``uct``             GF(p) Betti numbers (p = 2, 3, 5) match the integral table
``thickness``       homological width does not exceed ``2 + genus``
``bracket``         state-sum and skein evaluations of the bracket agree
``moves``           homology and Jones polynomial unchanged by a seeded R1, R2 and R3
``frobenius``       ``(h, t) = (0, 0)`` reproduces the standard differential, and
                    ``(0, 1)``, ``(1, 0)`` square to zero

A ``frobenius`` failure on a diagram whose atom is non-orientable is
recorded as a finding rather than a failure.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .atoms import Atom, build_atom
from .bracket import jones_hat, kauffman_bracket_q, skein_bracket_q
from .codes import Diagram, virtualize
from .generate import random_location
from .homology import HomologyTable, ThicknessReport, homology, homology_over_field, thickness, uct_prediction
from .khovanov import AnticommutativityViolation, build_complex
from .moves import apply_r1, apply_r2, apply_r3, find_r3_triangles
from .states import DEFAULT_MAX_CROSSINGS

CHECKS = ("d2", "euler", "virtualization", "uct", "thickness", "bracket", "moves", "frobenius")


@dataclass
class CheckResult:
    check: str
    passed: bool
    detail: str = ""
    finding: bool = False

    def to_json(self) -> dict:
        return {"check": self.check, "passed": self.passed, "detail": self.detail, "finding": self.finding}


@dataclass
class DiagramReport:
    name: str
    code: str
    n: int
    results: list[CheckResult] = field(default_factory=list)
    homology: HomologyTable | None = None
    genus: int | None = None
    orientable: bool | None = None
    thickness: ThicknessReport | None = None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        return {"name": self.name, "code": self.code, "n": self.n, "passed": self.passed,
                "genus": self.genus, "orientable": self.orientable,
                "checks": [r.to_json() for r in self.results]}


@dataclass
class VerifyReport:
    diagrams: list[DiagramReport]

    @property
    def passed(self) -> bool:
        return all(d.passed for d in self.diagrams)

    def counts(self) -> dict[str, tuple[int, int]]:
        """Per check: (passed, run)."""
        out: dict[str, list[int]] = {}
        for d in self.diagrams:
            for r in d.results:
                c = out.setdefault(r.check, [0, 0])
                c[0] += r.passed
                c[1] += 1
        return {k: (v[0], v[1]) for k, v in out.items()}

    def findings(self) -> list[tuple[str, CheckResult]]:
        return [(d.name, r) for d in self.diagrams for r in d.results if r.finding]

    def to_json(self) -> dict:
        return {"passed": self.passed,
                "summary": {k: {"passed": p, "run": n} for k, (p, n) in self.counts().items()},
                "diagrams": [d.to_json() for d in self.diagrams]}


def _atom_or_none(d: Diagram) -> Atom | None:
    return build_atom(d) if d.n else None


def verify_diagram(d: Diagram, name: str | None = None, checks: Sequence[str] = CHECKS, seed: int = 0,
                   max_crossings: int = DEFAULT_MAX_CROSSINGS, twisted: bool = True) -> DiagramReport:
    rep = DiagramReport(name or d.serialize(), d.serialize(), d.n)
    res = rep.results
    try:
        cx = build_complex(d, "Z", max_crossings=max_crossings, twisted=twisted)
    except AnticommutativityViolation as err:
        res.append(CheckResult("d2", False, f"AnticommutativityViolation: {err}"))
        return rep
    res.append(CheckResult("d2", True))
    table = homology(cx)
    rep.homology = table
    atom = _atom_or_none(d)
    rep.genus = atom.genus if atom else 0
    rep.orientable = atom.orientable if atom else True
    jh = jones_hat(d, max_crossings)

    if "euler" in checks:
        chi_c, chi_h = cx.euler_characteristic(), table.euler_characteristic()
        ok = chi_c == jh and chi_h == jh
        res.append(CheckResult("euler", ok, "" if ok else f"chains {chi_c}, homology {chi_h}, Jones {jh}"))

    if "virtualization" in checks:
        bad = []
        for c in d.labels:
            v = virtualize(d, c)
            if homology(build_complex(v, max_crossings=max_crossings)) != table:
                bad.append(f"{c}: homology")
            if atom is not None and build_atom(v) != atom:
                bad.append(f"{c}: atom")
        res.append(CheckResult("virtualization", not bad, ", ".join(bad)))

    if "uct" in checks:
        bad = []
        for p in (2, 3, 5):
            direct = {k: f for k, (f, _) in homology_over_field(cx, p).groups.items()}
            if direct != uct_prediction(table, p):
                bad.append(f"p={p}")
        res.append(CheckResult("uct", not bad, ", ".join(bad)))

    if "thickness" in checks:
        tr = rep.thickness = thickness(table, atom if atom is not None else 0)
        res.append(CheckResult("thickness", not tr.violation,
                               f"width {tr.thickness}, bound {tr.bound}"))

    if "bracket" in checks:
        a, b = kauffman_bracket_q(d, max_crossings), skein_bracket_q(d)
        res.append(CheckResult("bracket", a == b, "" if a == b else f"state sum {a}, skein {b}"))

    if "moves" in checks:
        res.append(_check_moves(d, table, jh, seed, max_crossings))

    if "frobenius" in checks:
        res.append(_check_frobenius(d, cx, rep.orientable, max_crossings))
    return rep


def _check_moves(d: Diagram, table: HomologyTable, jh, seed: int, max_crossings: int) -> CheckResult:
    rng = random.Random(f"{seed}:{d.serialize()}")
    images = []
    if d.components or d.free_loops:
        images.append(("R1", apply_r1(d, random_location(rng, d), rng.random() < 0.5, rng.choice((1, -1)))))
        images.append(("R2", apply_r2(d, random_location(rng, d), random_location(rng, d),
                                      rng.random() < 0.5, rng.choice((1, -1)))))
    tris = find_r3_triangles(d) if d.n >= 3 else []
    if tris:
        images.append(("R3", apply_r3(d, tris[0])))
    bad = []
    for kind, e in images:
        if e.n > max_crossings:
            continue
        if homology(build_complex(e, max_crossings=max_crossings)) != table or jones_hat(e) != jh:
            bad.append(f"{kind}: {e.serialize()}")
    ran = ",".join(k for k, _ in images) or "none"
    return CheckResult("moves", not bad, "; ".join(bad) if bad else f"ran {ran}")


def _check_frobenius(d: Diagram, cx, orientable: bool, max_crossings: int) -> CheckResult:
    zero = build_complex(d, "frob:0,0", max_crossings=max_crossings, check=False)
    same = all((zero.differentials[h] != cx.differentials[h]).nnz == 0 for h in cx.differentials)
    if not same:
        return CheckResult("frobenius", False, "(0,0) differs from the standard differential")
    broken = []
    for r in ("frob:0,1", "frob:1,0"):
        if build_complex(d, r, max_crossings=max_crossings, check=False).d_squared_nonzero():
            broken.append(r)
    if not broken:
        return CheckResult("frobenius", True)
    detail = "d^2 != 0 for " + ", ".join(broken)
    if not orientable:
        return CheckResult("frobenius", True, detail + " (non-orientable atom)", finding=True)
    return CheckResult("frobenius", False, detail)


def _job(args):
    name, code, checks, seed, max_crossings, twisted = args
    from .codes import parse
    return verify_diagram(parse(code), name, checks, seed, max_crossings, twisted)


def verify_corpus(items: Iterable[tuple[str, Diagram]], checks: Sequence[str] = CHECKS, seed: int = 0,
                  max_crossings: int = DEFAULT_MAX_CROSSINGS, twisted: bool = True,
                  jobs: int = 1) -> VerifyReport:
    items = list(items)
    if jobs <= 1:
        reps = [verify_diagram(d, name, checks, seed, max_crossings, twisted) for name, d in items]
    else:
        args = [(name, d.serialize(), tuple(checks), seed, max_crossings, twisted) for name, d in items]
        with ProcessPoolExecutor(jobs) as pool:
            reps = list(pool.map(_job, args))
    return VerifyReport(reps)
