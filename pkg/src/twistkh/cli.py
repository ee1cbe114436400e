"""``kh``: command-line access to brackets, atoms, twisted Khovanov homology and checks.

Exit codes: 0 ok, 1 usage, 2 parse error, 3 verification failure,
4 resource cap (state space too large).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .atoms import EmptyDiagram, build_atom
from .bracket import jones_result
from .codes import Diagram, ParseError, parse
from .corpus import CorpusEntry, fixtures, load_corpus
from .generate import random_diagrams
from .homology import compute_homology, thickness
from .khovanov import AnticommutativityViolation, Ring, build_complex
from .states import DEFAULT_MAX_CROSSINGS, CubeGeometry, StateSpaceTooLarge, popcount
from .verify import CHECKS, verify_corpus

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_VERIFY, EXIT_CAP = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...]
    ring: Ring
    fmt: str
    max_crossings: int | None
    seed: int
    corpus: str | None
    random: int
    var: str
    report: str | None
    convention: str
    jobs: int
    checks: tuple[str, ...]

    @property
    def cap(self) -> int:
        return self.max_crossings or DEFAULT_MAX_CROSSINGS

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        try:
            ring = Ring.parse(getattr(ns, "ring", "z"))
        except ValueError as err:
            raise UsageError(str(err)) from err
        cap = getattr(ns, "max_crossings", None)
        if cap is not None and cap < 1:
            raise UsageError("--max-crossings must be at least 1")
        checks = tuple(getattr(ns, "checks", None) or CHECKS)
        unknown = set(checks) - set(CHECKS)
        if unknown:
            raise UsageError(f"unknown checks: {', '.join(sorted(unknown))}")
        if getattr(ns, "jobs", 1) < 1:
            raise UsageError("--jobs must be at least 1")
        return cls(ns.command, tuple(getattr(ns, "code", None) or ()), ring, ns.format, cap, ns.seed,
                   getattr(ns, "corpus", None), getattr(ns, "random", 0) or 0,
                   getattr(ns, "var", "q"), getattr(ns, "report", None),
                   getattr(ns, "convention", "twisted"), getattr(ns, "jobs", 1), checks)


def _entries(cfg: RunConfig) -> list[CorpusEntry]:
    """Inline codes, corpus files, or '-' for stdin."""
    out: list[CorpusEntry] = []
    for item in cfg.inputs:
        if item == "-":
            from .corpus import parse_corpus
            out.extend(parse_corpus(sys.stdin.read(), "<stdin>"))
        elif Path(item).exists() and not item.startswith(("O", "U", "@", "{")):
            out.extend(load_corpus(item))
        else:
            out.append(CorpusEntry(item, parse(item), "<arg>", 0))
    if not out:
        raise UsageError("no diagram given")
    return out


def _emit(cfg: RunConfig, payload, text: str) -> None:
    if cfg.fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


# -- commands -----------------------------------------------------------

def cmd_jones(cfg: RunConfig) -> int:
    rows, texts = [], []
    for e in _entries(cfg):
        r = jones_result(e.diagram, cfg.cap)
        data = {"code": e.diagram.serialize(), **r.to_json()}
        rows.append(data)
        lines = [f"diagram   {e.diagram.serialize()}"]
        if cfg.var == "a":
            lines.append(f"X(a)      {r.kauffman_x if r.kauffman_x is not None else 'undefined (empty link)'}")
        else:
            lines += [f"bracket   {r.bracket}", f"Jhat      {r.jones_hat}",
                      f"X(a)      {r.kauffman_x if r.kauffman_x is not None else 'undefined (empty link)'}"]
        lines.append(f"writhe    {r.writhe}  (n+ = {r.n_plus}, n- = {r.n_minus})")
        texts.append("\n".join(lines))
    _emit(cfg, rows[0] if len(rows) == 1 else rows, "\n\n".join(texts))
    return EXIT_OK


def cmd_homology(cfg: RunConfig) -> int:
    rows, texts = [], []
    for idx, e in enumerate(_entries(cfg)):
        d = e.diagram
        try:
            cx = build_complex(d, cfg.ring, max_crossings=cfg.cap,
                               twisted=cfg.convention == "twisted")
        except AnticommutativityViolation as err:
            print(f"AnticommutativityViolation: {err}\n"
                  "The local sign convention is broken; please file the convention table "
                  "together with this diagram.", file=sys.stderr)
            return EXIT_VERIFY
        table = compute_homology(cx)
        tr = thickness(table, build_atom(d) if d.n else 0) if table.graded else None
        rows.append({"code": d.serialize(), **table.to_json(),
                     "thickness": tr.to_json() if tr else None})
        text = [f"diagram   {d.serialize()}", f"ring      {cfg.ring}", table.render(),
                f"poincare  {table.poincare()}"]
        if tr:
            text.append(f"thickness {tr.thickness} (diagonals {list(tr.diagonals)}), "
                        f"bound {tr.bound}{'  VIOLATION' if tr.violation else ''}")
        texts.append("\n".join(text))
        if cfg.report:
            from .report import write_homology_report
            stem = "homology" if idx == 0 else f"homology_{idx}"
            paths = write_homology_report(table, cfg.report, stem, f"{d.serialize()} over {cfg.ring}")
            texts.append("wrote " + ", ".join(map(str, paths)))
    _emit(cfg, rows[0] if len(rows) == 1 else rows, "\n\n".join(texts))
    return EXIT_OK


def cmd_atom(cfg: RunConfig) -> int:
    rows, texts = [], []
    for e in _entries(cfg):
        a = build_atom(e.diagram)
        rows.append({"code": e.diagram.serialize(), **a.to_json()})
        texts.append("\n".join([
            f"diagram      {e.diagram.serialize()}",
            f"vertices     {len(a.vertices)}",
            f"edges        {len(a.frame_edges)}",
            f"white cells  {len(a.white_cells)}",
            f"black cells  {len(a.black_cells)}",
            f"euler char   {a.euler_char}",
            f"orientable   {'yes' if a.orientable else 'no'}",
            f"genus        {a.genus}",
        ]))
    _emit(cfg, rows[0] if len(rows) == 1 else rows, "\n\n".join(texts))
    return EXIT_OK


def cmd_cube_dump(cfg: RunConfig) -> int:
    rows, texts = [], []
    for e in _entries(cfg):
        d = e.diagram
        geom = CubeGeometry(d, cfg.cap)
        states = []
        lines = [f"diagram {d.serialize()}  n = {geom.n}", "state  height  circles  edges"]
        for s in range(geom.num_states):
            res = geom.resolve(s)
            edges = {str(k): geom.edge(s, k).kind.value for k in range(geom.n) if not (s >> k) & 1}
            states.append({"state": format(s, f"0{max(geom.n, 1)}b")[::-1], "height": popcount(s),
                           "circles": [[a for a, _ in c.arcs] for c in res.circles], "edges": edges})
            lines.append(f"{states[-1]['state']:>5}  {popcount(s):>6}  {res.gamma:>7}  "
                         + " ".join(f"{k}:{v}" for k, v in edges.items()))
        cx = build_complex(d, cfg.ring, max_crossings=cfg.cap, check=False,
                           twisted=cfg.convention == "twisted")
        rows.append({"code": d.serialize(), "states": states, "complex": cx.to_json(),
                     "d2Zero": not cx.d_squared_nonzero()})
        lines.append(f"d^2 = 0: {not cx.d_squared_nonzero()}")
        texts.append("\n".join(lines))
    _emit(cfg, rows[0] if len(rows) == 1 else rows, "\n\n".join(texts))
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    items: list[tuple[str, Diagram]] = []
    if cfg.corpus:
        items += [(e.name, e.diagram) for e in load_corpus(cfg.corpus)]
    if cfg.random:
        size = cfg.max_crossings or 6
        items += [(f"random-{i}", d) for i, d in enumerate(random_diagrams(cfg.seed, cfg.random, size))]
    if cfg.inputs:
        items += [(e.name, e.diagram) for e in _entries(cfg)]
    if not items:
        items = [(e.name, e.diagram) for e in fixtures()]
    rep = verify_corpus(items, cfg.checks, cfg.seed, DEFAULT_MAX_CROSSINGS,
                        twisted=cfg.convention == "twisted", jobs=cfg.jobs)
    if cfg.fmt == "json":
        print(json.dumps(rep.to_json(), indent=2, sort_keys=True))
    else:
        for d in rep.diagrams:
            for r in d.results:
                status = "PASS" if r.passed else "FAIL"
                if r.finding:
                    status = "NOTE"
                extra = f"  {r.detail}" if r.detail and (not r.passed or r.finding) else ""
                print(f"{status}  {d.name:<36} {r.check}{extra}")
        print("-" * 60)
        for k, (p, n) in rep.counts().items():
            print(f"{k:<16} {p}/{n}")
        for name, r in rep.findings():
            print(f"finding: {name}: {r.detail}")
        print("ALL PASSED" if rep.passed else "FAILURES PRESENT")
    if cfg.report:
        from .report import write_verify_report
        paths = write_verify_report(rep, cfg.report)
        if cfg.fmt != "json":
            print("wrote " + ", ".join(map(str, paths)))
    return EXIT_OK if rep.passed else EXIT_VERIFY


COMMANDS = {"jones": cmd_jones, "homology": cmd_homology, "atom": cmd_atom,
            "verify": cmd_verify, "cube-dump": cmd_cube_dump}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--max-crossings", type=int, default=None,
                        help="state-space cap; for verify --random, the largest random diagram")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--ring", default="z", help="z, q, z2, gfp:<p> or frob:<h>,<t>")
    common.add_argument("--convention", choices=("twisted", "untwisted"), default="twisted",
                        help="'untwisted' drops orientation signs (negative control)")

    p = _Parser(prog="kh", description="Twisted Khovanov homology of virtual links.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, helptext in (("jones", "bracket, Jones polynomial and X(a)"),
                           ("homology", "homology table and thickness"),
                           ("atom", "atom of the diagram"),
                           ("cube-dump", "states, circles, edge types and the complex")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("code", nargs="+", help="Gauss code, corpus file, or '-' for stdin")
        if name == "jones":
            sp.add_argument("--var", choices=("q", "a"), default="q")
        if name == "homology":
            sp.add_argument("--report", metavar="DIR", help="write CSV and PNG here")
    sv = sub.add_parser("verify", parents=[common], help="run structural checks")
    sv.add_argument("code", nargs="*")
    sv.add_argument("--corpus", metavar="PATH", help="corpus file or directory of *.txt")
    sv.add_argument("--random", type=int, default=0, metavar="N", help="add N seeded random diagrams")
    sv.add_argument("--checks", nargs="+", metavar="CHECK", help=f"subset of {', '.join(CHECKS)}")
    sv.add_argument("--report", metavar="DIR", help="write CSV and PNG here")
    sv.add_argument("--jobs", type=int, default=1)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig.from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except UsageError as err:
        print(f"kh: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as err:
        print(f"kh: parse error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except StateSpaceTooLarge as err:
        print(f"kh: resource cap: {err}", file=sys.stderr)
        return EXIT_CAP
    except EmptyDiagram as err:
        print(f"kh: error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
