"""Corpus files: one Gauss code per line, ``#`` starts a comment.

A comment on the same line as a code is taken as that diagram's name.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

from .codes import Diagram, ParseError, parse


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    diagram: Diagram
    source: str
    line: int


class CorpusError(ParseError):
    def __init__(self, source: str, line: int, err: ParseError):
        col = f", column {err.column}" if getattr(err, "column", None) is not None else ""
        super().__init__(f"{source}:{line}{col}: {err}", getattr(err, "column", None))
        self.line = line


def parse_corpus(text: str, source: str = "<corpus>") -> list[CorpusEntry]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        code, _, comment = raw.partition("#")
        code = code.strip()
        if not code:
            continue
        try:
            d = parse(code)
        except ParseError as err:
            raise CorpusError(source, lineno, err) from err
        out.append(CorpusEntry(comment.strip() or code, d, source, lineno))
    return out


def load_corpus(path: str | Path) -> list[CorpusEntry]:
    """Read a corpus file, or every ``*.txt`` file in a directory (sorted)."""
    path = Path(path)
    files: Iterable[Path] = sorted(path.glob("*.txt")) if path.is_dir() else [path]
    out = []
    for f in files:
        out.extend(parse_corpus(f.read_text(encoding="utf-8"), str(f)))
    return out


def fixtures() -> list[CorpusEntry]:
    text = resources.files("twistkh.data").joinpath("fixtures.txt").read_text(encoding="utf-8")
    return parse_corpus(text, "fixtures.txt")


def fixture(name: str) -> Diagram:
    for e in fixtures():
        if e.name == name:
            return e.diagram
    raise KeyError(name)
