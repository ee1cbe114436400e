"""Exact integer and modular linear algebra for homology computations.

All arithmetic is on Python integers.  Matrices come in as lists of lists,
numpy arrays or scipy sparse matrices and are converted to dict-of-rows.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy import sparse

Rows = dict[int, dict[int, int]]


def _to_rows(a: Any) -> tuple[Rows, int, int]:
    if sparse.issparse(a):
        coo = a.tocoo()
        rows: Rows = defaultdict(dict)
        for r, c, v in zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()):
            if v:
                rows[r][c] = rows[r].get(c, 0) + int(v)
        return {r: {c: v for c, v in row.items() if v} for r, row in rows.items()}, coo.shape[0], coo.shape[1]
    arr = [list(map(int, row)) for row in (a.tolist() if isinstance(a, np.ndarray) else a)]
    m = len(arr)
    n = len(arr[0]) if m else 0
    rows = {}
    for i, row in enumerate(arr):
        d = {j: v for j, v in enumerate(row) if v}
        if d:
            rows[i] = d
    return rows, m, n


@dataclass
class SmithDecomposition:
    """``U @ A @ V == D`` with ``D`` diagonal and ``d1 | d2 | ...``.

    ``diagonal`` holds the nonzero invariant factors; ``U`` and ``V`` are
    only filled when transforms were requested.
    """

    diagonal: list[int]
    shape: tuple[int, int]
    U: list[list[int]] | None = None
    V: list[list[int]] | None = None

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def torsion(self) -> list[int]:
        return [d for d in self.diagonal if d > 1]

    def D(self) -> list[list[int]]:
        m, n = self.shape
        out = [[0] * n for _ in range(m)]
        for k, d in enumerate(self.diagonal):
            out[k][k] = d
        return out


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _dense_snf(a: list[list[int]], transforms: bool):
    """Min-abs pivoting SNF on a dense matrix (rows of Python ints)."""
    A = [row[:] for row in a]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m) if transforms else None
    V = _identity(n) if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        rs, rd = A[src], A[dst]
        for c in range(n):
            if rs[c]:
                rd[c] += f * rs[c]
        if U is not None:
            us, ud = U[src], U[dst]
            for c in range(m):
                if us[c]:
                    ud[c] += f * us[c]

    def add_col(dst, src, f):  # col_dst += f * col_src
        for row in A:
            if row[src]:
                row[dst] += f * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] += f * row[src]

    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        while True:
            changed = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                        changed = True
                        break
            if changed:
                continue
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        changed = True
                        break
            if changed:
                continue
            p = A[t][t]
            offender = None
            if abs(p) != 1:
                for i in range(t + 1, m):
                    if any(A[i][j] % p for j in range(t + 1, n)):
                        offender = i
                        break
            if offender is None:
                break
            add_row(t, offender, 1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            if U is not None:
                U[t] = [-v for v in U[t]]
        diag.append(A[t][t])
        t += 1
    return diag, U, V


def smith_normal_form(a: Any, transforms: bool = False) -> SmithDecomposition:
    """Smith normal form of an integer matrix.

    Without transforms, unit pivots are eliminated on the sparse structure
    first and only the leftover block goes through the dense routine.
    """
    if transforms:
        rows, m, n = _to_rows(a)
        dense = [[rows.get(i, {}).get(j, 0) for j in range(n)] for i in range(m)]
        diag, U, V = _dense_snf(dense, True)
        return SmithDecomposition(diag, (m, n), U, V)
    rows, m, n = _to_rows(a)
    return SmithDecomposition(_sparse_invariant_factors(rows), (m, n))


def invariant_factors(a: Any) -> list[int]:
    return smith_normal_form(a).diagonal


def _sparse_invariant_factors(rows: Rows) -> list[int]:
    rows = {r: dict(row) for r, row in rows.items() if row}
    cols: dict[int, set[int]] = defaultdict(set)
    for r, row in rows.items():
        for c in row:
            cols[c].add(r)
    units = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(cols):
            members = cols.get(c)
            if not members:
                continue
            best = None
            for r in members:
                v = rows[r][c]
                if (v == 1 or v == -1) and (best is None or len(rows[r]) < len(rows[best])):
                    best = r
            if best is None:
                continue
            pivot = rows.pop(best)
            pv = pivot[c]
            for r in list(members):
                if r == best:
                    continue
                row = rows[r]
                f = row[c] * pv
                for cc, v in pivot.items():
                    nv = row.get(cc, 0) - f * v
                    if nv:
                        row[cc] = nv
                        cols[cc].add(r)
                    else:
                        row.pop(cc, None)
                        cols[cc].discard(r)
                if not row:
                    del rows[r]
            for cc in pivot:
                cols[cc].discard(best)
                if not cols[cc]:
                    del cols[cc]
            cols.pop(c, None)
            units += 1
            progress = True
    if not rows:
        return [1] * units
    col_ids = sorted({c for row in rows.values() for c in row})
    cidx = {c: i for i, c in enumerate(col_ids)}
    dense = []
    for row in rows.values():
        line = [0] * len(col_ids)
        for c, v in row.items():
            line[cidx[c]] = v
        dense.append(line)
    diag, _, _ = _dense_snf(dense, False)
    return [1] * units + diag


def rank_mod_p(a: Any, p: int) -> int:
    """Rank over GF(p) by sparse row elimination."""
    rows, _, _ = _to_rows(a)
    pending = []
    for row in rows.values():
        r = {c: v % p for c, v in row.items() if v % p}
        if r:
            pending.append(r)
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for row in pending:
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(row[c], -1, p)
                pivots[c] = {cc: (v * inv) % p for cc, v in row.items()}
                rank += 1
                break
            f = row[c]
            for cc, v in piv.items():
                nv = (row.get(cc, 0) - f * v) % p
                if nv:
                    row[cc] = nv
                else:
                    row.pop(cc, None)
    return rank


def rank_over_q(a: Any) -> int:
    return len(invariant_factors(a))
