"""Graded regular CW complexes with exact integer boundary matrices."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Sequence

import numpy as np


class ComplexError(ValueError):
    """Structural problem with a chain complex or face poset."""


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a verification scan; ``witness`` holds the first failure."""

    ok: bool
    message: str = ""
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok


class SparseIntMatrix:
    """Column-indexed sparse matrix of Python ints (no explicit zeros)."""

    __slots__ = ("rows", "cols", "_cols")

    def __init__(self, rows: int, cols: int, columns: Sequence[dict[int, int]] | None = None):
        self.rows = rows
        self.cols = cols
        if columns is None:
            columns = [{} for _ in range(cols)]
        if len(columns) != cols:
            raise ComplexError("column count mismatch")
        self._cols = [{r: v for r, v in col.items() if v} for col in columns]
        for col in self._cols:
            for r in col:
                if not 0 <= r < rows:
                    raise ComplexError(f"row index {r} out of range 0..{rows - 1}")

    @classmethod
    def from_triplets(cls, rows: int, cols: int, triplets) -> SparseIntMatrix:
        columns: list[dict[int, int]] = [{} for _ in range(cols)]
        for r, c, v in triplets:
            if r in columns[c]:
                raise ComplexError(f"duplicate entry ({r}, {c})")
            columns[c][r] = int(v)
        return cls(rows, cols, columns)

    @classmethod
    def from_dense(cls, a) -> SparseIntMatrix:
        a = np.asarray(a, dtype=object)
        if a.ndim != 2:
            raise ComplexError("expected a 2-d array")
        rows, cols = a.shape
        return cls(rows, cols, [{r: int(a[r, c]) for r in range(rows) if a[r, c]} for c in range(cols)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def column(self, j: int) -> dict[int, int]:
        return self._cols[j]

    def columns(self) -> list[dict[int, int]]:
        return self._cols

    def __getitem__(self, rc: tuple[int, int]) -> int:
        r, c = rc
        return self._cols[c].get(r, 0)

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self._cols)

    def triplets(self):
        for c, col in enumerate(self._cols):
            for r in sorted(col):
                yield r, c, col[r]

    def is_zero(self) -> bool:
        return self.nnz == 0

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=np.int64)
        for r, c, v in self.triplets():
            out[r, c] = v
        return out

    def transpose_rows(self) -> list[dict[int, int]]:
        rows: list[dict[int, int]] = [{} for _ in range(self.rows)]
        for r, c, v in self.triplets():
            rows[r][c] = v
        return rows

    def __matmul__(self, other: SparseIntMatrix) -> SparseIntMatrix:
        if self.cols != other.rows:
            raise ComplexError(f"cannot compose {self.shape} with {other.shape}")
        out = []
        for col in other._cols:
            acc: dict[int, int] = {}
            for k, v in col.items():
                for r, w in self._cols[k].items():
                    acc[r] = acc.get(r, 0) + v * w
            out.append(acc)
        return SparseIntMatrix(self.rows, other.cols, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseIntMatrix) and self.shape == other.shape and self._cols == other._cols

    def __repr__(self) -> str:
        return f"SparseIntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


@dataclass
class ChainComplex:
    """Cells per dimension, covering relation, and boundary matrices.

    ``boundary[k]`` maps k-chains to (k-1)-chains (``boundary[0]`` has no rows).
    ``cover[k][j]`` lists the indices of the codim-1 faces of cell ``j`` in
    dimension ``k``; it can be ``None`` for complexes with no face poset
    (Morse complexes).
    """

    cells: list[list[Hashable]]
    boundary: list[SparseIntMatrix]
    cover: list[list[list[int]]] | None = None
    name: str = ""
    cell_label: Callable[[Hashable], str] = field(default=str, repr=False)
    index: list[dict[Hashable, int]] = field(init=False, repr=False)

    def __post_init__(self):
        if len(self.boundary) != len(self.cells):
            raise ComplexError("one boundary matrix per dimension required")
        for k, d in enumerate(self.boundary):
            rows = len(self.cells[k - 1]) if k else 0
            if d.shape != (rows, len(self.cells[k])):
                raise ComplexError(f"boundary[{k}] has shape {d.shape}, expected {(rows, len(self.cells[k]))}")
        self.index = [{c: i for i, c in enumerate(cs)} for cs in self.cells]

    @property
    def top_dim(self) -> int:
        return len(self.cells) - 1

    @property
    def counts(self) -> list[int]:
        return [len(c) for c in self.cells]

    def locate(self, cell: Hashable) -> tuple[int, int]:
        for k, idx in enumerate(self.index):
            if cell in idx:
                return k, idx[cell]
        raise KeyError(cell)

    def facets(self, k: int, j: int) -> list[int]:
        if self.cover is not None:
            return self.cover[k][j]
        return sorted(self.boundary[k].column(j))

    def cofacets(self, k: int) -> list[list[int]]:
        """Inverse of the covering relation from dimension ``k`` to ``k+1``."""
        up: list[list[int]] = [[] for _ in self.cells[k]]
        if k + 1 < len(self.cells):
            for j in range(len(self.cells[k + 1])):
                for i in self.facets(k + 1, j):
                    up[i].append(j)
        return up

    def to_json_dict(self) -> dict:
        label = self.cell_label
        return {
            "dims": list(range(len(self.cells))),
            "cells": [[label(c) for c in cs] for cs in self.cells],
            "boundary": [[[c, r, v] for r, c, v in d.triplets()] for d in self.boundary],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_json_dict(), **kw)

    @classmethod
    def from_json_dict(cls, data: dict) -> ChainComplex:
        cells = [list(cs) for cs in data["cells"]]
        mats = []
        for k, entries in enumerate(data["boundary"]):
            rows = len(cells[k - 1]) if k else 0
            mats.append(SparseIntMatrix.from_triplets(rows, len(cells[k]), ((r, c, v) for c, r, v in entries)))
        return cls(cells, mats)


def euler_characteristic(cc: ChainComplex) -> int:
    return sum((-1) ** k * n for k, n in enumerate(cc.counts))


def verify_boundary_squared(cc: ChainComplex) -> CheckReport:
    """Check ``D_{k-1} D_k = 0``; the witness is ``(k, cell, face-of-face, value)``."""
    for k in range(2, len(cc.cells)):
        prod = cc.boundary[k - 1] @ cc.boundary[k]
        for r, c, v in prod.triplets():
            return CheckReport(
                False,
                f"boundary^2 nonzero in dimension {k}",
                (k, cc.cells[k][c], cc.cells[k - 2][r], v),
            )
    return CheckReport(True, "boundary^2 = 0")


def _codim2(cc: ChainComplex, k: int, j: int) -> dict[int, list[int]]:
    mids: dict[int, list[int]] = {}
    for a in cc.facets(k, j):
        for b in cc.facets(k - 1, a):
            mids.setdefault(b, []).append(a)
    return mids


def verify_diamond(cc: ChainComplex) -> CheckReport:
    """Every length-2 interval of the face poset has exactly two middle cells.

    Intervals ending at the empty face are included: each 1-cell must have
    exactly two vertices.
    """
    if cc.cover is None:
        raise ComplexError("complex carries no face poset")
    if len(cc.cells) > 1:
        for j, faces in enumerate(cc.cover[1]):
            if len(faces) != 2:
                return CheckReport(False, "edge without two endpoints", (cc.cells[1][j], len(faces)))
    for k in range(2, len(cc.cells)):
        for j in range(len(cc.cells[k])):
            for bottom, mids in _codim2(cc, k, j).items():
                if len(mids) != 2:
                    return CheckReport(
                        False,
                        f"interval with {len(mids)} middle cells",
                        (cc.cells[k][j], cc.cells[k - 2][bottom], [cc.cells[k - 1][a] for a in mids]),
                    )
    return CheckReport(True, "every length-2 interval is a diamond")


def solve_incidence_signs(
    cells: list[list[Hashable]],
    cover: list[list[list[int]]],
    name: str = "",
    cell_label: Callable[[Hashable], str] = str,
) -> ChainComplex:
    """Assign +-1 incidences on a regular CW face poset so that boundary^2 = 0.

    Cells are processed in the given order; within a column the first facet
    gets +1 and the rest follow by propagation across shared ridges.
    """
    mats = [SparseIntMatrix(0, len(cells[0]))] if cells else []
    for k in range(1, len(cells)):
        cols: list[dict[int, int]] = []
        prev = mats[k - 1]
        for j, faces in enumerate(cover[k]):
            if not faces:
                raise ComplexError(f"cell {cells[k][j]!r} has no facets")
            if k == 1:
                if len(faces) != 2:
                    raise ComplexError(f"edge {cells[k][j]!r} must have two endpoints")
                cols.append({faces[0]: 1, faces[1]: -1})
                continue
            ridges: dict[int, list[int]] = {}
            for a in faces:
                for b in prev.column(a):
                    ridges.setdefault(b, []).append(a)
            links: dict[int, list[tuple[int, int]]] = {a: [] for a in faces}
            for b, mids in ridges.items():
                if len(mids) != 2:
                    raise ComplexError(
                        f"interval under {cells[k][j]!r} at {cells[k - 2][b]!r} has {len(mids)} middles"
                    )
                x, y = mids
                # s_y = -s_x [x:b][y:b]
                rel = -prev.column(x)[b] * prev.column(y)[b]
                links[x].append((y, rel))
                links[y].append((x, rel))
            sign = {faces[0]: 1}
            queue = deque([faces[0]])
            while queue:
                x = queue.popleft()
                for y, rel in links[x]:
                    want = sign[x] * rel
                    if y not in sign:
                        sign[y] = want
                        queue.append(y)
                    elif sign[y] != want:
                        raise ComplexError(
                            f"no consistent signs for {cells[k][j]!r} near {cells[k - 1][y]!r}"
                        )
            if len(sign) != len(faces):
                raise ComplexError(f"boundary of {cells[k][j]!r} is disconnected")
            cols.append(sign)
        mats.append(SparseIntMatrix(len(cells[k - 1]), len(cells[k]), cols))
    return ChainComplex(cells, mats, cover, name=name, cell_label=cell_label)


def complex_from_facet_map(
    cells_by_dim: dict[int, list[Hashable]] | list[list[Hashable]],
    facets_of: Callable[[Hashable], Sequence[Hashable]],
) -> tuple[list[list[Hashable]], list[list[list[int]]]]:
    """Build the index-based covering relation from a facet function."""
    if isinstance(cells_by_dim, dict):
        top = max(cells_by_dim) if cells_by_dim else -1
        cells = [list(cells_by_dim.get(k, [])) for k in range(top + 1)]
    else:
        cells = [list(c) for c in cells_by_dim]
    index = [{c: i for i, c in enumerate(cs)} for cs in cells]
    cover: list[list[list[int]]] = [[[] for _ in cells[0]]] if cells else []
    for k in range(1, len(cells)):
        cover.append([sorted(index[k - 1][f] for f in set(facets_of(c))) for c in cells[k]])
    return cells, cover
