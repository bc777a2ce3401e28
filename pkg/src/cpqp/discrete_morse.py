"""Discrete vector fields on chain complexes and their Morse complexes.

Cells are addressed as ``(dim, index)`` pairs into a :class:`ChainComplex`.
A gradient path in dimension ``p`` goes ``s1, t1, s2, t2, ...`` with
``(s_i, t_i)`` a matched pair and ``s_{i+1}`` another facet of ``t_i``.  The
weighted path sums needed for the Morse boundary are accumulated by dynamic
programming over the (acyclic) path graph instead of by listing paths.
"""

from __future__ import annotations

import graphlib
from dataclasses import dataclass, field
from typing import Iterator

from .complex_core import ChainComplex, CheckReport, SparseIntMatrix

CellId = tuple[int, int]


class MorseError(RuntimeError):
    pass


@dataclass
class Matching:
    """Pairs ``(lower, upper)`` with ``dim(upper) = dim(lower) + 1``."""

    up: dict[CellId, CellId] = field(default_factory=dict)
    down: dict[CellId, CellId] = field(default_factory=dict)

    @classmethod
    def from_pairs(cls, pairs) -> Matching:
        m = cls()
        for lo, hi in pairs:
            m.add(lo, hi)
        return m

    def add(self, lower: CellId, upper: CellId) -> None:
        if lower in self.up or lower in self.down or upper in self.up or upper in self.down:
            raise MorseError(f"cell already matched: {lower} / {upper}")
        self.up[lower] = upper
        self.down[upper] = lower

    def pairs(self) -> list[tuple[CellId, CellId]]:
        return sorted(self.up.items())

    def is_matched(self, cell: CellId) -> bool:
        return cell in self.up or cell in self.down

    def critical(self, cc: ChainComplex) -> list[list[int]]:
        return [
            [j for j in range(len(cs)) if (k, j) not in self.up and (k, j) not in self.down]
            for k, cs in enumerate(cc.cells)
        ]

    def __len__(self) -> int:
        return len(self.up)


def validate_matching(cc: ChainComplex, m: Matching) -> CheckReport:
    seen: set[CellId] = set()
    for lo, hi in m.pairs():
        for cell in (lo, hi):
            k, j = cell
            if not (0 <= k < len(cc.cells) and 0 <= j < len(cc.cells[k])):
                return CheckReport(False, "unknown cell", cell)
            if cell in seen:
                return CheckReport(False, "cell matched twice", cc.cells[k][j])
            seen.add(cell)
        if hi[0] != lo[0] + 1:
            return CheckReport(False, "pair does not step up one dimension", (lo, hi))
        if lo[1] not in cc.facets(*hi):
            return CheckReport(False, "lower cell is not a facet", (cc.cells[lo[0]][lo[1]], cc.cells[hi[0]][hi[1]]))
    return CheckReport(True, f"{len(m)} pairs")


def _successors(cc: ChainComplex, m: Matching, cell: CellId) -> list[int]:
    hi = m.up.get(cell)
    if hi is None:
        return []
    return [f for f in cc.facets(*hi) if f != cell[1]]


def check_acyclic(cc: ChainComplex, m: Matching) -> CheckReport:
    """No closed V-path; the witness lists the cells of a cycle."""
    for k in range(len(cc.cells) - 1):
        graph = {}
        for (d, j) in m.up:
            if d == k:
                graph[j] = [f for f in _successors(cc, m, (k, j)) if (k, f) in m.up]
        try:
            tuple(graphlib.TopologicalSorter(graph).static_order())
        except graphlib.CycleError as exc:
            cycle = exc.args[1]
            path = []
            for j in cycle:
                path.append(cc.cells[k][j])
            return CheckReport(False, f"closed V-path in dimension {k}", path)
    return CheckReport(True, "acyclic")


def _order(cc: ChainComplex, m: Matching, k: int) -> list[int]:
    """p-cells in an order where every path successor comes first."""
    graph = {j: _successors(cc, m, (k, j)) for j in range(len(cc.cells[k]))}
    try:
        return list(graphlib.TopologicalSorter(graph).static_order())
    except graphlib.CycleError as exc:
        raise MorseError(f"matching has a closed V-path in dimension {k}") from exc


def incidence(cc: ChainComplex, upper: CellId, lower: CellId) -> int:
    return cc.boundary[upper[0]][lower[1], upper[1]]


def path_weight(cc: ChainComplex, path) -> int:
    """Orientation transfer ``prod -[t_i:s_i][t_i:s_{i+1}]`` along a V-path."""
    w = 1
    for i in range(0, len(path) - 1, 2):
        s, t, s_next = path[i], path[i + 1], path[i + 2]
        w *= -incidence(cc, t, s) * incidence(cc, t, s_next)
    return w


def path_flows(cc: ChainComplex, m: Matching, k: int) -> tuple[list[dict[int, int]], list[dict[int, int]]]:
    """For each k-cell, weighted and plain path counts to each critical k-cell."""
    crit = set(m.critical(cc)[k])
    n = len(cc.cells[k])
    weight: list[dict[int, int]] = [{} for _ in range(n)]
    count: list[dict[int, int]] = [{} for _ in range(n)]
    d = cc.boundary[k + 1] if k + 1 < len(cc.cells) else None
    for j in _order(cc, m, k):
        if j in crit:
            weight[j] = {j: 1}
            count[j] = {j: 1}
            continue
        hi = m.up.get((k, j))
        if hi is None:
            continue
        col = d.column(hi[1])
        own = col[j]
        w_acc: dict[int, int] = {}
        c_acc: dict[int, int] = {}
        for f in cc.facets(k + 1, hi[1]):
            if f == j:
                continue
            step = -own * col.get(f, 0)
            for c, v in weight[f].items():
                w_acc[c] = w_acc.get(c, 0) + step * v
            for c, v in count[f].items():
                c_acc[c] = c_acc.get(c, 0) + v
        weight[j] = {c: v for c, v in w_acc.items() if v}
        count[j] = c_acc
    return weight, count


@dataclass
class MorseComplex:
    """Critical cells (indices into the ambient complex) and Morse boundaries."""

    ambient: ChainComplex
    critical: list[list[int]]
    boundary: list[SparseIntMatrix]
    path_counts: list[SparseIntMatrix]

    @property
    def counts(self) -> list[int]:
        return [len(c) for c in self.critical]

    def critical_cells(self, k: int) -> list:
        return [self.ambient.cells[k][j] for j in self.critical[k]]

    def as_chain_complex(self) -> ChainComplex:
        return ChainComplex(
            [self.critical_cells(k) for k in range(len(self.critical))],
            self.boundary,
            name=f"Morse({self.ambient.name})",
            cell_label=self.ambient.cell_label,
        )


def morse_boundary(cc: ChainComplex, m: Matching) -> MorseComplex:
    """Morse complex: ``<d~t, s> = sum_{s' facet of t} [t:s'] sum_paths w``."""
    critical = m.critical(cc)
    mats = [SparseIntMatrix(0, len(critical[0]))]
    counts = [SparseIntMatrix(0, len(critical[0]))]
    for k in range(1, len(cc.cells)):
        weight, count = path_flows(cc, m, k - 1)
        pos = {j: r for r, j in enumerate(critical[k - 1])}
        w_cols, c_cols = [], []
        for j in critical[k]:
            col = cc.boundary[k].column(j)
            w_acc: dict[int, int] = {}
            c_acc: dict[int, int] = {}
            for f in cc.facets(k, j):
                inc = col.get(f, 0)
                for c, v in weight[f].items():
                    w_acc[pos[c]] = w_acc.get(pos[c], 0) + inc * v
                for c, v in count[f].items():
                    c_acc[pos[c]] = c_acc.get(pos[c], 0) + v
            w_cols.append(w_acc)
            c_cols.append(c_acc)
        mats.append(SparseIntMatrix(len(critical[k - 1]), len(critical[k]), w_cols))
        counts.append(SparseIntMatrix(len(critical[k - 1]), len(critical[k]), c_cols))
    for k in range(2, len(mats)):
        if not (mats[k - 1] @ mats[k]).is_zero():
            raise MorseError(f"Morse boundary squares to nonzero in dimension {k}")
    return MorseComplex(cc, critical, mats, counts)


def iter_gradient_paths(cc: ChainComplex, m: Matching, start: CellId, end: CellId) -> Iterator[tuple[CellId, ...]]:
    """Depth-first enumeration of V-paths from ``start`` to ``end``."""
    if start[0] != end[0]:
        return
    k = start[0]
    limit = 2 * len(cc.cells[k]) + 1

    def walk(cell: CellId, trail: tuple[CellId, ...]):
        if len(trail) > limit:
            raise MorseError("path longer than the number of cells; matching is not acyclic")
        if cell == end:
            yield trail
            return
        hi = m.up.get(cell)
        if hi is None:
            return
        for f in _successors(cc, m, cell):
            yield from walk((k, f), trail + (hi, (k, f)))

    yield from walk(start, (start,))


def enumerate_gradient_paths(cc: ChainComplex, m: Matching, start: CellId, end: CellId) -> list[tuple[CellId, ...]]:
    return sorted(iter_gradient_paths(cc, m, start, end))


def paths_between_critical(cc: ChainComplex, m: Matching, upper: CellId, lower: CellId) -> list[tuple[CellId, ...]]:
    """All gradient paths from the facets of ``upper`` to ``lower``, prefixed by ``upper``."""
    out = []
    for f in cc.facets(*upper):
        for p in iter_gradient_paths(cc, m, (upper[0] - 1, f), lower):
            out.append((upper,) + p)
    return sorted(out)
