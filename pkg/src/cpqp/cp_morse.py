"""The step-by-step matching on CP_{n+1} and its critical cells.

At step ``k`` a cell ``(..., {k}, I, ...)`` is paired with ``(..., {k} u I, ...)``
when ``n+1`` is not in ``I``, ``k < min I`` and both cells are still free.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, Iterable

from .complex_core import ChainComplex, CheckReport
from .cyclopermutohedron import build_cp
from .discrete_morse import Matching, MorseComplex, MorseError, morse_boundary
from .partitions import Block, Cell, format_cell


@dataclass(frozen=True)
class CpCriticalCell:
    kind: str  # "Type1" or "Type2"
    cell: Cell
    nabla: tuple[int, ...] = ()
    i: int | None = None
    I: Block = ()

    @property
    def N(self) -> Block:
        return self.cell[-1]


def step_partner(cell: Cell, k: int) -> Cell | None:
    """The cell ``cell`` would be merged into at step ``k``, if any."""
    for p in range(len(cell) - 2):
        if cell[p] == (k,):
            rest = cell[p + 1]
            if k < rest[0] and len(cell) >= 4:
                return cell[:p] + (tuple(sorted((k,) + rest)),) + cell[p + 2:]
            return None
    return None


def run_steps(
    cc: ChainComplex,
    n: int,
    candidates: Iterable[Cell],
    partner: Callable[[Cell, int], Cell | None],
) -> tuple[Matching, list]:
    """Apply steps ``k = 1..n-1``; returns the matching and any in-step conflicts."""
    m = Matching()
    conflicts = []
    cand = list(candidates)
    for k in range(1, n):
        claimed: dict = {}
        for alpha in cand:
            beta = partner(alpha, k)
            if beta is None:
                continue
            a = cc.locate(alpha)
            b = (a[0] + 1, cc.index[a[0] + 1][beta])
            if m.is_matched(a) or m.is_matched(b):
                if claimed.get(b, alpha) != alpha:
                    conflicts.append((k, claimed[b], alpha, beta))
                continue
            m.add(a, b)
            claimed[b] = alpha
    return m, conflicts


def build_cp_matching(n: int, cc: ChainComplex | None = None) -> Matching:
    """The CP matching as ``(dim, index)`` pairs into ``build_cp(n)``.

    >>> m = build_cp_matching(3)
    >>> len(m)
    5
    """
    if cc is None:
        cc = build_cp(n)
    cells = [c for cs in cc.cells for c in cs]
    m, conflicts = run_steps(cc, n, cells, step_partner)
    if conflicts:
        raise MorseError(f"in-step pairing conflicts: {conflicts[:3]}")
    return m


def classify(cell: Cell) -> CpCriticalCell | None:
    body = cell[:-1]
    if all(len(b) == 1 for b in body):
        xs = tuple(b[0] for b in body)
        if all(a > b for a, b in zip(xs, xs[1:])):
            return CpCriticalCell("Type1", cell, nabla=xs)
    if len(body) == 2 and len(body[0]) == 1 and body[0][0] < body[1][0]:
        return CpCriticalCell("Type2", cell, i=body[0][0], I=body[1])
    return None


def classify_critical_cp(n: int, m: Matching | None = None, cc: ChainComplex | None = None) -> list[CpCriticalCell]:
    """Critical cells sorted by dimension then canonical form."""
    if cc is None:
        cc = build_cp(n)
    if m is None:
        m = build_cp_matching(n, cc)
    out = []
    for k, idx in enumerate(m.critical(cc)):
        for j in idx:
            c = cc.cells[k][j]
            crit = classify(c)
            if crit is None:
                raise MorseError(f"critical cell {format_cell(c)} is of neither type")
            out.append(crit)
    return out


def expected_critical_counts(n: int) -> list[int]:
    counts = [comb(n, d) for d in range(n - 1)]
    counts[n - 2] += 2 ** n - n - 1
    return counts


def lemma_shape(beta: CpCriticalCell, alpha: CpCriticalCell) -> str | None:
    """Which of the three two-path shapes ``beta -> alpha`` matches, if any.

    The ``n+1`` sets are implied: they differ by the element that moves.
    """
    if beta.kind == "Type1" and alpha.kind == "Type1":
        if set(alpha.nabla) > set(beta.nabla) and len(alpha.nabla) == len(beta.nabla) + 1:
            return "nabla+k"
    if beta.kind == "Type2" and alpha.kind == "Type1":
        if len(beta.I) == 2:
            j, k = beta.I
            if alpha.nabla == (k, j, beta.i):
                return "(i,jk)->(k,j,i)"
        if len(beta.I) == 1 and len(alpha.nabla) == 3 and {beta.i, beta.I[0]} <= set(alpha.nabla):
            return "(i,j)->3 singletons"
    return None


def verify_cp_path_lemma(n: int, morse: MorseComplex | None = None) -> CheckReport:
    """Path counts are 0 or 2, and 2 exactly for the three listed shapes."""
    if morse is None:
        cc = build_cp(n)
        morse = morse_boundary(cc, build_cp_matching(n, cc))
    cc = morse.ambient
    twos = 0
    for d in range(1, len(morse.critical)):
        counts = morse.path_counts[d]
        for col, j in enumerate(morse.critical[d]):
            beta = classify(cc.cells[d][j])
            for row, i in enumerate(morse.critical[d - 1]):
                alpha = classify(cc.cells[d - 1][i])
                c = counts[row, col]
                shape = lemma_shape(beta, alpha)
                if c not in (0, 2) or (c == 2) != (shape is not None):
                    return CheckReport(
                        False,
                        f"{c} paths, shape {shape}",
                        (format_cell(beta.cell), format_cell(alpha.cell)),
                    )
                twos += c == 2
    return CheckReport(True, f"{twos} critical pairs joined by two paths")
