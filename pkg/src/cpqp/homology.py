"""Integral and mod-2 homology of chain complexes.

Integer ranks and torsion come from Smith normal form.  Boundary matrices of
the complexes built here are dominated by +-1 entries, so unit pivots are
eliminated sparsely first (Markowitz-style: the pivot with the smallest
fill estimate wins) and only the residual goes through a dense exact SNF.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Sequence

from .complex_core import ChainComplex, ComplexError, SparseIntMatrix, verify_boundary_squared


@dataclass
class HomologyResult:
    betti: list[int]
    torsion: list[list[int]]
    betti_mod2: list[int] = field(default_factory=list)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    def describe(self, k: int) -> str:
        parts = []
        if self.betti[k]:
            parts.append("Z" if self.betti[k] == 1 else f"Z^{self.betti[k]}")
        groups: dict[int, int] = {}
        for t in self.torsion[k]:
            groups[t] = groups.get(t, 0) + 1
        for t, mult in sorted(groups.items()):
            parts.append(f"Z_{t}" if mult == 1 else f"Z_{t}^{mult}")
        return " + ".join(parts) if parts else "0"

    def universal_coefficients_ok(self) -> bool:
        """``betti_mod2[k] = betti[k] + #even torsion in H_k and H_{k-1}``."""
        if not self.betti_mod2:
            return True
        even = [sum(1 for t in ts if t % 2 == 0) for ts in self.torsion]
        for k, b2 in enumerate(self.betti_mod2):
            if b2 != self.betti[k] + even[k] + (even[k - 1] if k else 0):
                return False
        return True


def _dense_snf_diagonal(a: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of a small dense integer matrix."""
    a = [row[:] for row in a]
    m = len(a)
    n = len(a[0]) if m else 0
    diag: list[int] = []
    t = 0
    while t < m and t < n:
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest remaining entry of row/column t onto the pivot
            cands = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
            cands += [(abs(a[t][j]), t, j) for j in range(t, n) if a[t][j]]
            _, i, j = min(cands)
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return _normalize_diagonal(diag)


def _normalize_diagonal(diag: Sequence[int]) -> list[int]:
    """Turn any diagonal into the divisibility chain ``d1 | d2 | ...``."""
    nonzero = [abs(x) for x in diag if x]
    d = [x for x in nonzero if x > 1]
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = math.gcd(d[i], d[j])
            d[i], d[j] = g, d[i] * d[j] // g
    d = sorted(x for x in d if x > 1)
    return [1] * (len(nonzero) - len(d)) + d


def _eliminate_units(cols: list[dict[int, int]], nrows: int) -> tuple[int, list[dict[int, int]]]:
    """Sparse elimination of +-1 pivots; returns (number eliminated, residual columns).

    Columns are visited shortest first; inside a column the unit entry whose
    row is sparsest is used.  Columns touched by an elimination are requeued.
    """
    cols = [dict(c) for c in cols]
    rows: dict[int, set[int]] = {}
    for j, col in enumerate(cols):
        for i in col:
            rows.setdefault(i, set()).add(j)
    heap = [(len(c), j) for j, c in enumerate(cols) if c]
    heapq.heapify(heap)
    done: set[int] = set()
    units = 0
    while heap:
        size, pj = heapq.heappop(heap)
        pivot_col = cols[pj]
        if pj in done or size != len(pivot_col) or not pivot_col:
            continue
        unit_rows = [i for i, v in pivot_col.items() if v == 1 or v == -1]
        if not unit_rows:
            continue
        pi = min(unit_rows, key=lambda i: (len(rows[i]), i))
        pv = pivot_col[pi]
        for j in list(rows[pi]):
            if j == pj:
                continue
            col = cols[j]
            factor = col[pi] * pv  # pv is +-1, so this is col[pi] / pv
            for i, v in pivot_col.items():
                nv = col.get(i, 0) - factor * v
                if nv:
                    if i not in col:
                        rows[i].add(j)
                    col[i] = nv
                else:
                    col.pop(i, None)
                    rows[i].discard(j)
            if col:
                heapq.heappush(heap, (len(col), j))
        for i in pivot_col:
            rows[i].discard(pj)
        del rows[pi]
        cols[pj] = {}
        done.add(pj)
        units += 1
    return units, [c for c in cols if c]


def smith_normal_form(m: SparseIntMatrix) -> tuple[list[int], int]:
    """Invariant factors ``d1 | d2 | ... | dr`` and the rank ``r``.

    >>> smith_normal_form(SparseIntMatrix.from_dense([[1, 1], [1, -1]]))
    ([1, 2], 2)
    """
    units, rest = _eliminate_units(m.columns(), m.rows)
    diag = [1] * units
    if rest:
        row_ids = sorted({i for col in rest for i in col})
        pos = {i: t for t, i in enumerate(row_ids)}
        dense = [[0] * len(rest) for _ in row_ids]
        for j, col in enumerate(rest):
            for i, v in col.items():
                dense[pos[i]][j] = v
        diag += _dense_snf_diagonal(dense)
    diag = _normalize_diagonal(diag)
    return diag, len(diag)


def rank_mod2(m: SparseIntMatrix) -> int:
    """Rank over GF(2); columns become int bitsets reduced by lowest set bit."""
    pivots: dict[int, int] = {}
    rank = 0
    for col in m.columns():
        bits = 0
        for i, v in col.items():
            if v & 1:
                bits |= 1 << i
        while bits:
            low = (bits & -bits).bit_length() - 1
            other = pivots.get(low)
            if other is None:
                pivots[low] = bits
                rank += 1
                break
            bits ^= other
    return rank


def rank_mod2_columns(columns: Sequence[Sequence[int]]) -> int:
    """GF(2) rank of columns given as lists of row indices with odd coefficient."""
    pivots: dict[int, int] = {}
    rank = 0
    for col in columns:
        bits = 0
        for i in col:
            bits ^= 1 << i
        while bits:
            low = (bits & -bits).bit_length() - 1
            other = pivots.get(low)
            if other is None:
                pivots[low] = bits
                rank += 1
                break
            bits ^= other
    return rank


def _require_chain(cc: ChainComplex) -> None:
    report = verify_boundary_squared(cc)
    if not report.ok:
        raise ComplexError(f"not a chain complex: {report.message} at {report.witness}")


def homology_mod2(cc: ChainComplex, check: bool = True) -> list[int]:
    if check:
        _require_chain(cc)
    counts = cc.counts
    ranks = [rank_mod2(d) for d in cc.boundary] + [0]
    return [counts[k] - ranks[k] - ranks[k + 1] for k in range(len(counts))]


def homology_z(cc: ChainComplex, with_mod2: bool = True, check: bool = True) -> HomologyResult:
    if check:
        _require_chain(cc)
    counts = cc.counts
    snf = [smith_normal_form(d) for d in cc.boundary] + [([], 0)]
    betti = [counts[k] - snf[k][1] - snf[k + 1][1] for k in range(len(counts))]
    torsion = [[d for d in snf[k + 1][0] if d > 1] for k in range(len(counts))]
    res = HomologyResult(betti, torsion)
    if with_mod2:
        res.betti_mod2 = homology_mod2(cc, check=False)
    return res
