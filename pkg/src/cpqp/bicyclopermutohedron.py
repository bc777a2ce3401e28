"""QP_{n+1}: the quotient of CP_{n+1} by the block-reversing involution.

Every quotient cell is represented by its ascending lift.  Boundaries descend
from CP: a descending facet ``tau`` of an ascending cell is replaced by
``reflect(tau)`` with the orientation transfer ``reflection_sign(tau)``.  Two
facets of one cell can land on the same quotient cell, so coefficients
accumulate and may be 0 or +-2; the covering relation is kept separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .complex_core import ChainComplex, CheckReport, SparseIntMatrix
from .cp_morse import run_steps, step_partner
from .cyclopermutohedron import build_cp, check_guard, facets_with_incidence
from .discrete_morse import Matching, MorseComplex, MorseError, morse_boundary
from .homology import rank_mod2_columns
from .partitions import (
    Block,
    Cell,
    PartitionError,
    cell_dim,
    class_of,
    codim1_faces,
    cyclic_cells,
    format_cell,
    is_ascending,
    reflect,
)


@dataclass(frozen=True, order=True)
class BiCyclicCell:
    rep: Cell

    def __post_init__(self):
        if not is_ascending(self.rep):
            raise PartitionError(f"{format_cell(self.rep)} is not ascending")

    @property
    def cls(self) -> tuple[int, int]:
        return class_of(self.rep).unordered

    def __str__(self) -> str:
        return format_cell(self.rep)


@dataclass(frozen=True)
class QpCriticalCell:
    i: int
    I: Block
    nabla: tuple[int, ...]
    N: Block

    @property
    def cell(self) -> Cell:
        return ((self.i,), self.I) + tuple((x,) for x in self.nabla) + (self.N,)


def ascending_representative(c: Cell) -> BiCyclicCell:
    return BiCyclicCell(c if is_ascending(c) else reflect(c))


def higher(b: BiCyclicCell | Cell, a: BiCyclicCell | Cell) -> bool:
    """Whether ``b`` is higher than ``a``: both sorted class entries are ``>=``."""
    cb = class_of(b.rep if isinstance(b, BiCyclicCell) else b).unordered
    ca = class_of(a.rep if isinstance(a, BiCyclicCell) else a).unordered
    return cb[0] >= ca[0] and cb[1] >= ca[1]


def sgn(s: int) -> int:
    """``(-1)**((s-1)/2)`` for odd ``s``, ``(-1)**(s/2)`` for even ``s``."""
    if s < 0:
        raise ValueError("sgn is defined for s >= 0")
    return (-1) ** ((s - 1) // 2) if s % 2 else (-1) ** (s // 2)


def reflection_sign(c: Cell) -> int:
    """Orientation of ``c`` against the pull-back of that of ``reflect(c)``.

    ``|A|`` is read as the dimension of ``c``.
    """
    a = cell_dim(c)
    w = len(c[-1])
    out = sgn(a - w + 1) * sgn(w - 1) * sgn(w)
    for b in c[:-1]:
        out *= sgn(len(b))
    return out


def ascending_cells(n: int) -> list[list[Cell]]:
    by_dim = cyclic_cells(n)
    return [[c for c in by_dim[k] if is_ascending(c)] for k in range(len(by_dim))]


def build_qp(n: int, max_n: int | None = None) -> ChainComplex:
    """Chain complex of QP_{n+1}; cells are the ascending lifts."""
    check_guard(n, max_n)
    cells = ascending_cells(n)
    index = [{c: i for i, c in enumerate(cs)} for cs in cells]
    mats = [SparseIntMatrix(0, len(cells[0]))]
    cover = [[[] for _ in cells[0]]]
    for k in range(1, len(cells)):
        rows = index[k - 1]
        cols, faces = [], []
        for sigma in cells[k]:
            col: dict[int, int] = {}
            for tau, v in facets_with_incidence(sigma).items():
                if tau in rows:
                    r = rows[tau]
                else:
                    r = rows[reflect(tau)]
                    v *= reflection_sign(tau)
                col[r] = col.get(r, 0) + v
            faces.append(sorted(col))
            cols.append(col)
        mats.append(SparseIntMatrix(len(cells[k - 1]), len(cells[k]), cols))
        cover.append(faces)
    return ChainComplex(cells, mats, cover, name=f"QP_{n + 1}", cell_label=format_cell)


def qp_boundary_mod2(n: int, max_n: int | None = None) -> tuple[list[int], list[list[list[int]]]]:
    """Cell counts and GF(2) boundary columns of QP_{n+1}, signs skipped.

    Only the parity of the number of CP facets over each quotient facet
    matters, which avoids all orientation work for the larger ``n``.
    """
    check_guard(n, max_n)
    cells = ascending_cells(n)
    mats: list[list[list[int]]] = [[[] for _ in cells[0]]]
    for k in range(1, len(cells)):
        rows = {c: i for i, c in enumerate(cells[k - 1])}
        cols = []
        for sigma in cells[k]:
            odd: set[int] = set()
            for tau in codim1_faces(sigma):
                r = rows.get(tau)
                if r is None:
                    r = rows[reflect(tau)]
                odd ^= {r}
            cols.append(sorted(odd))
        mats.append(cols)
    return [len(cs) for cs in cells], mats


def qp_homology_mod2(n: int, max_n: int | None = None) -> list[int]:
    counts, mats = qp_boundary_mod2(n, max_n)
    ranks = [rank_mod2_columns(cols) for cols in mats] + [0]
    return [counts[k] - ranks[k] - ranks[k + 1] for k in range(len(counts))]


def xi(n: int, i: int) -> int:
    return sum(comb(n, k) for k in range(i + 1))


def qp_step_partner(cell: Cell, k: int) -> Cell | None:
    beta = step_partner(cell, k)
    if beta is None or len(beta) < 3 or class_of(beta) != class_of(cell):
        return None
    return beta


def build_qp_matching(n: int, qp: ChainComplex | None = None) -> Matching:
    """Steps of the CP matching run on ascending cells only, with the class kept."""
    if qp is None:
        qp = build_qp(n)
    cells = [c for cs in qp.cells for c in cs]
    m, conflicts = run_steps(qp, n, cells, qp_step_partner)
    if conflicts:
        raise MorseError(f"in-step pairing conflicts: {conflicts[:3]}")
    return m


def classify_qp(cell: Cell) -> QpCriticalCell | None:
    if len(cell) < 3 or len(cell[0]) != 1:
        return None
    i = cell[0][0]
    big = cell[1]
    rest = cell[2:-1]
    if any(len(b) != 1 for b in rest):
        return None
    nabla = tuple(b[0] for b in rest)
    if any(a <= b for a, b in zip(nabla, nabla[1:])):
        return None
    if nabla and nabla[0] >= i:
        return None
    if i >= big[0]:
        return None
    return QpCriticalCell(i, big, nabla, cell[-1])


def critical_from_n_set(n: int, extra: tuple[int, ...], dim: int) -> QpCriticalCell:
    """The critical ``dim``-cell whose ``n+1`` set is ``extra + (n+1,)``."""
    rest = [x for x in range(1, n + 1) if x not in extra]
    nabla_len = n - 2 - dim
    nabla = tuple(reversed(rest[:nabla_len]))
    return QpCriticalCell(rest[nabla_len], tuple(rest[nabla_len + 1:]), nabla, tuple(sorted(extra)) + (n + 1,))


def classify_critical_qp(n: int, m: Matching | None = None, qp: ChainComplex | None = None) -> list[QpCriticalCell]:
    if qp is None:
        qp = build_qp(n)
    if m is None:
        m = build_qp_matching(n, qp)
    out = []
    for k, idx in enumerate(m.critical(qp)):
        for j in idx:
            c = qp.cells[k][j]
            crit = classify_qp(c)
            if crit is None:
                raise MorseError(f"critical cell {format_cell(c)} is not of the form (i,I,nabla,N)")
            expect = critical_from_n_set(n, c[-1][:-1], k)
            if expect != crit:
                raise MorseError(f"critical cell {format_cell(c)} not determined by its n+1 set")
            out.append(crit)
    return out


def path_forms(a: QpCriticalCell, b: QpCriticalCell) -> list[str]:
    """Listed shapes that ``b`` (one dimension lower) takes relative to ``a``."""
    forms = []
    i, I, nabla, N = a.i, a.I, a.nabla, a.N
    moved = set(N) - set(b.N)
    if len(moved) == 1 and set(b.N) < set(N):
        (t,) = moved
        if i < t < I[0] and b == QpCriticalCell(t, I, (i,) + nabla, b.N):
            forms.append("(t,I,i,nabla,N-t)")
        if t < i and b == QpCriticalCell(i, I, tuple(sorted(nabla + (t,), reverse=True)), b.N):
            forms.append("(i,I,nabla+t,N-t)")
    # t sits in the set slot of the target here, so it may be any nonempty T > I
    if moved and len(I) == 1 and set(b.N) < set(N) and min(moved) > I[0]:
        if b == QpCriticalCell(I[0], tuple(sorted(moved)), (i,) + nabla, b.N):
            forms.append("(I,T,i,nabla,N-T)")
    if b.N == N and len(I) >= 2:
        j = I[0]
        if b == QpCriticalCell(j, I[1:], (i,) + nabla, N):
            forms.append("(j,I-j,i,nabla,N)")
    return forms


def verify_qp_path_theorem(n: int, morse: MorseComplex | None = None) -> CheckReport:
    """Path counts between adjacent critical cells are 0 or 2; the 2s have a listed form."""
    if morse is None:
        qp = build_qp(n)
        morse = morse_boundary(qp, build_qp_matching(n, qp))
    qp = morse.ambient
    twos = 0
    for d in range(1, len(morse.critical)):
        counts = morse.path_counts[d]
        for col, j in enumerate(morse.critical[d]):
            a = classify_qp(qp.cells[d][j])
            for row, i in enumerate(morse.critical[d - 1]):
                c = counts[row, col]
                if c == 0:
                    continue
                b = classify_qp(qp.cells[d - 1][i])
                if c != 2 or not path_forms(a, b):
                    return CheckReport(False, f"{c} paths", (format_cell(a.cell), format_cell(b.cell)))
                twos += 1
    return CheckReport(True, f"{twos} critical pairs joined by two paths")


def lift_is_cp_submatching(n: int, qp_matching: Matching, qp: ChainComplex, cp: ChainComplex | None = None) -> CheckReport:
    """Every QP pair lifts to a pair of the CP matching (on ascending lifts)."""
    from .cp_morse import build_cp_matching

    if cp is None:
        cp = build_cp(n)
    cpm = build_cp_matching(n, cp)
    for lo, hi in qp_matching.pairs():
        a = cp.locate(qp.cells[lo[0]][lo[1]])
        b = cp.locate(qp.cells[hi[0]][hi[1]])
        if cpm.up.get(a) != b:
            return CheckReport(False, "QP pair is not a CP pair", (qp.cells[lo[0]][lo[1]], qp.cells[hi[0]][hi[1]]))
    return CheckReport(True, f"{len(qp_matching)} pairs lift")


def qp_theorem_homology(n: int) -> tuple[list[int], list[list[int]]]:
    """Closed-form integral homology of QP_{n+1}: free ranks and torsion lists."""
    betti, torsion = [], []
    for i in range(n - 1):
        if i % 2 == 0:
            betti.append(comb(n, i))
            torsion.append([])
        elif i == n - 2:
            betti.append(xi(n, i))
            torsion.append([])
        else:
            betti.append(0)
            torsion.append([2] * xi(n, i))
    return betti, torsion


def verify_reflection_equivariance(n: int, cp: ChainComplex | None = None) -> CheckReport:
    """``[s:t] = e(s) e(t) [r s : r t]`` on every covering pair of CP_{n+1}.

    This is exactly the condition for ``c -> e(c) r(c)`` to be a chain map,
    i.e. for ``reflection_sign`` to be the orientation transfer.
    """
    if cp is None:
        cp = build_cp(n)
    for k in range(1, len(cp.cells)):
        d = cp.boundary[k]
        rows = cp.index[k - 1]
        cols = cp.index[k]
        for j, s in enumerate(cp.cells[k]):
            rs = cols[reflect(s)]
            es = reflection_sign(s)
            for i, v in d.column(j).items():
                t = cp.cells[k - 1][i]
                w = d[rows[reflect(t)], rs]
                if v != es * reflection_sign(t) * w:
                    return CheckReport(False, "reflection is not a chain map with these signs", (format_cell(s), format_cell(t)))
    return CheckReport(True, "reflection signs make r a chain map")


def verify_morse_dichotomy(morse: MorseComplex) -> CheckReport:
    """Odd Morse boundaries vanish; even ones are diag(2,...,2) of full row rank."""
    from .homology import smith_normal_form

    for k in range(1, len(morse.boundary)):
        d = morse.boundary[k]
        if k % 2:
            if not d.is_zero():
                return CheckReport(False, f"Morse boundary {k} is not zero", (k, next(d.triplets())))
            continue
        diag, rank = smith_normal_form(d)
        if any(x != 2 for x in diag) or rank != d.rows:
            return CheckReport(False, f"Morse boundary {k} is not 2-full rank", (k, diag, d.shape))
    return CheckReport(True, "odd boundaries zero, even boundaries 2-full rank")
