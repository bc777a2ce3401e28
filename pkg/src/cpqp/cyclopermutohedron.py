"""The cyclopermutohedron CP_{n+1} with explicit incidence numbers.

Incidences come from principal vertices: every cell carries the frame made of
its principal vertex and the ordered list of neighbours obtained by swapping
adjacent same-block entries.  For a facet the sign is
``sign(g) * (-1)**i_tau``, where ``g`` carries the principal vertex of the cell
to that of the facet and ``i_tau`` is the neighbour that leaves the facet.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .complex_core import ChainComplex, SparseIntMatrix
from .partitions import (
    MIN_N,
    Block,
    Cell,
    PartitionError,
    cell_dim,
    cyclic_cells,
    format_cell,
    iter_facet_splits,
    normalize_cyclic,
)

DEFAULT_MAX_N = 7


class ResourceGuardError(RuntimeError):
    """Requested complex exceeds the configured size guard."""


def check_guard(n: int, max_n: int | None) -> None:
    if n < MIN_N:
        raise ValueError(f"n must be at least {MIN_N}, got {n}")
    limit = DEFAULT_MAX_N if max_n is None else max_n
    if n > limit:
        raise ResourceGuardError(f"n={n} exceeds the resource guard n <= {limit}")


@dataclass(frozen=True)
class PrincipalVertexFrame:
    cell: Cell
    pv: tuple[int, ...]
    neighbors: tuple[tuple[int, ...], ...]


def _block_ids(blocks: Sequence[Sequence[int]]) -> list[int]:
    ids = []
    for i, b in enumerate(blocks):
        ids.extend([i] * len(b))
    return ids


def same_block_pairs(blocks: Sequence[Sequence[int]]) -> list[int]:
    """Positions ``q`` such that entries ``q`` and ``q+1`` share a block."""
    ids = _block_ids(blocks)
    return [q for q in range(len(ids) - 1) if ids[q] == ids[q + 1]]


def neighbors_at(vertex: Sequence[int], blocks: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Ordered neighbours of ``vertex`` inside the cell with the given block sizes."""
    out = []
    for q in same_block_pairs(blocks):
        v = list(vertex)
        v[q], v[q + 1] = v[q + 1], v[q]
        out.append(tuple(v))
    return out


def principal_vertex(c: Cell) -> PrincipalVertexFrame:
    pv = tuple(x for b in c for x in b)
    return PrincipalVertexFrame(c, pv, tuple(neighbors_at(pv, c)))


def permutation_sign(source: Sequence[int], target: Sequence[int]) -> int:
    """Sign of the value permutation ``g`` with ``g(source[q]) = target[q]``."""
    g = dict(zip(source, target))
    seen: set[int] = set()
    sign = 1
    for start in g:
        if start in seen:
            continue
        length = 0
        x = start
        while x not in seen:
            seen.add(x)
            x = g[x]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def locate_split(sigma: Cell, tau: Cell) -> tuple[int, Block, Block, bool] | None:
    """Find ``(p, J1, J2, rotated)`` with ``tau`` the split of block ``p`` of ``sigma``."""
    if len(tau) != len(sigma) + 1:
        return None
    k = len(sigma)
    # in-place split
    p = 0
    while p < k and sigma[p] == tau[p]:
        p += 1
    if p < k and tau[p + 2:] == sigma[p + 1:]:
        j1, j2 = tau[p], tau[p + 1]
        if tuple(sorted(j1 + j2)) == sigma[p] and not (p == k - 1 and j1[-1] == sigma[-1][-1]):
            return p, j1, j2, False
    # split of the n+1 block with n+1 in the first part
    if tau[1:-1] == sigma[:-1]:
        j1, j2 = tau[-1], tau[0]
        if tuple(sorted(j1 + j2)) == sigma[-1]:
            return k - 1, j1, j2, True
    return None


def _split_incidence(sigma: Cell, p: int, j1: Block, j2: Block, rotated: bool) -> int:
    aligned = sigma[:p] + (j1, j2) + sigma[p + 1:]
    pv_sigma = [x for b in sigma for x in b]
    pv_tau = [x for b in aligned for x in b]
    sign_g = permutation_sign(pv_sigma, pv_tau)
    # g maps PV(sigma) to PV(tau) position-wise, so g.v_t swaps the same
    # positions of PV(tau); it stays in tau iff those positions share a tau-block.
    tau_ids = _block_ids(aligned)
    missing = [t for t, q in enumerate(same_block_pairs(sigma), start=1) if tau_ids[q] != tau_ids[q + 1]]
    if len(missing) != 1:
        raise AssertionError(f"no unique missing neighbour for {sigma} -> {aligned}: {missing}")
    value = sign_g * (-1) ** missing[0]
    if rotated:
        # frame of the aligned form lists the J2 neighbours last; the canonical
        # form lists them first
        m = len(j2) - 1
        value *= (-1) ** (m * (cell_dim(sigma) - 1 - m))
    return value


def incidence_cp(sigma: Cell, tau: Cell) -> int:
    """Incidence number ``[sigma : tau]`` for a codim-1 face ``tau``.

    >>> incidence_cp(((1,), (2, 3), (4, 5), (6,)), ((1,), (2,), (3,), (4, 5), (6,)))
    -1
    """
    split = locate_split(sigma, tau)
    if split is None:
        raise PartitionError(f"{format_cell(tau)} is not a facet of {format_cell(sigma)}")
    return _split_incidence(sigma, *split)


def closed_form_incidence(sigma: Cell, p: int, j1: Block, j2: Block) -> int:
    """Closed form for in-place splits: ``(-1)**(sum_{i<p} r_i + |J1| - p) * sign(g)``."""
    r = sum(len(b) for b in sigma[:p])
    aligned = sigma[:p] + (tuple(j1), tuple(j2)) + sigma[p + 1:]
    g = permutation_sign([x for b in sigma for x in b], [x for b in aligned for x in b])
    return (-1) ** (r + len(j1) - p) * g


def facets_with_incidence(sigma: Cell) -> dict[Cell, int]:
    return {face: _split_incidence(sigma, p, j1, j2, rot) for face, p, j1, j2, rot in iter_facet_splits(sigma)}


def build_cp(n: int, max_n: int | None = None) -> ChainComplex:
    """Cellular chain complex of CP_{n+1} with the principal-vertex incidences."""
    check_guard(n, max_n)
    by_dim = cyclic_cells(n)
    cells = [by_dim[k] for k in range(len(by_dim))]
    index = [{c: i for i, c in enumerate(cs)} for cs in cells]
    mats = [SparseIntMatrix(0, len(cells[0]))]
    cover = [[[] for _ in cells[0]]]
    for k in range(1, len(cells)):
        cols, faces = [], []
        rows = index[k - 1]
        for sigma in cells[k]:
            col = {rows[f]: v for f, v in facets_with_incidence(sigma).items()}
            cols.append(col)
            faces.append(sorted(col))
        mats.append(SparseIntMatrix(len(cells[k - 1]), len(cells[k]), cols))
        cover.append(faces)
    return ChainComplex(cells, mats, cover, name=f"CP_{n + 1}", cell_label=format_cell)


def _good_triple_shape(t1: Cell, t2: Cell, s: Cell) -> tuple[int, int, Block] | None:
    for p, block in enumerate(s):
        if len(block) < 2:
            continue
        for k in block:
            rest = tuple(x for x in block if x != k)
            a = normalize_cyclic(s[:p] + ((k,), rest) + s[p + 1:])
            b = normalize_cyclic(s[:p] + (rest, (k,)) + s[p + 1:])
            if a == t1 and b == t2:
                return p, k, rest
    return None


def good_triple_sign(t1: Cell, t2: Cell, s: Cell) -> int:
    """Product ``[s:t1][s:t2]`` for ``t1=(X|k|I|Y)``, ``t2=(X|I|k|Y)``, ``s=(X|k+I|Y)``."""
    if _good_triple_shape(t1, t2, s) is None:
        raise PartitionError(
            f"({format_cell(t1)}, {format_cell(t2)}, {format_cell(s)}) is not a good triple"
        )
    return incidence_cp(s, t1) * incidence_cp(s, t2)


def random_cell(n: int, rng: random.Random, min_blocks: int = 3) -> Cell:
    """A uniformly random ordered arrangement, normalised; ``min_blocks`` enforced."""
    while True:
        elems = list(range(1, n + 2))
        rng.shuffle(elems)
        cuts = sorted(rng.sample(range(1, n + 1), rng.randint(min_blocks - 1, n)))
        blocks = [elems[a:b] for a, b in zip([0] + cuts, cuts + [n + 1])]
        if len(blocks) >= min_blocks:
            return normalize_cyclic(blocks)


def sample_good_triples(n: int, count: int, seed: int = 0) -> list[tuple[Cell, Cell, Cell]]:
    """Random good triples of CP_{n+1}; the merged block avoids ``n+1``."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        s = random_cell(n, rng)
        choices = [p for p, b in enumerate(s[:-1]) if len(b) >= 2]
        if not choices:
            continue
        p = rng.choice(choices)
        k = rng.choice(s[p])
        rest = tuple(x for x in s[p] if x != k)
        t1 = s[:p] + ((k,), rest) + s[p + 1:]
        t2 = s[:p] + (rest, (k,)) + s[p + 1:]
        out.append((t1, t2, s))
    return out
