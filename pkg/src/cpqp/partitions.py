"""Cyclically ordered partitions of ``{1, ..., n+1}``.

A cell is stored as a tuple of blocks, each block a sorted tuple of ints,
rotated so that the block holding ``n+1`` comes last.  Plain tuples keep the
cells hashable, cheap to compare and totally ordered, which is what every
builder downstream relies on for deterministic output.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, NamedTuple, Sequence

Block = tuple[int, ...]
Cell = tuple[Block, ...]

MIN_N = 3


class PartitionError(ValueError):
    """Raised for malformed partitions or cells outside an operation's domain."""


class ClassPair(NamedTuple):
    """Ordered class ``(first, second)`` of a cell; ``unordered`` is its QP class."""

    first: int
    second: int

    @property
    def unordered(self) -> tuple[int, int]:
        return (min(self), max(self))


def _validate_blocks(blocks: Sequence[Iterable[int]], n: int | None) -> list[Block]:
    out: list[Block] = []
    seen: set[int] = set()
    for b in blocks:
        block = tuple(sorted(b))
        if not block:
            raise PartitionError("empty block in partition")
        for x in block:
            if not isinstance(x, int) or isinstance(x, bool):
                raise PartitionError(f"non-integer element {x!r}")
            if x in seen:
                raise PartitionError(f"element {x} appears in more than one block")
            seen.add(x)
        out.append(block)
    if not seen:
        raise PartitionError("partition has no blocks")
    top = max(seen) if n is None else n + 1
    for x in sorted(seen):
        if x < 1 or x > top:
            raise PartitionError(f"element {x} outside 1..{top}")
    missing = [x for x in range(1, top + 1) if x not in seen]
    if missing:
        raise PartitionError(f"element {missing[0]} missing from partition")
    return out


def normalize_cyclic(blocks: Sequence[Iterable[int]], n: int | None = None) -> Cell:
    """Return the rotation of ``blocks`` whose last block contains ``n+1``.

    ``n`` is inferred from the largest element when omitted.

    >>> normalize_cyclic([(4, 6), (1,), (2, 3, 5)])
    ((1,), (2, 3, 5), (4, 6))
    """
    checked = _validate_blocks(blocks, n)
    top = sum(len(b) for b in checked)
    return _rotate(checked, top)


def _rotate(blocks: Sequence[Block], top: int) -> Cell:
    for i, b in enumerate(blocks):
        if b[-1] == top:
            return tuple(blocks[i + 1:]) + tuple(blocks[:i + 1])
    raise PartitionError(f"no block contains {top}")


def cell_n(c: Cell) -> int:
    """The ``n`` of the ground set ``[n+1]``."""
    return c[-1][-1] - 1


def cell_dim(c: Cell) -> int:
    """CP dimension ``n + 1 - #blocks``; equals the sum of ``|block| - 1``."""
    return sum(len(b) for b in c) - len(c)


def is_canonical(c: Sequence[Sequence[int]]) -> bool:
    try:
        return tuple(tuple(b) for b in c) == normalize_cyclic(c)
    except PartitionError:
        return False


def format_cell(c: Cell) -> str:
    """Text form used by the CLI and JSON export, e.g. ``1|2,3|4,5|6``."""
    return "|".join(",".join(str(x) for x in b) for b in c)


def parse_cell(text: str, normalize: bool = False) -> Cell:
    """Parse ``1|2,3|4,5|6``; non-canonical input is rejected unless ``normalize``."""
    try:
        blocks = [[int(tok) for tok in part.split(",")] for part in text.strip().split("|")]
    except ValueError as exc:
        raise PartitionError(f"cannot parse cell {text!r}") from exc
    cell = normalize_cyclic(blocks)
    given = tuple(tuple(b) for b in blocks)
    if not normalize and given != cell:
        raise PartitionError(
            f"{text!r} is not canonical (expected {format_cell(cell)}); pass normalize=True"
        )
    return cell


def iter_facet_splits(c: Cell) -> Iterator[tuple[Cell, int, Block, Block, bool]]:
    """Yield ``(face, p, J1, J2, rotated)`` for every ordered split of a block.

    ``rotated`` marks the faces whose canonical form is not the in-place split,
    which happens exactly when the ``n+1`` block is split with ``n+1`` in ``J1``.
    """
    top = c[-1][-1]
    last = len(c) - 1
    for p, block in enumerate(c):
        if len(block) < 2:
            continue
        for r in range(1, len(block)):
            for j1 in itertools.combinations(block, r):
                j2 = tuple(x for x in block if x not in j1)
                if p == last and j1[-1] == top:
                    face = (j2,) + c[:last] + (j1,)
                    yield face, p, j1, j2, True
                else:
                    yield c[:p] + (j1, j2) + c[p + 1:], p, j1, j2, False


def codim1_faces(c: Cell) -> list[Cell]:
    """All codimension-one faces of ``c``, sorted, one block split into two."""
    return sorted({f for f, *_ in iter_facet_splits(c)})


def is_refinement(fine: Cell, coarse: Cell) -> bool:
    """Whether ``fine`` lies in the closure of ``coarse``.

    Every block of ``fine`` must sit inside a block of ``coarse`` and, read
    around the circle, the blocks of ``fine`` must visit the blocks of
    ``coarse`` in their cyclic order, each one in a single contiguous run.
    """
    if cell_n(fine) != cell_n(coarse):
        raise PartitionError("cells live on different ground sets")
    owner = {x: i for i, b in enumerate(coarse) for x in b}
    labels = []
    for b in fine:
        ids = {owner[x] for x in b}
        if len(ids) != 1:
            return False
        labels.append(ids.pop())
    k = len(coarse)
    if k == 1:
        return True
    changes = 0
    for prev, cur in zip(labels[-1:] + labels[:-1], labels):
        if prev != cur:
            if cur != (prev + 1) % k:
                return False
            changes += 1
    return changes == k


def reflect(c: Cell) -> Cell:
    """The involution reversing every block except the ``n+1`` block."""
    return tuple(reversed(c[:-1])) + (c[-1],)


def class_of(c: Cell) -> ClassPair:
    """Ordered class of a cell, from the two largest elements outside ``N``.

    ``j`` is the largest element outside the ``n+1`` block, ``i`` the largest
    outside both that block and ``j``'s block; the pair is listed in the order
    in which their blocks occur.
    """
    if len(c) < 3:
        raise PartitionError("class is defined only for cells with at least 3 blocks")
    body = c[:-1]
    l = max(range(len(body)), key=lambda t: body[t][-1])
    j = body[l][-1]
    m = max((t for t in range(len(body)) if t != l), key=lambda t: body[t][-1])
    i = body[m][-1]
    return ClassPair(i, j) if m < l else ClassPair(j, i)


def is_ascending(c: Cell) -> bool:
    first, second = class_of(c)
    return first < second


def set_partitions(elems: Sequence[int]) -> Iterator[list[list[int]]]:
    """Unordered set partitions of ``elems`` (recursive, restricted-growth order)."""
    if not elems:
        yield []
        return
    first, rest = elems[0], elems[1:]
    for p in set_partitions(rest):
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]
        yield [[first]] + p


def cyclic_cells(
    n: int, min_blocks: int = 3, block_ok=None
) -> dict[int, list[Cell]]:
    """Canonical cyclic partitions of ``[n+1]`` grouped by CP dimension.

    ``block_ok`` optionally filters admissible blocks (used for short subsets
    of a linkage).  Each list is sorted.
    """
    top = n + 1
    out: dict[int, list[Cell]] = {}
    for p in set_partitions(list(range(1, top + 1))):
        if len(p) < min_blocks:
            continue
        blocks = [tuple(sorted(b)) for b in p]
        if block_ok is not None and not all(block_ok(b) for b in blocks):
            continue
        last = next(b for b in blocks if b[-1] == top)
        others = [b for b in blocks if b is not last]
        dim = top - len(blocks)
        bucket = out.setdefault(dim, [])
        for perm in itertools.permutations(others):
            bucket.append(perm + (last,))
    for cells in out.values():
        cells.sort()
    return dict(sorted(out.items()))
