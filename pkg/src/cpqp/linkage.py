"""Polygon linkages: short subsets and the CW model of the moduli space.

Edge ``l_{e-1}`` of the length vector is the element ``e`` of ``[n+1]``.  A
k-cell of the moduli space is a cyclic partition into ``k+3`` short blocks;
its facets merge two cyclically adjacent blocks whose union is still short.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .complex_core import ChainComplex, ComplexError, complex_from_facet_map, solve_incidence_signs
from .partitions import Cell, PartitionError, cyclic_cells, format_cell, normalize_cyclic, reflect

MITM_THRESHOLD = 20


class NonGenericError(ValueError):
    def __init__(self, subset: tuple[int, ...]):
        super().__init__(f"length vector is not generic: subset {set(subset)} has exactly half the perimeter")
        self.subset = subset


@dataclass(frozen=True)
class LengthVector:
    lengths: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.lengths) < 3:
            raise ValueError("a polygon needs at least 3 edges")
        for x in self.lengths:
            if x <= 0:
                raise ValueError(f"edge lengths must be positive, got {x}")

    @classmethod
    def of(cls, values: Iterable) -> LengthVector:
        return cls(tuple(Fraction(v) for v in values))

    @property
    def n(self) -> int:
        return len(self.lengths) - 1

    @property
    def total(self) -> Fraction:
        return sum(self.lengths, Fraction(0))

    def length(self, element: int) -> Fraction:
        return self.lengths[element - 1]

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.lengths)


def parse_lengths(text: str) -> LengthVector:
    """``"1,1,3/2"`` -> exact rationals."""
    try:
        return LengthVector.of(Fraction(tok.strip()) for tok in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse length vector {text!r}: {exc}") from exc


def _as_vector(ell) -> LengthVector:
    return ell if isinstance(ell, LengthVector) else LengthVector.of(ell)


def is_short(subset: Iterable[int], ell) -> bool:
    """``sum_{i in I} l_i < sum_{j not in I} l_j``; elements are ``1..n+1``.

    >>> is_short({1, 2}, (1, 1, 1, 1, 1))
    True
    """
    ell = _as_vector(ell)
    s = sum((ell.length(e) for e in set(subset)), Fraction(0))
    return 2 * s < ell.total


def _subset_sums(items: Sequence[tuple[int, Fraction]]) -> dict[Fraction, tuple[int, ...]]:
    out: dict[Fraction, tuple[int, ...]] = {Fraction(0): ()}
    for e, x in items:
        for s, sub in list(out.items()):
            out.setdefault(s + x, sub + (e,))
    return out


def tight_subset(ell) -> tuple[int, ...] | None:
    """A subset with exactly half the perimeter, or None when ``ell`` is generic."""
    ell = _as_vector(ell)
    half = ell.total / 2
    items = list(enumerate(ell.lengths, start=1))
    if len(items) <= MITM_THRESHOLD:
        for r in range(1, len(items)):
            for combo in itertools.combinations(items, r):
                if sum((x for _, x in combo), Fraction(0)) == half:
                    return tuple(e for e, _ in combo)
        return None
    left, right = items[: len(items) // 2], items[len(items) // 2:]
    right_sums = _subset_sums(right)
    for s, sub in _subset_sums(left).items():
        other = right_sums.get(half - s)
        if other is not None:
            return tuple(sorted(sub + other))
    return None


def is_generic(ell) -> bool:
    return tight_subset(ell) is None


def _require_generic(ell: LengthVector) -> None:
    witness = tight_subset(ell)
    if witness is not None:
        raise NonGenericError(witness)


def moduli_cells(ell) -> list[list[Cell]]:
    """Cells by moduli dimension ``#blocks - 3``."""
    ell = _as_vector(ell)
    by_cp_dim = cyclic_cells(ell.n, block_ok=lambda b: is_short(b, ell))
    top = ell.n + 1
    cells: list[list[Cell]] = [[] for _ in range(top - 2)]
    for cp_dim, cs in by_cp_dim.items():
        cells[top - cp_dim - 3] = cs
    while cells and not cells[-1]:
        cells.pop()
    return cells


def merge_facets(c: Cell, ell: LengthVector) -> list[Cell]:
    """Merges of cyclically adjacent blocks that stay short."""
    k = len(c)
    out = set()
    if k <= 3:
        return []
    for p in range(k):
        q = (p + 1) % k
        merged = c[p] + c[q]
        if not is_short(merged, ell):
            continue
        blocks = [b for t, b in enumerate(c) if t not in (p, q)]
        blocks.insert(p if q else 0, merged)
        out.add(normalize_cyclic(blocks))
    return sorted(out)


def build_moduli_complex(ell) -> ChainComplex:
    """Chain complex of the planar polygon space for a generic length vector."""
    ell = _as_vector(ell)
    _require_generic(ell)
    cells = moduli_cells(ell)
    if not cells:
        raise ComplexError(f"no closed polygon with side lengths {ell}")
    cells, cover = complex_from_facet_map(cells, lambda c: merge_facets(c, ell))
    return solve_incidence_signs(cells, cover, name=f"M({ell})", cell_label=format_cell)


def build_reduced_moduli(ell) -> ChainComplex:
    """Quotient of the moduli complex by reversing the non-``n+1`` blocks."""
    ell = _as_vector(ell)
    _require_generic(ell)
    full = moduli_cells(ell)
    if not full:
        raise ComplexError(f"no closed polygon with side lengths {ell}")
    rep = {}
    for cs in full:
        for c in cs:
            r = reflect(c)
            if r == c:
                raise PartitionError(f"reflection fixes {format_cell(c)}; quotient is not regular")
            rep[c] = min(c, r)
    cells = [sorted({rep[c] for c in cs}) for cs in full]
    cells, cover = complex_from_facet_map(cells, lambda c: [rep[f] for f in merge_facets(c, ell)])
    return solve_incidence_signs(cells, cover, name=f"Mbar({ell})", cell_label=format_cell)
