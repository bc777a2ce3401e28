import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpqp.partitions import (
    PartitionError,
    class_of,
    codim1_faces,
    cyclic_cells,
    format_cell,
    is_ascending,
    is_refinement,
    normalize_cyclic,
    parse_cell,
    reflect,
)
from cpqp.cyclopermutohedron import random_cell

from oracles import refinement_closure


def P(text):
    return parse_cell(text, normalize=True)


@st.composite
def ordered_partitions(draw, min_n=3, max_n=7, min_blocks=3):
    n = draw(st.integers(min_n, max_n))
    elems = draw(st.permutations(range(1, n + 2)))
    k = draw(st.integers(min_blocks, n + 1))
    cuts = sorted(draw(st.sets(st.integers(1, n), min_size=k - 1, max_size=k - 1)))
    return [elems[a:b] for a, b in zip([0] + cuts, cuts + [n + 1])]


class TestNormalize:
    def test_examples(self):
        assert normalize_cyclic([(4, 6), (1,), (2, 3, 5)]) == ((1,), (2, 3, 5), (4, 6))
        assert normalize_cyclic([(1,), (2,), (3,), (4,)]) == ((1,), (2,), (3,), (4,))
        assert normalize_cyclic([(2, 3, 5), (4, 6), (1,)]) == ((1,), (2, 3, 5), (4, 6))

    @pytest.mark.parametrize(
        "blocks, needle",
        [
            ([(1, 2), (2, 3), (4,)], "2"),  # overlap
            ([(1,), (3,), (4,)], "2"),  # gap
            ([(1,), (), (2, 3)], "empty"),
        ],
    )
    def test_validation_names_offender(self, blocks, needle):
        with pytest.raises(PartitionError, match=needle):
            normalize_cyclic(blocks)

    def test_explicit_n_checks_range(self):
        with pytest.raises(PartitionError):
            normalize_cyclic([(1,), (2,), (3,)], n=3)

    @given(ordered_partitions())
    def test_idempotent_and_rotation_invariant(self, blocks):
        c = normalize_cyclic(blocks)
        assert normalize_cyclic(c) == c
        assert c[-1][-1] == max(x for b in blocks for x in b)
        for r in range(len(blocks)):
            assert normalize_cyclic(blocks[r:] + blocks[:r]) == c


class TestParse:
    def test_roundtrip(self):
        c = ((1,), (2, 3), (4, 5), (6,))
        assert format_cell(c) == "1|2,3|4,5|6"
        assert parse_cell("1|2,3|4,5|6") == c

    def test_non_canonical_rejected_unless_normalize(self):
        with pytest.raises(PartitionError, match="not canonical"):
            parse_cell("4,6|1|2,3,5")
        assert parse_cell("4,6|1|2,3,5", normalize=True) == ((1,), (2, 3, 5), (4, 6))
        # unsorted block is also non-canonical
        with pytest.raises(PartitionError):
            parse_cell("1|3,2|4")

    def test_garbage(self):
        with pytest.raises(PartitionError):
            parse_cell("1|a|3")


class TestFaces:
    def test_spec_example(self):
        faces = codim1_faces(P("1|2,3|4,5|6"))
        assert faces == sorted(P(t) for t in ["1|2|3|4,5|6", "1|3|2|4,5|6", "1|2,3|4|5|6", "1|2,3|5|4|6"])

    def test_all_singletons(self):
        assert codim1_faces(P("1|2|3|4")) == []

    def test_split_of_top_block(self):
        faces = codim1_faces(P("1,2|3|4,5"))
        assert len(faces) == 4
        assert P("1,2|3|4|5") in faces
        assert P("1,2|3|5|4") in faces  # rotated: 5 ends up last
        assert P("5|1,2|3|4") in faces

    # with a single block the two orders of a split coincide cyclically
    @given(ordered_partitions(min_blocks=2))
    def test_count_and_dimension(self, blocks):
        c = normalize_cyclic(blocks)
        faces = codim1_faces(c)
        assert len(faces) == len(set(faces)) == sum(2 ** len(b) - 2 for b in c if len(b) >= 2)
        assert faces == sorted(faces)
        assert all(len(f) == len(c) + 1 for f in faces)


class TestRefinement:
    def test_examples(self):
        coarse = P("1|2,3|4,5|6")
        assert is_refinement(P("1|2|3|4,5|6"), coarse)
        assert not is_refinement(P("2|1|3|4,5|6"), coarse)
        assert is_refinement(coarse, coarse)

    def test_mismatched_n(self):
        with pytest.raises(PartitionError):
            is_refinement(P("1|2|3|4"), P("1|2|3|4,5"))

    @pytest.mark.parametrize("n", [3, 4])
    def test_matches_bfs_closure(self, n):
        cells = [c for cs in cyclic_cells(n, min_blocks=1).values() for c in cs]
        for fine in cells:
            up = refinement_closure(fine)
            for coarse in cells:
                assert is_refinement(fine, coarse) == (coarse in up), (fine, coarse)

    def test_faces_are_refinements(self):
        for cs in cyclic_cells(4).values():
            for c in cs:
                for f in codim1_faces(c):
                    assert is_refinement(f, c) and not is_refinement(c, f)


class TestReflectAndClass:
    def test_reflect_examples(self):
        assert reflect(P("1,2,3|4,5|6,7,8,9")) == P("4,5|1,2,3|6,7,8,9")
        # reverse the non-N blocks: (1|2|3|4) -> (3|2|1|4)
        assert reflect(P("1|2|3|4")) == P("3|2|1|4")

    def test_class_examples(self):
        assert class_of(P("1|2,3|4,5|6")) == (3, 5)
        assert class_of(P("4,5|2,3|1|6")) == (5, 3)
        assert is_ascending(P("1|2,3|4,5|6"))
        assert not is_ascending(P("4,5|2,3|1|6"))
        assert class_of(P("1|2,3|4,5|6")).unordered == (3, 5)

    def test_class_needs_three_blocks(self):
        with pytest.raises(PartitionError):
            class_of(P("1,2|3,4"))

    def test_random_cells(self):
        rng = random.Random(7)
        for _ in range(200):
            n = rng.randint(3, 6)
            c = random_cell(n, rng)
            r = reflect(c)
            assert reflect(r) == c
            assert r != c
            i, j = class_of(c)
            assert class_of(r) == (j, i)
            assert is_ascending(c) != is_ascending(r)

    @settings(max_examples=200)
    @given(ordered_partitions(max_n=6))
    def test_class_is_two_largest_in_distinct_blocks(self, blocks):
        c = normalize_cyclic(blocks)
        i, j = class_of(c)
        body = c[:-1]
        where = {x: t for t, b in enumerate(body) for x in b}
        outside = sorted(where)
        assert max(i, j) == outside[-1]
        assert where[i] != where[j]
        assert min(i, j) == max(x for x in outside if where[x] != where[outside[-1]])
        assert where[i] < where[j]

    def test_half_ascending(self):
        cells = [c for cs in cyclic_cells(4).values() for c in cs]
        assert 2 * sum(map(is_ascending, cells)) == len(cells)


def test_cell_counts_are_stirling_times_cyclic_orders():
    # S(n+1, m) (m-1)! cells with m blocks
    from math import factorial

    def stirling2(n, k):
        if n == k:
            return 1
        if k == 0 or k > n:
            return 0
        return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)

    for n in range(3, 7):
        by_dim = cyclic_cells(n)
        for dim, cells in by_dim.items():
            m = n + 1 - dim
            assert len(cells) == stirling2(n + 1, m) * factorial(m - 1)
