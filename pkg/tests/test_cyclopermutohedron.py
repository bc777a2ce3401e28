import random

import pytest

from cpqp.complex_core import verify_boundary_squared, verify_diamond
from cpqp.cyclopermutohedron import (
    ResourceGuardError,
    build_cp,
    closed_form_incidence,
    good_triple_sign,
    incidence_cp,
    locate_split,
    permutation_sign,
    principal_vertex,
    random_cell,
    sample_good_triples,
)
from cpqp.partitions import PartitionError, cell_dim, codim1_faces, iter_facet_splits, parse_cell

from oracles import geometric_incidence


def P(text):
    return parse_cell(text, normalize=True)


def test_principal_vertex_frame():
    f = principal_vertex(P("1|2,3|4,5|6"))
    assert f.pv == (1, 2, 3, 4, 5, 6)
    assert f.neighbors == ((1, 3, 2, 4, 5, 6), (1, 2, 3, 5, 4, 6))
    rng = random.Random(1)
    for _ in range(50):
        c = random_cell(6, rng)
        assert len(principal_vertex(c).neighbors) == cell_dim(c)


def test_permutation_sign():
    assert permutation_sign([1, 2, 3], [1, 2, 3]) == 1
    assert permutation_sign([1, 2, 3], [2, 1, 3]) == -1
    assert permutation_sign([1, 2, 3], [2, 3, 1]) == 1


def test_incidence_example_and_errors():
    assert incidence_cp(P("1|2,3|4,5|6"), P("1|2|3|4,5|6")) == -1
    with pytest.raises(PartitionError):
        incidence_cp(P("1|2,3|4,5|6"), P("2|1|3|4,5|6"))


def test_locate_split_roundtrip():
    rng = random.Random(2)
    for _ in range(100):
        c = random_cell(6, rng)
        for face, p, j1, j2, rotated in iter_facet_splits(c):
            assert locate_split(c, face) == (p, j1, j2, rotated)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_incidence_matches_geometry(n):
    """Oracle: outward normal followed by the face frame, against the cell frame."""
    cc = build_cp(n)
    for k in range(1, len(cc.cells)):
        for j, sigma in enumerate(cc.cells[k]):
            for i, v in cc.boundary[k].column(j).items():
                assert v == geometric_incidence(sigma, cc.cells[k - 1][i]), (sigma, cc.cells[k - 1][i])


def test_closed_form_on_in_place_splits():
    rng = random.Random(3)
    for _ in range(200):
        c = random_cell(6, rng)
        for face, p, j1, j2, rotated in iter_facet_splits(c):
            if not rotated:
                assert closed_form_incidence(c, p, j1, j2) == incidence_cp(c, face)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_chain_complex(n):
    cc = build_cp(n)
    assert verify_boundary_squared(cc)
    assert all(abs(v) == 1 for d in cc.boundary for _, _, v in d.triplets())
    if n <= 5:
        assert verify_diamond(cc)


def test_boundary_support_is_face_set():
    cc = build_cp(4)
    for k in range(1, len(cc.cells)):
        for j, c in enumerate(cc.cells[k]):
            assert sorted(cc.cells[k - 1][i] for i in cc.boundary[k].column(j)) == codim1_faces(c)


def test_good_triples():
    for t1, t2, s in sample_good_triples(5, 300, seed=11):
        assert good_triple_sign(t1, t2, s) == -1
    with pytest.raises(PartitionError):
        good_triple_sign(P("1|2|3|4"), P("1|2|3|4"), P("1|2,3|4"))


def test_good_triple_in_top_block_is_not_required():
    # merged block containing n+1 is outside the lemma's shape; just well defined
    s = P("1|2|3,4,5")
    t1, t2 = P("1|2|3|4,5"), P("1|2|4,5|3")
    assert incidence_cp(s, t1) in (1, -1) and incidence_cp(s, t2) in (1, -1)


def test_guard():
    with pytest.raises(ResourceGuardError):
        build_cp(9)
    with pytest.raises(ResourceGuardError):
        build_cp(5, max_n=4)
    with pytest.raises(ValueError):
        build_cp(2)
