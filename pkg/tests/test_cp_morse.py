import pytest

from cpqp.cp_morse import (
    CpCriticalCell,
    build_cp_matching,
    classify,
    classify_critical_cp,
    expected_critical_counts,
    lemma_shape,
    step_partner,
    verify_cp_path_lemma,
)
from cpqp.cyclopermutohedron import build_cp
from cpqp.complex_core import euler_characteristic
from cpqp.discrete_morse import check_acyclic, morse_boundary
from cpqp.partitions import parse_cell


def P(text):
    return parse_cell(text, normalize=True)


@pytest.fixture(scope="module")
def cp5():
    cc = build_cp(5)
    return cc, build_cp_matching(5, cc)


def test_pairing_examples(cp5):
    cc, m = cp5
    for lo, hi, k in [("2|3,4|1|5,6", "2,3,4|1|5,6", 2), ("4|5|3|1|2,6", "4,5|3|1|2,6", 4)]:
        a, b = cc.locate(P(lo)), cc.locate(P(hi))
        assert m.up[a] == b
        assert step_partner(P(lo), k) == P(hi)
    assert not m.is_matched(cc.locate(P("4|3|2|1|5,6")))


def test_step_rule_details():
    assert step_partner(P("1|2|3,4"), 1) is None  # the merge would leave 2 blocks
    assert step_partner(P("2|1|3|4,5"), 2) is None  # k must be below I
    assert step_partner(P("1|2|3|4,5"), 1) == P("1,2|3|4,5")
    assert step_partner(P("1|2|3|4,5"), 3) is None  # the next block is the n+1 block


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_critical_census(n):
    cc = build_cp(n)
    m = build_cp_matching(n, cc)
    crit = classify_critical_cp(n, m, cc)
    got = [0] * (n - 1)
    for c in crit:
        got[n + 1 - len(c.cell)] += 1
    assert got == expected_critical_counts(n)
    # Morse inequality turned equality: chi agrees
    assert sum((-1) ** d * x for d, x in enumerate(got)) == euler_characteristic(cc)
    if n == 4:
        assert got[2] == 17 and sum(c.kind == "Type2" for c in crit) == 11
    if n == 6:
        assert got[4] == 72 and euler_characteristic(cc) == 62


def test_classify():
    assert classify(P("4|3|2|1|5,6")) == CpCriticalCell("Type1", P("4|3|2|1|5,6"), nabla=(4, 3, 2, 1))
    c = classify(P("1|2,3|4,5"))
    assert c.kind == "Type2" and c.i == 1 and c.I == (2, 3) and c.N == (4, 5)
    assert classify(P("1|3|2|4")) is None


def test_lemma_shapes():
    t1 = lambda s: classify(P(s))
    assert lemma_shape(t1("3|1|2,4,5"), t1("3|2|1|4,5")) == "nabla+k"
    assert lemma_shape(t1("1|2,3|4,5"), t1("3|2|1|4,5")) == "(i,jk)->(k,j,i)"
    assert lemma_shape(t1("1|2|3,4,5"), t1("3|2|1|4,5")) == "(i,j)->3 singletons"
    assert lemma_shape(t1("1|2|3,4,5"), t1("4|3|1|2,5")) is None


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_path_lemma_and_vanishing(n):
    cc = build_cp(n)
    m = build_cp_matching(n, cc)
    assert check_acyclic(cc, m)
    morse = morse_boundary(cc, m)
    rep = verify_cp_path_lemma(n, morse)
    assert rep, rep
    assert all(d.is_zero() for d in morse.boundary)
