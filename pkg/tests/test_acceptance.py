"""Acceptance criteria 1-10, one recorded PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline; they
are also repeated in the terminal summary.  ``python tests/test_acceptance.py``
runs them without pytest.
"""

import subprocess
import sys
import time
from functools import wraps

from cpqp import bicyclopermutohedron as qpm
from cpqp.complex_core import euler_characteristic, verify_boundary_squared, verify_diamond
from cpqp.cp_morse import build_cp_matching, classify, expected_critical_counts, lemma_shape
from cpqp.cyclopermutohedron import build_cp, good_triple_sign, sample_good_triples
from cpqp.discrete_morse import morse_boundary, paths_between_critical
from cpqp.homology import homology_mod2, homology_z
from cpqp.linkage import build_moduli_complex, build_reduced_moduli
from cpqp.partitions import cyclic_cells

from acceptance_log import record
from oracles import geometric_reflection_sign


def criterion(number, title):
    """The body returns (ok, detail); exceptions count as failures."""

    def deco(fn):
        @wraps(fn)
        def run():
            try:
                ok, detail = fn()
            except Exception as exc:
                record(number, title, False, f"{type(exc).__name__}: {exc}")
                raise
            record(number, title, ok, detail)
            assert ok, detail

        return run

    return deco


_cache = {}


def cp(n):
    if ("cp", n) not in _cache:
        cc = build_cp(n)
        _cache["cp", n] = cc, build_cp_matching(n, cc)
    return _cache["cp", n]


def qp(n):
    if ("qp", n) not in _cache:
        cc = qpm.build_qp(n)
        _cache["qp", n] = cc, qpm.build_qp_matching(n, cc)
    return _cache["qp", n]


@criterion(1, "QP integral homology matches the closed form, n=3..6")
def test_criterion_1_qp_integral_homology():
    for n in range(3, 7):
        h = homology_z(qp(n)[0])
        if (h.betti, h.torsion) != qpm.qp_theorem_homology(n):
            return False, f"n={n}: got {h.betti} {h.torsion}"
    h4, h5 = homology_z(qp(4)[0]), homology_z(qp(5)[0])
    shown = [h4.describe(k) for k in range(3)], [h5.describe(k) for k in range(4)]
    ok = shown == (["Z", "Z_2^5", "Z^6"], ["Z", "Z_2^6", "Z^10", "Z^26"])
    return ok, f"n=4 {shown[0]}, n=5 {shown[1]}"


@criterion(2, "QP mod-2 Betti numbers equal xi(n,i), n=3..7")
def test_criterion_2_qp_mod2():
    for n in range(3, 8):
        got = qpm.qp_homology_mod2(n)
        want = [qpm.xi(n, i) for i in range(n - 1)]
        if got != want:
            return False, f"n={n}: {got} != {want}"
        if n <= 6 and homology_z(qp(n)[0]).betti_mod2 != want:
            return False, f"n={n}: SNF mod-2 disagrees with GF(2) ranks"
    return True, f"n=7: {got}"


@criterion(3, "CP homology is torsion free with the predicted Betti numbers, n=3..6")
def test_criterion_3_cp_homology():
    for n in range(3, 7):
        cc, m = cp(n)
        h = homology_z(cc)
        want = expected_critical_counts(n)
        if any(h.torsion) or h.betti != want:
            return False, f"n={n}: {h.betti} {h.torsion}"
        if want[n - 2] != len(m.critical(cc)[n - 2]):
            return False, f"n={n}: top count differs from the critical census"
        if sum((-1) ** i * b for i, b in enumerate(h.betti)) != euler_characteristic(cc):
            return False, f"n={n}: Euler characteristic"
    return h.betti[-1] == 72 and homology_z(cp(4)[0]).betti[2] == 17, "b_2(n=4)=17, b_4(n=6)=72"


@criterion(4, "Morse boundaries: QP zero/2-full-rank dichotomy, CP all zero, n=3..6")
def test_criterion_4_dichotomy():
    for n in range(3, 7):
        morse = morse_boundary(*qp(n))
        rep = qpm.verify_morse_dichotomy(morse)
        if not rep:
            return False, f"QP n={n}: {rep.message} {rep.witness}"
        morse = morse_boundary(*cp(n))
        if not all(d.is_zero() for d in morse.boundary):
            return False, f"CP n={n}: nonzero Morse boundary"
    return True, ""


def _enumerated_counts(cc, m):
    crit = m.critical(cc)
    for d in range(1, len(crit)):
        for j in crit[d]:
            for i in crit[d - 1]:
                yield (d, j), (d - 1, i), len(paths_between_critical(cc, m, (d, j), (d - 1, i)))


@criterion(5, "gradient path counts are 0 or 2 with the listed 2-path targets, n=3..5")
def test_criterion_5_path_counts():
    twos = 0
    for n in range(3, 6):
        cc, m = cp(n)
        for (d, j), (_, i), c in _enumerated_counts(cc, m):
            shape = lemma_shape(classify(cc.cells[d][j]), classify(cc.cells[d - 1][i]))
            if c not in (0, 2) or (c == 2) != (shape is not None):
                return False, f"CP n={n}: {c} paths {cc.cells[d][j]} -> {cc.cells[d - 1][i]}"
            twos += c == 2
        cc, m = qp(n)
        for (d, j), (_, i), c in _enumerated_counts(cc, m):
            if c == 0:
                continue
            a, b = qpm.classify_qp(cc.cells[d][j]), qpm.classify_qp(cc.cells[d - 1][i])
            if c != 2 or not qpm.path_forms(a, b):
                return False, f"QP n={n}: {c} paths {a} -> {b}"
            twos += 1
    return True, f"{twos} two-path pairs"


@criterion(6, "1000 seeded good triples in CP_6 give incidence product -1")
def test_criterion_6_good_triples():
    triples = sample_good_triples(5, 1000, seed=0)
    bad = [t for t in triples if good_triple_sign(*t) != -1]
    return len(triples) == 1000 and not bad, f"{len(triples)} sampled, {len(bad)} bad"


@criterion(7, "Morse complex homology equals direct homology over Z and Z_2, n<=5")
def test_criterion_7_morse_soundness():
    checked = 0
    for n in range(3, 6):
        for build in (cp, qp):
            cc, m = build(n)
            direct, morse = homology_z(cc), morse_boundary(cc, m).as_chain_complex()
            small = homology_z(morse)
            if (direct.betti, direct.torsion) != (small.betti, small.torsion):
                return False, f"{cc.name}: Z homology differs"
            if homology_mod2(cc) != homology_mod2(morse) or direct.betti_mod2 != small.betti_mod2:
                return False, f"{cc.name}: Z_2 homology differs"
            checked += 1
    return True, f"{checked} complexes"


@criterion(8, "reflection_sign agrees with the frame-comparison oracle on every cell, n<=5")
def test_criterion_8_reflection_sign():
    cells = 0
    for n in range(3, 6):
        for cs in cyclic_cells(n).values():
            for c in cs:
                if qpm.reflection_sign(c) != geometric_reflection_sign(c):
                    return False, f"cell {c}"
                cells += 1
        rep = qpm.verify_reflection_equivariance(n, cp(n)[0])
        if not rep:
            return False, f"chain-map check n={n}: {rep.witness}"
    return True, f"{cells} cells"


@criterion(9, "equilateral pentagon: H(M)=(Z,Z^8,Z), H(Mbar)=(Z,Z^4+Z_2,0)")
def test_criterion_9_pentagon():
    ell = (1, 1, 1, 1, 1)
    full, red = build_moduli_complex(ell), build_reduced_moduli(ell)
    hf, hr = homology_z(full), homology_z(red)
    got = [hf.describe(k) for k in range(3)], [hr.describe(k) for k in range(3)]
    ok = got == (["Z", "Z^8", "Z"], ["Z", "Z^4 + Z_2", "0"])
    ok &= euler_characteristic(full) == hf.euler_characteristic() == -6
    ok &= euler_characteristic(red) == hr.euler_characteristic() == -3
    return ok, f"M {got[0]}, Mbar {got[1]}"


@criterion(10, "diamond and boundary^2 pass everywhere; `verify all --max-n 5` exits 0 in < 2 min")
def test_criterion_10_structural():
    complexes = [cp(n)[0] for n in range(3, 6)] + [qp(n)[0] for n in range(3, 6)]
    for ell in [(1, 1, 1, 1, 1), (3, 1, 1, 1, 1), (1, 2, 2, 3, 3, 4)]:
        complexes += [build_moduli_complex(ell), build_reduced_moduli(ell)]
    for cc in complexes:
        if not verify_diamond(cc) or not verify_boundary_squared(cc):
            return False, f"{cc.name}"
    complexes = [build_cp(6), qpm.build_qp(6)]
    if not all(verify_boundary_squared(cc) for cc in complexes):
        return False, "boundary^2 at n=6"
    start = time.monotonic()
    proc = subprocess.run(
        [sys.executable, "-m", "cpqp", "verify", "all", "--max-n", "5"],
        capture_output=True,
        text=True,
        timeout=180,
    )
    took = time.monotonic() - start
    last = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    return proc.returncode == 0 and took < 120, f"exit {proc.returncode} in {took:.1f}s, {last}"


ALL = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]


if __name__ == "__main__":
    failed = 0
    for fn in sorted(ALL, key=lambda f: int(f.__name__.split("_")[2])):
        try:
            fn()
        except Exception:
            failed += 1
    sys.exit(1 if failed else 0)
