"""Verification bundles shared by the command line and the acceptance suite."""

from __future__ import annotations

from typing import Callable

from . import bicyclopermutohedron as qpm
from . import cp_morse
from .complex_core import ChainComplex, CheckReport, verify_boundary_squared, verify_diamond
from .cyclopermutohedron import build_cp, good_triple_sign, sample_good_triples
from .discrete_morse import MorseComplex, check_acyclic, morse_boundary, validate_matching
from .homology import homology_z
from .linkage import build_moduli_complex, build_reduced_moduli

Check = tuple[str, CheckReport]


def _guarded(name: str, fn: Callable[[], CheckReport]) -> Check:
    try:
        return name, fn()
    except Exception as exc:  # a crash is a failed check, with the error as witness
        return name, CheckReport(False, f"{type(exc).__name__}: {exc}")


def morse_matches_direct(cc: ChainComplex, morse: MorseComplex) -> CheckReport:
    direct = homology_z(cc)
    reduced = homology_z(morse.as_chain_complex())
    for attr in ("betti", "torsion", "betti_mod2"):
        a, b = getattr(direct, attr), getattr(reduced, attr)
        if a != b:
            return CheckReport(False, f"{attr} differ", (a, b))
    return CheckReport(True, f"betti {direct.betti}")


def _equal(label: str, got, want) -> CheckReport:
    return CheckReport(got == want, f"{label} {got}" + ("" if got == want else f", expected {want}"), None if got == want else (got, want))


def _census(classify: Callable[[], object], critical: list[list[int]], want: list[int]) -> CheckReport:
    classify()  # raises on a critical cell of unexpected shape
    return _equal("counts", [len(c) for c in critical], want)


def good_triple_sweep(n: int, count: int, seed: int = 0) -> CheckReport:
    for t1, t2, s in sample_good_triples(n, count, seed):
        if good_triple_sign(t1, t2, s) != -1:
            return CheckReport(False, "good triple with product +1", (t1, t2, s))
    return CheckReport(True, f"{count} good triples give -1")


def verify_cp(n: int, seed: int = 0, triples: int = 200) -> list[Check]:
    cc = build_cp(n)
    out: list[Check] = [
        ("diamond", verify_diamond(cc)),
        ("boundary^2", verify_boundary_squared(cc)),
    ]
    m = cp_morse.build_cp_matching(n, cc)
    out.append(("matching valid", validate_matching(cc, m)))
    out.append(("matching acyclic", check_acyclic(cc, m)))
    out.append(_guarded("critical census", lambda: _census(
        lambda: cp_morse.classify_critical_cp(n, m, cc), m.critical(cc), cp_morse.expected_critical_counts(n))))
    morse = morse_boundary(cc, m)
    out.append(("path lemma", cp_morse.verify_cp_path_lemma(n, morse)))
    out.append(("Morse boundary vanishes", CheckReport(all(d.is_zero() for d in morse.boundary), "all zero")))
    out.append(("good triples", good_triple_sweep(n, triples, seed)))
    out.append(("Morse = direct homology", morse_matches_direct(cc, morse)))
    h = homology_z(cc)
    out.append(("homology", _equal("betti", (h.betti, any(h.torsion)), (cp_morse.expected_critical_counts(n), False))))
    return [(f"cp n={n} {name}", rep) for name, rep in out]


def verify_qp(n: int) -> list[Check]:
    qp = qpm.build_qp(n)
    out: list[Check] = [
        ("diamond", verify_diamond(qp)),
        ("boundary^2", verify_boundary_squared(qp)),
        ("reflection sign", qpm.verify_reflection_equivariance(n)),
    ]
    m = qpm.build_qp_matching(n, qp)
    out.append(("matching valid", validate_matching(qp, m)))
    out.append(("matching acyclic", check_acyclic(qp, m)))
    out.append(("lift inside CP matching", qpm.lift_is_cp_submatching(n, m, qp)))
    xis = [qpm.xi(n, i) for i in range(n - 1)]
    out.append(_guarded("critical census", lambda: _census(
        lambda: qpm.classify_critical_qp(n, m, qp), m.critical(qp), xis)))
    morse = morse_boundary(qp, m)
    out.append(("path theorem", qpm.verify_qp_path_theorem(n, morse)))
    out.append(("Morse dichotomy", qpm.verify_morse_dichotomy(morse)))
    out.append(("Morse = direct homology", morse_matches_direct(qp, morse)))
    h = homology_z(qp)
    out.append(("integral homology", _equal("homology", (h.betti, h.torsion), qpm.qp_theorem_homology(n))))
    out.append(("mod-2 homology", _equal("betti_mod2", h.betti_mod2, xis)))
    return [(f"qp n={n} {name}", rep) for name, rep in out]


PENTAGON = (1, 1, 1, 1, 1)


def verify_linkage(lengths=PENTAGON) -> list[Check]:
    out: list[Check] = []
    for label, build in (("M", build_moduli_complex), ("Mbar", build_reduced_moduli)):
        cc = build(lengths)
        out.append((f"{label} diamond", verify_diamond(cc)))
        out.append((f"{label} boundary^2", verify_boundary_squared(cc)))
        if tuple(lengths) == PENTAGON:
            h = homology_z(cc)
            want = ([1, 8, 1], [[], [], []]) if label == "M" else ([1, 4, 0], [[], [2], []])
            out.append((f"{label} homology", _equal("homology", (h.betti, h.torsion), want)))
    return [(f"linkage {name}", rep) for name, rep in out]


def run_all(
    max_n: int,
    which: str = "all",
    seed: int = 0,
    log: Callable[[str], None] | None = None,
    min_n: int = 3,
) -> list[Check]:
    """Checks for ``min_n..max_n``; ``which`` is cp, qp, linkage or all."""
    results: list[Check] = []

    def add(checks: list[Check]):
        for name, rep in checks:
            results.append((name, rep))
            if log:
                log(format_check(name, rep))

    for n in range(min_n, max_n + 1):
        if which in ("cp", "all"):
            add(verify_cp(n, seed))
        if which in ("qp", "all"):
            add(verify_qp(n))
    if which in ("all", "linkage"):
        add(verify_linkage())
    return results


def format_check(name: str, rep: CheckReport) -> str:
    line = f"{'PASS' if rep.ok else 'FAIL'}  {name}: {rep.message}"
    if not rep.ok and rep.witness is not None:
        line += f"  witness={rep.witness!r}"
    return line
