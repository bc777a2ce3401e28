"""The step-by-step matching on CP_{n+1}: critical cells and gradient paths.

Every pair of adjacent critical cells is joined by zero or two gradient
paths, and the two paths always cancel, so the Morse boundary vanishes.
Run: python demos/03_discrete_morse.py
"""

from collections import Counter

from cpqp.cp_morse import build_cp_matching, classify_critical_cp, expected_critical_counts
from cpqp.cyclopermutohedron import build_cp
from cpqp.discrete_morse import check_acyclic, morse_boundary, path_weight, paths_between_critical
from cpqp.partitions import format_cell

n = 4
cc = build_cp(n)
m = build_cp_matching(n, cc)
print(f"{len(m)} pairs, acyclic: {bool(check_acyclic(cc, m))}")

crit = classify_critical_cp(n, m, cc)
print("critical cells by type:", Counter(c.kind for c in crit))
print("per dimension:", [len(x) for x in m.critical(cc)], "expected", expected_critical_counts(n))

morse = morse_boundary(cc, m)
top = len(morse.critical) - 1
beta = morse.critical[top][0]
for alpha in morse.critical[top - 1]:
    paths = paths_between_critical(cc, m, (top, beta), (top - 1, alpha))
    if not paths:
        continue
    print(f"{format_cell(cc.cells[top][beta])} -> {format_cell(cc.cells[top - 1][alpha])}:")
    for p in paths:
        sign = cc.boundary[top][p[1][1], beta] * path_weight(cc, p[1:])
        print("   ", " > ".join(format_cell(cc.cells[d][i]) for d, i in p), f"(sign {sign:+d})")

print("Morse boundaries all zero:", all(d.is_zero() for d in morse.boundary))
