"""QP_{n+1}: the quotient of CP_{n+1} by reflection, and its 2-torsion.

Faces that land on descending cells are carried to their ascending partner
with the reflection sign, so boundary entries can add up to 0 or 2.
Run: python demos/04_bicyclopermutohedron.py
"""

from cpqp.bicyclopermutohedron import (
    build_qp,
    build_qp_matching,
    qp_homology_mod2,
    qp_theorem_homology,
    reflection_sign,
    verify_morse_dichotomy,
    xi,
)
from cpqp.discrete_morse import morse_boundary
from cpqp.homology import homology_z
from cpqp.partitions import parse_cell

print("reflection sign of 1,2,3|4,5|6,7,8,9:", reflection_sign(parse_cell("1,2,3|4,5|6,7,8,9")))

for n in range(3, 6):
    qp = build_qp(n)
    h = homology_z(qp)
    groups = [h.describe(k) for k in range(len(h.betti))]
    print(f"QP_{n + 1}: cells {qp.counts}, H = {groups}, closed form agrees: {(h.betti, h.torsion) == qp_theorem_homology(n)}")
    morse = morse_boundary(qp, build_qp_matching(n, qp))
    print(f"    critical {morse.counts}; {verify_morse_dichotomy(morse).message}")

# the mod-2 answer is cheap enough to go one step further
n = 7
print(f"QP_{n + 1} mod-2 Betti:", qp_homology_mod2(n), "xi:", [xi(n, i) for i in range(n - 1)])
