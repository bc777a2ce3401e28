"""Build CP_{n+1} with explicit incidence numbers and check it is a chain complex.

Run: python demos/02_cyclopermutohedron.py
"""

from cpqp.complex_core import euler_characteristic, verify_boundary_squared, verify_diamond
from cpqp.cyclopermutohedron import build_cp, incidence_cp, principal_vertex
from cpqp.homology import homology_z
from cpqp.partitions import parse_cell

sigma = parse_cell("1|2,3|4,5|6")
frame = principal_vertex(sigma)
print("principal vertex:", frame.pv)
print("neighbours:", frame.neighbors)
for face in ("1|2|3|4,5|6", "1|2,3|4|5|6"):
    print(f"[{'1|2,3|4,5|6'} : {face}] =", incidence_cp(sigma, parse_cell(face)))

for n in range(3, 6):
    cc = build_cp(n)
    h = homology_z(cc)
    print(
        f"CP_{n + 1}: cells {cc.counts}, chi {euler_characteristic(cc)},",
        f"d^2=0 {bool(verify_boundary_squared(cc))}, diamond {bool(verify_diamond(cc))},",
        f"betti {h.betti}, torsion-free {not any(h.torsion)}",
    )
