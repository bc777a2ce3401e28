"""Moduli spaces of planar polygons with prescribed side lengths.

Cells are cyclic partitions of the edges into at least three short blocks.
Run: python demos/05_linkage.py
"""

from cpqp.homology import homology_z
from cpqp.linkage import build_moduli_complex, build_reduced_moduli, is_generic, parse_lengths, tight_subset

print("(1,1,1,1) generic?", is_generic((1, 1, 1, 1)), "tight subset:", tight_subset((1, 1, 1, 1)))

for text in ("1,1,1,1,1", "3,1,1,1,1", "1,1,1,1,1,3/2"):
    ell = parse_lengths(text)
    for build, label in ((build_moduli_complex, "M"), (build_reduced_moduli, "Mbar")):
        cc = build(ell)
        h = homology_z(cc)
        print(f"{label}({text}): cells {cc.counts}, H = {[h.describe(k) for k in range(len(h.betti))]}")

# the equilateral pentagon space is a genus 4 surface; its quotient is non-orientable
