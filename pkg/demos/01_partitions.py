"""Cyclically ordered partitions: canonical forms, faces, reflection and class.

A cell is written with blocks separated by ``|`` and the block holding n+1
written last.  Run: python demos/01_partitions.py
"""

from cpqp.partitions import class_of, codim1_faces, format_cell, is_ascending, parse_cell, reflect

# any rotation of the blocks names the same cell
c = parse_cell("4,5|6|1|2,3", normalize=True)
print("canonical form:", format_cell(c))

# facets split one block in two, in either order
print("facets:")
for f in codim1_faces(c):
    print("   ", format_cell(f))

# reflection reverses the blocks in front of the n+1 block
r = reflect(c)
print("reflection:", format_cell(r))

# the class is the pair of the two largest elements outside N in distinct blocks
for cell in (c, r):
    print(f"{format_cell(cell):>12}  class {tuple(class_of(cell))}  ascending={is_ascending(cell)}")
