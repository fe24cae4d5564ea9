"""Walk through the dyadic cells V_n, their subgroups H_n and the tiling they form."""

from fractions import Fraction

from torusdiff import diameter, measure, rdf_cell, rdf_group, rdf_levels
from torusdiff.rdf import levels_str
from torusdiff.torus import pairwise_disjoint

print("n   levels        m(V_n)    diam(V_n)   |H_n|")
for n in range(1, 17):
    cell = rdf_cell(n)
    print(f"{n:<3} {levels_str(rdf_levels(n)):<13} {str(measure(cell)):<9} {str(diameter(cell)):<11} {len(rdf_group(n))}")

print()
print("Cells refine one coordinate at a time; a new coordinate opens after each square:")
for n in (9, 10, 11, 12, 13, 16, 17):
    print(f"  V_{n}: {levels_str(rdf_levels(n))}")

n = 6
tiles = [rdf_cell(n).translate(h) for h in rdf_group(n)]
print()
print(f"The {len(tiles)} translates h + V_{n}, h in H_{n}:")
print(f"  total measure {sum(t.measure for t in tiles)}, pairwise disjoint: {pairwise_disjoint(tiles)}")
print(f"  every translate has measure {Fraction(1, 2**n)} and the same diameter {diameter(tiles[-1])}")
