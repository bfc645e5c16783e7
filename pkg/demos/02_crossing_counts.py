"""Counting roots across a subsystem, exactly.

For a partition p (eigenvalue classes) and a shape s (blocks of a subsystem),
the Weyl-orbit maximum of |Phi_X & sigma N_Psi| is an integer optimisation over
matrices with row sums s and column sums p. This script compares it with a
factorial brute force and with the closed-form two-block bound (w/m) 2c(m-c).
"""

from fractions import Fraction

from orbitsum import MultiplicityPartition, SubsystemShape, crossing_bound, max_crossing
from orbitsum.criteria import brute_force_crossing_range
from orbitsum.rootsys import all_partitions, enumerate_corank_one_shapes

p, s = MultiplicityPartition((3, 2, 1)), SubsystemShape((4, 2))
av = max_crossing(p, s)
print("partition", list(p.parts), "shape", list(s.blocks))
print("  max crossing:", av.value, "via arrangement", av.witness_matrix)
print("  brute force (min, max):", brute_force_crossing_range(p, s))

print("\nm = 6, block split (3, 3):")
s = SubsystemShape((3, 3))
for p in all_partitions(6):
    b = crossing_bound(p, s)
    v = max_crossing(p, s).value
    tag = "attained" if v == b.bound else ""
    print(f"  {str(list(p.parts)):20} max={v:3}  bound={str(b.bound):6} {tag}")

print("\nthe bound is attained only for equal classes split evenly:")
for m in range(2, 9):
    hits = [(list(p.parts), list(s.blocks)) for p in all_partitions(m)
            for s in enumerate_corank_one_shapes(m)
            if max_crossing(p, s).value == Fraction(p.largest, m) * 2 * s.blocks[1] * (m - s.blocks[1])]
    print(f"  m={m}: {hits}")
