"""Which sums of adjoint orbits in su(m) contain an open set?

Each orbit is described only by the multiplicities of its eigenvalues. A sum
is open exactly when the largest multiplicities are small enough,
sum q_i <= (k - 1) m, with one family of exceptions: two orbits, each with two
eigenvalues of equal multiplicity. Run with ``python demos/01_classify_tuples.py``.
"""

from orbitsum import OrbitTuple, dichotomy_classify, singular_witness, verify_witness

# Two generic-ish orbits in su(4): open, and the convolution is in L^2.
t = OrbitTuple([(2, 2), (2, 1, 1)])
v = dichotomy_classify(t)
print(t.to_json()["partitions"], "->", v.classification, v.measure_class)
print("  theorem-1 numbers:", v.theorem1.to_json())
for row in v.margins.rows:
    print(f"  shape {list(row.shape.blocks)}: {row.lhs} <= {row.rhs}  ok={row.ok}")

# The exceptional pair sits exactly on the boundary sum q_i = (k-1) m but is singular.
t = OrbitTuple([(2, 2), (2, 2)])
v = dichotomy_classify(t)
print(t.to_json()["partitions"], "->", v.classification, v.measure_class)
print("  fails at shape", list(v.failing_shape.blocks))
print("  witness family:", v.witness.family, "vectors:", v.witness.vectors)

# A witness is a relative position in which the roots crossing Psi are disjoint.
w = singular_witness(OrbitTuple([(2, 1), (2, 1)]))
for i, s in enumerate(w.crossing_sets(), 1):
    print(f"  N_{i} & N_Psi = {sorted(s)}")
print("  verified:", verify_witness(w))

# Adding orbits helps: three copies of the exceptional orbit give an open sum.
print([(3, 3)] * 3, "->", dichotomy_classify(OrbitTuple([(3, 3)] * 3)).classification)
