"""Checking verdicts numerically.

A sum of orbits is open iff, for generic g_i, the conjugated centralisers
Ad(g_i) n_{X_i} intersect only in 0. The oracle draws Haar-random g_i and
measures the intersection with an SVD rank cut. One confident zero certifies
openness; nonzero intersections on every sample are evidence of singularity.
"""

import numpy as np

from orbitsum import MultiplicityPartition, OrbitTuple, numeric_classify, su_classify
from orbitsum.oracle import build_representative, centralizer_basis, haar_sample

rng = np.random.default_rng(0)
u = haar_sample(4, rng).entries
print("Haar sample: |UU* - I| =", np.linalg.norm(u @ u.conj().T - np.eye(4)),
      " det =", np.round(np.linalg.det(u), 12))

for parts in [(2, 2), (3, 1), (2, 1, 1)]:
    for case in ("algebra", "group"):
        dim = centralizer_basis(build_representative(MultiplicityPartition(parts), case)).dim
        print(f"centraliser of {parts} ({case}): dim {dim}")

for parts, case in [([(2, 2), (2, 2)], "algebra"), ([(2, 2), (2, 1, 1)], "algebra"),
                    ([(2, 1), (2, 1)], "group"), ([(3, 3), (3, 3), (3, 3)], "group")]:
    t = OrbitTuple(parts, case)
    v = numeric_classify(t, samples=50, seed=1, stop_early=False)
    print(f"{parts} {case}: exact {su_classify(t).classification:8}  oracle {v.outcome:16}"
          f" dims {v.histogram}  min log10 gap {v.gap_summary()['min_log10_ratio']:.1f}")
