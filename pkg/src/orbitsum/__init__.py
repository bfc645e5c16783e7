"""Open versus singular sums of adjoint orbits in su(m) and products of
conjugacy classes in SU(m), decided from eigenvalue multiplicities and
cross-checked numerically."""

from .criteria import (
    ArrangementValue,
    SingularWitness,
    Verdict,
    crossing_bound,
    dichotomy_classify,
    l2_check,
    max_crossing,
    min_crossing,
    open_check_general,
    rank_lower_bound,
    singular_witness,
    su_classify,
    verify_witness,
)
from .oracle import OracleVerdict, numeric_classify
from .rootsys import (
    MultiplicityPartition,
    OrbitTuple,
    SubsystemShape,
    corank,
    enumerate_corank_one_shapes,
    enumerate_proper_shapes,
    n_psi_size,
    phi_size,
)

__version__ = "0.1.0"
