"""Decompose unitary matrices into weighted sums of signed permutation matrices.

A unitary of side ``2^w`` is written as a weighted sum of the ``2^(2w+1)``
signed permutation matrices of DS(2^w), the group of single-qubit dihedral
gate stacks (isomorphic to the extraspecial group E+_{2^(2w+1)}), or over
its ``4^w`` element projective part. Side ``p^w`` for prime ``p`` uses the
qudit analogue in :mod:`spdecomp.qudit`.
"""

from ._backend import COMPILED
from .decomposer import (
    Decomposition,
    DistanceReport,
    decompose_group,
    decompose_projective,
    distance_report,
    fast_weights,
    g_to_h,
    h_to_g,
    naive_weights,
    parse_decomposition,
    reconstruct,
    serialize_decomposition,
)
from .matcore import (
    DimensionError,
    MatrixFormatError,
    NotUnitaryError,
    haar_random,
    is_unitary,
    load_matrix,
    parse_matrix,
    save_matrix,
    serialize_matrix,
)
from .sigperm import GroupIndex

__version__ = "0.1.0"
