"""Finite-dimensional toolkit for indefinite Kasparov modules and Wick rotations."""

from .core import (
    EVEN,
    NONE,
    ODD,
    GradedOperator,
    GradedSpace,
    HermiticityError,
    SpaceMismatchError,
    adjoint,
    anticommutator,
    commutator,
    graded_anticommutator,
    graded_commutator,
    graph_inner,
    hermitian_residual,
    imag_part,
    operator_norm,
    real_part,
)
from .report import CheckReport
from .rotations import (
    DoubledOperator,
    WickPair,
    double_commuting,
    double_odd_to_even,
    opposite_equivalence_check,
    reverse_wick,
    wick_rotate,
)

__version__ = "0.1.0"

__all__ = [
    "EVEN",
    "NONE",
    "ODD",
    "CheckReport",
    "DoubledOperator",
    "GradedOperator",
    "GradedSpace",
    "HermiticityError",
    "SpaceMismatchError",
    "WickPair",
    "adjoint",
    "anticommutator",
    "commutator",
    "double_commuting",
    "double_odd_to_even",
    "graded_anticommutator",
    "graded_commutator",
    "graph_inner",
    "hermitian_residual",
    "imag_part",
    "operator_norm",
    "opposite_equivalence_check",
    "real_part",
    "reverse_wick",
    "wick_rotate",
]
