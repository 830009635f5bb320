"""GLDPC Tanner graphs: exponent matrices, lifting, subcode generalisation."""

from graph.exponent import ExponentMatrix, load_exponent_matrix, row_overlap
from graph.gldpc import (
    ConstraintNode,
    GldpcCode,
    LiftedGraph,
    full_parity_check_matrix,
    generalize,
    lift,
    overlap,
)

__all__ = [
    "ExponentMatrix",
    "load_exponent_matrix",
    "row_overlap",
    "LiftedGraph",
    "ConstraintNode",
    "GldpcCode",
    "lift",
    "generalize",
    "overlap",
    "full_parity_check_matrix",
]
