"""Per-node distance profiles and pairwise overlap tables.

Scheduling works at one of two granularities:
    row   one profile per exponent row (its subcode), overlaps counted in
          shared block columns
    node  one profile per lifted constraint node, overlaps counted in
          shared variables
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from codes.linear_code import LinearCode
from graph.exponent import ExponentMatrix
from graph.gldpc import GldpcCode, overlap

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class NodeProfile:
    id: int
    d_min: int
    a_min: int
    n: int
    degree: int
    code: Optional[LinearCode] = None


def profile_code(code: LinearCode, id: int = 0, degree: Optional[int] = None) -> NodeProfile:
    return NodeProfile(id=id, d_min=code.d_min, a_min=code.a_min, n=code.n,
                       degree=code.n if degree is None else degree, code=code)


def row_profiles(code: GldpcCode) -> List[NodeProfile]:
    """One profile per exponent row, ids 0..rows-1."""
    degrees = code.exp.row_degrees
    return [profile_code(sub, i, degrees[i]) for i, sub in enumerate(code.row_subcodes)]


def node_profiles(code: GldpcCode, node_ids: Optional[Sequence[int]] = None) -> List[NodeProfile]:
    ids = range(len(code.nodes)) if node_ids is None else node_ids
    return [profile_code(code.nodes[i].subcode, i, code.nodes[i].degree) for i in ids]


class OverlapTable:
    """Symmetric n_ab lookup, filled lazily from a pair function."""

    def __init__(self, pair_fn: Callable[[int, int], int]):
        self._pair_fn = pair_fn
        self._cache: Dict[Tuple[int, int], int] = {}

    @classmethod
    def from_matrix(cls, matrix) -> "OverlapTable":
        m = np.asarray(matrix)
        return cls(lambda a, b: int(m[a, b]))

    def __call__(self, a: int, b: int) -> int:
        key = (a, b) if a <= b else (b, a)
        value = self._cache.get(key)
        if value is None:
            value = self._pair_fn(*key)
            self._cache[key] = value
        return value


def row_overlap_table(exp: ExponentMatrix) -> OverlapTable:
    """Shared block columns between every pair of exponent rows."""
    present = (exp.entries >= 0).astype(np.int64)
    return OverlapTable.from_matrix(present @ present.T)


def node_overlap_table(code: GldpcCode) -> OverlapTable:
    """Shared variables between lifted constraint nodes."""
    return OverlapTable(lambda a, b: overlap(code.nodes[a], code.nodes[b]))
