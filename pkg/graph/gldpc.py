"""Quasi-cyclic lifting and subcode generalisation.

lift() expands an exponent matrix into a base Tanner graph of SPC checks.
generalize() binds each lifted check of a row to that row's subcode and
fixes the coordinate assignment, producing a GldpcCode.

Numbering (all 0-based internally):
    variable  j*ZC + ((P[i][j] + t) mod ZC)
    node      i*ZC + t   for lifted check t of exponent row i
    edge      consecutive per node, in node order then edge-position order

Edge positions follow ascending block column. A node's assignment maps
edge position p to subcode coordinate assignment[p].
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence

import numpy as np

from codes.families import make_code, spc
from codes.gf2 import gf2_nullspace, gf2_rank
from codes.linear_code import LinearCode
from core.errors import CodeConstructionError, ConfigError
from graph.exponent import ExponentMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LiftedGraph:
    """Base Tanner graph: row_neighbors[i] is (ZC, deg_i), variables per lifted check."""
    exp: ExponentMatrix
    row_neighbors: tuple

    @property
    def N(self) -> int:
        return self.exp.cols * self.exp.lifting_size

    @property
    def check_count(self) -> int:
        return self.exp.rows * self.exp.lifting_size


def lift(exp: ExponentMatrix) -> LiftedGraph:
    """Expand every circulant: check t of row i touches j*ZC + ((P[i][j]+t) mod ZC)."""
    zc = exp.lifting_size
    t = np.arange(zc)[:, None]
    row_neighbors = []
    for i in range(exp.rows):
        cols = exp.block_columns(i)
        shifts = exp.entries[i, cols]
        nb = cols[None, :] * zc + (shifts[None, :] + t) % zc
        nb.setflags(write=False)
        row_neighbors.append(nb)
    return LiftedGraph(exp, tuple(row_neighbors))


@dataclass(frozen=True, eq=False)
class ConstraintNode:
    id: int
    exponent_row: int
    lifted_index: int
    neighbors: np.ndarray      # variables by edge position
    subcode: LinearCode
    assignment: np.ndarray     # edge position -> subcode coordinate
    first_edge: int

    @property
    def degree(self) -> int:
        return int(self.neighbors.size)

    @property
    def coord_vars(self) -> np.ndarray:
        """Variables in subcode-coordinate order."""
        out = np.empty_like(self.neighbors)
        out[self.assignment] = self.neighbors
        return out

    @property
    def coord_edges(self) -> np.ndarray:
        out = np.empty_like(self.neighbors)
        out[self.assignment] = self.first_edge + np.arange(self.degree)
        return out

    @property
    def is_spc(self) -> bool:
        return self.subcode.is_spc


@dataclass(frozen=True, eq=False)
class RowLayer:
    """All ZC lifted checks of one exponent row, stacked for vectorised updates.

    Checks of one row touch disjoint variables (one circulant per block
    column), so a layer can be updated in a single step.
    """
    row: int
    subcode: LinearCode
    node_ids: np.ndarray      # (ZC,)
    coord_vars: np.ndarray    # (ZC, n)
    coord_edges: np.ndarray   # (ZC, n)


class GldpcCode:
    """Lifted GLDPC Tanner graph with subcode-bound constraint nodes."""

    def __init__(self, exp: ExponentMatrix, nodes: List[ConstraintNode],
                 row_subcodes: List[LinearCode], policy: str = "sequential"):
        self.exp = exp
        self.ZC = exp.lifting_size
        self.N = exp.cols * exp.lifting_size
        self.row_count = exp.rows
        self.nodes = nodes
        self.row_subcodes = row_subcodes
        self.policy = policy

        self.layers: List[RowLayer] = []
        for i in range(self.row_count):
            row_nodes = nodes[i * self.ZC:(i + 1) * self.ZC]
            cv = np.stack([nd.coord_vars for nd in row_nodes])
            ce = np.stack([nd.coord_edges for nd in row_nodes])
            cv.setflags(write=False)
            ce.setflags(write=False)
            self.layers.append(RowLayer(i, row_subcodes[i], np.array([nd.id for nd in row_nodes]), cv, ce))

        self.num_edges = sum(nd.degree for nd in nodes)
        edge_vars = np.empty(self.num_edges, dtype=np.int64)
        for nd in nodes:
            edge_vars[nd.first_edge:nd.first_edge + nd.degree] = nd.neighbors
        edge_vars.setflags(write=False)
        self.edge_vars = edge_vars
        self.var_degrees = np.bincount(edge_vars, minlength=self.N)

    def __repr__(self):
        return f"GldpcCode({self.exp.name}, ZC={self.ZC}, N={self.N}, nodes={len(self.nodes)})"

    # ------------------------------------------------------------------
    # Derived code parameters
    # ------------------------------------------------------------------

    @cached_property
    def parity_check_matrix(self) -> np.ndarray:
        return full_parity_check_matrix(self)

    @cached_property
    def rank(self) -> int:
        return gf2_rank(self.parity_check_matrix)

    @property
    def check_equations(self) -> int:
        return self.parity_check_matrix.shape[0]

    @property
    def K(self) -> int:
        return self.N - self.rank

    @property
    def rate(self) -> float:
        return self.K / self.N

    @cached_property
    def generator(self) -> np.ndarray:
        """K x N generator matrix, used for random-codeword transmission."""
        g = gf2_nullspace(self.parity_check_matrix)
        g.setflags(write=False)
        return g

    def is_codeword(self, word) -> bool:
        w = np.asarray(word, dtype=np.int64)
        return not ((self.parity_check_matrix.astype(np.int64) @ w) % 2).any()

    # ------------------------------------------------------------------
    # Schedules
    # ------------------------------------------------------------------

    def row_nodes(self, row: int) -> List[int]:
        """Node ids of exponent row `row` (0-based), ascending lifted index."""
        return list(range(row * self.ZC, (row + 1) * self.ZC))

    def expand_rows(self, rows: Sequence[int]) -> List[int]:
        """Row-level schedule (0-based rows) to node-level sequence."""
        out: List[int] = []
        for r in rows:
            out.extend(self.row_nodes(r))
        return out

    def summary(self) -> Dict[str, object]:
        deficiency = self.check_equations - self.rank
        return {
            "exponent_matrix": self.exp.name,
            "lifting_size": self.ZC,
            "N": self.N,
            "K": self.K,
            "rank": self.rank,
            "check_equations": self.check_equations,
            "rank_deficiency": deficiency,
            "rate": self.rate,
            "row_subcodes": [c.label for c in self.row_subcodes],
            "assignment": self.policy,
        }


def generalize(base: LiftedGraph, row_subcodes: Optional[Dict[int, object]] = None,
               policy: str = "sequential", seed: Optional[int] = None) -> GldpcCode:
    """Bind subcodes to exponent rows.

    Args:
        base: lifted SPC graph.
        row_subcodes: 0-based row -> code descriptor or LinearCode. Rows
            not listed become SPC(row degree).
        policy: "sequential" (coordinate k on the k-th neighbour) or
            "random" (independent uniform permutation per node, from seed).
    """
    if policy not in ("sequential", "random"):
        raise ConfigError(f"code.assignment must be 'sequential' or 'random', got {policy!r}")
    row_subcodes = row_subcodes or {}
    exp = base.exp
    for r in row_subcodes:
        if not 0 <= r < exp.rows:
            raise ConfigError(f"code.subcodes: row {r + 1} outside 1..{exp.rows}")

    rng = np.random.default_rng(seed) if policy == "random" else None
    codes: List[LinearCode] = []
    nodes: List[ConstraintNode] = []
    edge = 0
    for i, nb in enumerate(base.row_neighbors):
        degree = nb.shape[1]
        code = make_code(row_subcodes[i], length=degree) if i in row_subcodes else spc(degree)
        if code.n != degree:
            raise CodeConstructionError(
                f"row {i + 1}: subcode {code.label} has length {code.n} but the row has degree {degree}"
            )
        codes.append(code)
        for t in range(exp.lifting_size):
            if rng is None:
                assignment = np.arange(degree)
            else:
                assignment = rng.permutation(degree)
            assignment.setflags(write=False)
            nodes.append(ConstraintNode(
                id=len(nodes), exponent_row=i, lifted_index=t, neighbors=nb[t],
                subcode=code, assignment=assignment, first_edge=edge,
            ))
            edge += degree

    code = GldpcCode(exp, nodes, codes, policy)
    logger.debug("Generalised %s: %d nodes, %d edges", exp.name, len(nodes), code.num_edges)
    return code


def overlap(a: ConstraintNode, b: ConstraintNode) -> int:
    """Number of variables shared by two constraint nodes."""
    return int(np.intersect1d(a.neighbors, b.neighbors).size)


def full_parity_check_matrix(code: GldpcCode) -> np.ndarray:
    """Stack every node's subcode checks, routed through its assignment."""
    total = sum(layer.subcode.H.shape[0] * code.ZC for layer in code.layers)
    h = np.zeros((total, code.N), dtype=np.uint8)
    base = 0
    for layer in code.layers:
        sub_h = layer.subcode.H
        m = sub_h.shape[0]
        zc = layer.coord_vars.shape[0]
        rows = base + np.arange(zc)[:, None, None] * m + np.arange(m)[None, :, None]
        h[rows, layer.coord_vars[:, None, :]] = sub_h[None, :, :]
        base += zc * m
    return h
