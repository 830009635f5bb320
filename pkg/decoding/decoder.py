"""Flooding and layered message-passing decoder for GLDPC codes.

The decoder works on a batch of B received words at once. State arrays
are indexed [trial, edge] or [trial, variable]:

    AWGN  c2v (B, E) LLRs, posterior (B, N) = channel LLR + sum of c2v
    BEC   c2v (B, E) symbols, value (B, N), known (B, N) = number of
          non-erased contributors (channel symbol and stored c2v)

V2C messages are never stored; a node reads posterior minus its own c2v
(AWGN) or checks whether any other contributor is known (BEC).

A schedule is compiled into groups: runs of consecutive nodes with the
same subcode and pairwise disjoint variables. Updating a group in one
step is the same as updating its nodes one after another.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy import sparse

from channels.bec import ERASED
from config import DEFAULT_GC_RULE, DEFAULT_MAX_ITERATIONS
from core.errors import ConfigError, DecoderAnomaly
from decoding.rules import (
    EXACT,
    MIN,
    app_kernel_awgn,
    app_kernel_bec,
    spc_kernel_awgn,
    spc_kernel_bec,
)
from decoding.schedule import FLOODING, Schedule
from graph.gldpc import GldpcCode

logger = logging.getLogger(__name__)

BEC = "bec"
AWGN = "awgn"


@dataclass(frozen=True, eq=False)
class NodeGroup:
    subcode: object
    is_spc: bool
    node_ids: Tuple[int, ...]
    coord_vars: np.ndarray    # (G, n)
    coord_edges: np.ndarray   # (G, n)


def compile_groups(code: GldpcCode, schedule: Schedule) -> List[NodeGroup]:
    """Split a schedule into groups that can be updated in one step."""
    if schedule.kind == FLOODING:
        return [
            NodeGroup(layer.subcode, layer.subcode.is_spc, tuple(int(i) for i in layer.node_ids),
                      layer.coord_vars, layer.coord_edges)
            for layer in code.layers
        ]

    groups: List[NodeGroup] = []
    current: List = []
    used = set()
    for nid in schedule.sequence:
        node = code.nodes[nid]
        members = node.neighbors.tolist()
        if current and node.subcode is current[0].subcode and used.isdisjoint(members):
            current.append(node)
            used.update(members)
            continue
        if current:
            groups.append(_make_group(current))
        current = [node]
        used = set(members)
    if current:
        groups.append(_make_group(current))
    return groups


def _make_group(nodes) -> NodeGroup:
    return NodeGroup(
        subcode=nodes[0].subcode,
        is_spc=nodes[0].is_spc,
        node_ids=tuple(nd.id for nd in nodes),
        coord_vars=np.stack([nd.coord_vars for nd in nodes]),
        coord_edges=np.stack([nd.coord_edges for nd in nodes]),
    )


# ---------------------------------------------------------------------------
# State and results
# ---------------------------------------------------------------------------

@dataclass
class DecoderState:
    kind: str
    channel: np.ndarray
    c2v: np.ndarray
    posterior: Optional[np.ndarray] = None
    value: Optional[np.ndarray] = None
    known: Optional[np.ndarray] = None
    iteration: int = 0

    def take(self, keep: np.ndarray) -> "DecoderState":
        pick = (lambda a: None if a is None else a[keep])
        return DecoderState(self.kind, self.channel[keep], self.c2v[keep], pick(self.posterior),
                            pick(self.value), pick(self.known), self.iteration)

    def decisions(self) -> np.ndarray:
        """Hard decisions: 0, 1 or ERASED. A zero posterior counts as erased."""
        if self.kind == BEC:
            return self.value.copy()
        p = self.posterior
        return np.where(p > 0, 0, np.where(p < 0, 1, ERASED)).astype(np.uint8)


@dataclass
class DecodeResult:
    decisions: np.ndarray
    success: bool
    iterations_used: int
    unresolved: List[int] = field(default_factory=list)


@dataclass
class BatchResult:
    decisions: np.ndarray       # (B, N)
    success: np.ndarray         # (B,)
    iterations_used: np.ndarray  # (B,)
    unresolved: np.ndarray      # (B, max_iterations) wrong or erased bits after each iteration

    @property
    def block_errors(self) -> int:
        return int((~self.success).sum())

    def result(self, b: int) -> DecodeResult:
        return DecodeResult(self.decisions[b], bool(self.success[b]), int(self.iterations_used[b]),
                            [int(u) for u in self.unresolved[b]])


# ---------------------------------------------------------------------------
# Decoder
# ---------------------------------------------------------------------------

class MessagePassingDecoder:
    """Batched flooding/layered decoder bound to one GldpcCode and channel kind.

    Args:
        code: the lifted code (shared, read-only).
        kind: "bec" or "awgn".
        max_iterations: fixed iteration budget.
        gc_rule: "exact" or "min" APP rule for generalised nodes; AWGN only,
            the BEC rule is always exact.
        early_stop: stop a trial once every constraint is satisfied.
        check_invariants: BEC only; raise DecoderAnomaly on conflicting
            contributors, lost resolution or a wrong resolved bit.
    """

    def __init__(self, code: GldpcCode, kind: str, max_iterations: int = DEFAULT_MAX_ITERATIONS,
                 gc_rule: Optional[str] = None, early_stop: bool = False,
                 check_invariants: bool = False):
        if kind not in (BEC, AWGN):
            raise ConfigError(f"channel.type must be 'bec' or 'awgn', got {kind!r}")
        if max_iterations < 1:
            raise ConfigError(f"decoder.max_iterations must be >= 1, got {max_iterations}")
        gc_rule = gc_rule or DEFAULT_GC_RULE[kind]
        if gc_rule not in (EXACT, MIN):
            raise ConfigError(f"decoder.gc_rule must be 'exact' or 'min', got {gc_rule!r}")

        self.code = code
        self.kind = kind
        self.max_iterations = max_iterations
        self.gc_rule = gc_rule
        self.early_stop = early_stop
        self.check_invariants = check_invariants
        self._groups: Dict[Schedule, List[NodeGroup]] = {}

        # (N, E) incidence: posterior aggregation for flooding
        e = code.num_edges
        self._incidence = sparse.csr_matrix(
            (np.ones(e, dtype=np.int64), (code.edge_vars, np.arange(e))), shape=(code.N, e)
        )
        self._checks = None

    # ------------------------------------------------------------------

    def groups(self, schedule: Schedule) -> List[NodeGroup]:
        cached = self._groups.get(schedule)
        if cached is None:
            schedule.validate(len(self.code.nodes))
            cached = compile_groups(self.code, schedule)
            self._groups[schedule] = cached
            logger.debug("Schedule %s compiled into %d groups", schedule.label, len(cached))
        return cached

    def init_state(self, received: np.ndarray) -> DecoderState:
        received = np.atleast_2d(received)
        if received.shape[1] != self.code.N:
            raise ValueError(f"received length {received.shape[1]} does not match N={self.code.N}")
        batch = received.shape[0]
        e = self.code.num_edges
        if self.kind == AWGN:
            llr = received.astype(np.float64)
            return DecoderState(AWGN, llr, np.zeros((batch, e)), posterior=llr.copy())
        if not np.isin(received, (0, 1, ERASED)).all():
            raise ValueError("BEC input must hold only 0, 1 or ERASED symbols")
        sym = received.astype(np.uint8)
        return DecoderState(
            BEC, sym, np.full((batch, e), ERASED, dtype=np.uint8),
            value=sym.copy(), known=(sym != ERASED).astype(np.int32),
        )

    def decode_batch(self, received: np.ndarray, schedule: Schedule,
                     transmitted: Optional[np.ndarray] = None) -> BatchResult:
        """Decode a (B, N) batch of received words under one schedule."""
        groups = self.groups(schedule)
        state = self.init_state(received)
        batch = state.channel.shape[0]
        n = self.code.N
        if transmitted is None:
            transmitted = np.zeros((batch, n), dtype=np.uint8)
        transmitted = np.broadcast_to(np.asarray(transmitted, dtype=np.uint8), (batch, n))

        decisions = np.empty((batch, n), dtype=np.uint8)
        iterations = np.full(batch, self.max_iterations, dtype=np.int64)
        unresolved = np.zeros((batch, self.max_iterations), dtype=np.int64)
        active = np.arange(batch)
        sent = transmitted

        for it in range(self.max_iterations):
            if schedule.kind == FLOODING:
                self._flooding_iteration(state, groups)
            else:
                for group in groups:
                    self._layered_update(state, group)
            state.iteration = it + 1

            current = state.decisions()
            if self.check_invariants and self.kind == BEC:
                wrong = (current != ERASED) & (current != sent)
                if wrong.any():
                    raise DecoderAnomaly(f"BEC decoder resolved {int(wrong.sum())} bits incorrectly")
            unresolved[active, it] = (current != sent).sum(axis=1)

            if self.early_stop and it + 1 < self.max_iterations:
                done = self._satisfied(state, current)
                if done.any():
                    finished = active[done]
                    decisions[finished] = current[done]
                    iterations[finished] = it + 1
                    unresolved[finished, it + 1:] = unresolved[finished, it][:, None]
                    keep = ~done
                    active, sent, state = active[keep], sent[keep], state.take(keep)
                    if active.size == 0:
                        break

        if active.size:
            decisions[active] = state.decisions()
        success = (decisions == transmitted).all(axis=1)
        return BatchResult(decisions, success, iterations, unresolved)

    # ------------------------------------------------------------------
    # Node updates
    # ------------------------------------------------------------------

    def _kernel(self, group: NodeGroup, v2c: np.ndarray) -> np.ndarray:
        flat = v2c.reshape(-1, v2c.shape[-1])
        if self.kind == AWGN:
            out = spc_kernel_awgn(flat) if group.is_spc else app_kernel_awgn(flat, group.subcode, self.gc_rule)
        else:
            out = spc_kernel_bec(flat) if group.is_spc else app_kernel_bec(flat, group.subcode)
        return out.reshape(v2c.shape)

    def _layered_update(self, state: DecoderState, group: NodeGroup) -> None:
        vars_, edges = group.coord_vars, group.coord_edges
        old = state.c2v[:, edges]
        if self.kind == AWGN:
            v2c = state.posterior[:, vars_] - old
            new = self._kernel(group, v2c)
            state.c2v[:, edges] = new
            state.posterior[:, vars_] = v2c + new
            return

        old_known = old != ERASED
        count = state.known[:, vars_]
        value = state.value[:, vars_]
        v2c = np.where(count - old_known > 0, value, ERASED).astype(np.uint8)
        new = self._kernel(group, v2c)
        new_known = new != ERASED
        if self.check_invariants:
            self._check_update(old_known, new_known, value, new)
        state.c2v[:, edges] = new
        count = count + new_known.astype(np.int32) - old_known.astype(np.int32)
        state.known[:, vars_] = count
        state.value[:, vars_] = np.where(count == 0, ERASED, np.where(value == ERASED, new, value))

    def _flooding_iteration(self, state: DecoderState, groups: List[NodeGroup]) -> None:
        if self.kind == AWGN:
            snapshot = state.posterior.copy()
            for group in groups:
                v2c = snapshot[:, group.coord_vars] - state.c2v[:, group.coord_edges]
                state.c2v[:, group.coord_edges] = self._kernel(group, v2c)
            state.posterior = state.channel + self._scatter(state.c2v)
            return

        known, value = state.known.copy(), state.value.copy()
        for group in groups:
            old = state.c2v[:, group.coord_edges]
            count = known[:, group.coord_vars]
            v2c = np.where(count - (old != ERASED) > 0, value[:, group.coord_vars], ERASED).astype(np.uint8)
            new = self._kernel(group, v2c)
            if self.check_invariants:
                self._check_update(old != ERASED, new != ERASED, value[:, group.coord_vars], new)
            state.c2v[:, group.coord_edges] = new

        ones = (state.channel == 1) + self._scatter(state.c2v == 1)
        zeros = (state.channel == 0) + self._scatter(state.c2v == 0)
        if self.check_invariants and ((ones > 0) & (zeros > 0)).any():
            raise DecoderAnomaly("BEC decoder: conflicting non-erased contributors")
        state.known = (ones + zeros).astype(np.int32)
        state.value = np.where(ones > 0, 1, np.where(zeros > 0, 0, ERASED)).astype(np.uint8)

    def _scatter(self, edge_values: np.ndarray) -> np.ndarray:
        """Sum per-edge values onto variables, batch-wise."""
        return np.asarray(self._incidence @ edge_values.T.astype(np.float64)).T

    @staticmethod
    def _check_update(old_known, new_known, value, new) -> None:
        if (old_known & ~new_known).any():
            raise DecoderAnomaly("BEC decoder: a resolved C2V message became erased")
        if (new_known & (value != ERASED) & (value != new)).any():
            raise DecoderAnomaly("BEC decoder: conflicting non-erased contributors")

    def _satisfied(self, state: DecoderState, current: np.ndarray) -> np.ndarray:
        """Per trial: every constraint satisfied by the hard decisions."""
        complete = (current != ERASED).all(axis=1)
        if self.kind == BEC:
            return complete
        if self._checks is None:
            self._checks = sparse.csr_matrix(self.code.parity_check_matrix.astype(np.int64))
        syndrome = np.asarray(self._checks @ np.where(complete[:, None], current, 0).T.astype(np.int64)) % 2
        return complete & ~syndrome.any(axis=0)


# ---------------------------------------------------------------------------
# Single-word helpers
# ---------------------------------------------------------------------------

def decode(code: GldpcCode, received, schedule: Schedule, max_iterations: int = DEFAULT_MAX_ITERATIONS,
           gc_rule: Optional[str] = None, kind: Optional[str] = None, transmitted=None,
           early_stop: bool = False, check_invariants: bool = False) -> DecodeResult:
    """Decode one received word.

    kind defaults to "bec" for integer input and "awgn" for real input.
    Integer input with values other than 0, 1 and ERASED needs kind="awgn".
    """
    received = np.asarray(received)
    if received.ndim != 1 or received.size != code.N:
        raise ValueError(f"received length {received.size} does not match N={code.N}")
    if kind is None:
        kind = BEC if np.issubdtype(received.dtype, np.integer) else AWGN
    decoder = MessagePassingDecoder(code, kind, max_iterations, gc_rule, early_stop, check_invariants)
    tx = None if transmitted is None else np.asarray(transmitted)[None, :]
    return decoder.decode_batch(received[None, :], schedule, tx).result(0)


def edge_index(code: GldpcCode, node_id: int, v: int) -> int:
    node = code.nodes[node_id]
    pos = np.flatnonzero(node.neighbors == v)
    if pos.size == 0:
        raise ValueError(f"variable {v} is not a neighbour of node {node_id}")
    return node.first_edge + int(pos[0])


def v2c(code: GldpcCode, state: DecoderState, v: int, node_id: int, trial: int = 0):
    """Current V2C message from variable v to node node_id for one trial."""
    edge = edge_index(code, node_id, v)
    if state.kind == AWGN:
        return float(state.posterior[trial, v] - state.c2v[trial, edge])

    others = np.flatnonzero(code.edge_vars == v)
    others = others[others != edge]
    contributors = np.concatenate([[state.channel[trial, v]], state.c2v[trial, others]])
    known = np.unique(contributors[contributors != ERASED])
    if known.size > 1:
        raise DecoderAnomaly(f"variable {v}: conflicting non-erased contributors")
    return int(known[0]) if known.size else int(ERASED)
