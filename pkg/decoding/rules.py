"""Constraint-node update rules.

Scalar forms take the n-1 extrinsic inputs of one node and return the
message towards coordinate i. Kernel forms update many nodes at once:
they take an (R, n) array of V2C messages in subcode-coordinate order and
return the (R, n) extrinsic C2V messages.

AWGN messages are LLRs. BEC messages are uint8 symbols 0, 1 or ERASED.
"""

import functools
import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import logsumexp

from channels.bec import ERASED
from codes.gf2 import as_bit_matrix, bits_to_masks, gf2_row_reduce, in_span, popcount
from codes.linear_code import LinearCode
from config import APP_CHUNK_ELEMENTS, ATANH_DELTA, MAX_TABLE_LENGTH
from core.errors import CapacityError, DecoderAnomaly

logger = logging.getLogger(__name__)

EXACT = "exact"
MIN = "min"


def _with_gap(incoming: Sequence, i: int, n: int, fill) -> np.ndarray:
    values = np.asarray(incoming)
    if values.size != n - 1:
        raise ValueError(f"expected {n - 1} incoming messages, got {values.size}")
    return np.insert(values, i, fill)


# ---------------------------------------------------------------------------
# AWGN
# ---------------------------------------------------------------------------

def spc_c2v_awgn(incoming: Sequence[float]) -> float:
    """Tanh rule over the incoming LLRs."""
    prod = np.prod(np.tanh(np.asarray(incoming, dtype=np.float64) / 2.0))
    prod = np.clip(prod, -1.0 + ATANH_DELTA, 1.0 - ATANH_DELTA)
    return float(2.0 * np.arctanh(prod))


def gc_c2v_awgn(subcode: LinearCode, incoming: Sequence[float], i: int, mode: str = EXACT) -> float:
    """APP message towards coordinate i (0-based) by codeword enumeration.

    incoming holds the LLRs of every coordinate except i, in order.
    """
    llr = _with_gap(incoming, i, subcode.n, 0.0).astype(np.float64)
    words = subcode.codewords
    metric = words.astype(np.float64) @ llr
    zero = words[:, i] == 0
    if mode == EXACT:
        return float(logsumexp(-metric[zero]) - logsumexp(-metric[~zero]))
    if mode == MIN:
        return float(metric[~zero].min() - metric[zero].min())
    raise ValueError(f"unknown APP mode {mode!r}")


def spc_kernel_awgn(v2c: np.ndarray) -> np.ndarray:
    """Leave-one-out tanh rule along the last axis."""
    t = np.tanh(v2c / 2.0)
    ones = np.ones_like(t[..., :1])
    left = np.cumprod(np.concatenate([ones, t[..., :-1]], axis=-1), axis=-1)
    right = np.cumprod(np.concatenate([ones, t[..., :0:-1]], axis=-1), axis=-1)[..., ::-1]
    prod = np.clip(left * right, -1.0 + ATANH_DELTA, 1.0 - ATANH_DELTA)
    return 2.0 * np.arctanh(prod)


def app_kernel_awgn(v2c: np.ndarray, subcode: LinearCode, mode: str = EXACT) -> np.ndarray:
    """APP rule for R nodes of one subcode; v2c is (R, n)."""
    words = subcode.codewords
    cw = words.astype(np.float64)
    ones_sets = [np.flatnonzero(words[:, i] == 1) for i in range(subcode.n)]
    zero_sets = [np.flatnonzero(words[:, i] == 0) for i in range(subcode.n)]
    out = np.empty_like(v2c, dtype=np.float64)
    step = max(1, APP_CHUNK_ELEMENTS // (words.shape[0] * subcode.n))
    for start in range(0, v2c.shape[0], step):
        chunk = v2c[start:start + step]
        metric = chunk @ cw.T
        for i in range(subcode.n):
            if mode == EXACT:
                neg = -metric
                val = logsumexp(neg[:, zero_sets[i]], axis=1) - logsumexp(neg[:, ones_sets[i]], axis=1)
            elif mode == MIN:
                val = metric[:, ones_sets[i]].min(axis=1) - metric[:, zero_sets[i]].min(axis=1)
            else:
                raise ValueError(f"unknown APP mode {mode!r}")
            out[start:start + step, i] = val - chunk[:, i]
    return out


# ---------------------------------------------------------------------------
# BEC
# ---------------------------------------------------------------------------

def gc_c2v_bec(subcode: LinearCode, incoming: Sequence[int], i: int) -> int:
    """APP message towards coordinate i (0-based) on the BEC.

    The output is erased iff column h_i lies in the span of the erased
    columns. Otherwise the bit is fixed by the known inputs and read off
    the reduced system [H_E | h_i | s].

    Raises:
        DecoderAnomaly: known inputs agree with no codeword.
    """
    sym = _with_gap(incoming, i, subcode.n, ERASED).astype(np.uint8)
    h = subcode.H
    erased = np.flatnonzero(sym == ERASED)
    erased = erased[erased != i]
    known = np.flatnonzero(sym != ERASED)
    syndrome = (h[:, known].astype(np.int64) @ sym[known].astype(np.int64)) % 2

    if in_span(h[:, erased].T, h[:, i]):
        if not in_span(np.column_stack([h[:, erased], h[:, i]]).T, syndrome):
            raise DecoderAnomaly(f"{subcode.name}: known inputs consistent with no codeword")
        return int(ERASED)

    system = np.column_stack([h[:, erased], h[:, i], syndrome]).astype(np.uint8)
    rref, pivots = gf2_row_reduce(as_bit_matrix(system, allow_empty=True))
    if erased.size + 1 in pivots:
        raise DecoderAnomaly(f"{subcode.name}: known inputs consistent with no codeword")
    row = pivots.index(erased.size)
    return int(rref[row, -1])


def gc_c2v_bec_enumerate(subcode: LinearCode, incoming: Sequence[int], i: int) -> int:
    """Reference APP rule: the set of codewords consistent with the known inputs."""
    sym = _with_gap(incoming, i, subcode.n, ERASED).astype(np.uint8)
    known = np.flatnonzero(sym != ERASED)
    known = known[known != i]
    words = subcode.codewords
    chi = words[(words[:, known] == sym[known]).all(axis=1)]
    if chi.shape[0] == 0:
        raise DecoderAnomaly(f"{subcode.name}: known inputs consistent with no codeword")
    bits = np.unique(chi[:, i])
    return int(bits[0]) if bits.size == 1 else int(ERASED)


def spc_kernel_bec(v2c: np.ndarray) -> np.ndarray:
    """Single parity check: erased if any other input is erased, else their XOR."""
    known = v2c != ERASED
    bits = np.where(known, v2c, 0).astype(np.uint8)
    parity = np.bitwise_xor.reduce(bits, axis=-1)[..., None]
    others_erased = (~known).sum(axis=-1, keepdims=True) - (~known)
    return np.where(others_erased > 0, ERASED, parity ^ bits).astype(np.uint8)


@dataclass(frozen=True, eq=False)
class ErasureTables:
    """Lookup tables indexed by coordinate bitmasks of one subcode.

    closure[M]  OR of all codeword masks contained in M
    reps[i][M]  some dual codeword contained in M that covers coordinate i, or 0
    """
    n: int
    closure: np.ndarray
    reps: np.ndarray


def _spread_or(table: np.ndarray, n: int) -> None:
    for b in range(n):
        view = table.reshape(-1, 2, 1 << b)
        view[:, 1, :] |= view[:, 0, :]


def _spread_first(table: np.ndarray, n: int) -> None:
    for b in range(n):
        view = table.reshape(-1, 2, 1 << b)
        hi = view[:, 1, :]
        np.copyto(hi, view[:, 0, :], where=(hi == 0))


def _row_space_masks(subcode: LinearCode) -> np.ndarray:
    masks = np.zeros(1, dtype=np.uint32)
    for row in bits_to_masks(subcode.H).astype(np.uint32):
        masks = np.concatenate([masks, masks ^ row])
    return masks


@functools.lru_cache(maxsize=None)
def erasure_tables(subcode: LinearCode) -> ErasureTables:
    n = subcode.n
    if n > MAX_TABLE_LENGTH:
        raise CapacityError(f"{subcode.name}: erasure tables need n <= {MAX_TABLE_LENGTH}, got n={n}")
    size = 1 << n
    closure = np.zeros(size, dtype=np.uint32)
    cw = subcode.codeword_masks.astype(np.uint32)
    closure[cw] = cw
    _spread_or(closure, n)

    dual_masks = _row_space_masks(subcode)
    reps = np.zeros((n, size), dtype=np.uint32)
    for i in range(n):
        hit = dual_masks[((dual_masks >> np.uint32(i)) & 1) == 1]
        reps[i, hit] = hit
        _spread_first(reps[i], n)
    logger.debug("Built erasure tables for %s (%d entries)", subcode.name, size)
    return ErasureTables(n, closure, reps)


def app_kernel_bec(v2c: np.ndarray, subcode: LinearCode) -> np.ndarray:
    """APP rule on the BEC for R nodes of one subcode; v2c is (R, n) symbols."""
    tables = erasure_tables(subcode)
    n = subcode.n
    full = np.uint32((1 << n) - 1)
    erased = bits_to_masks(v2c == ERASED).astype(np.uint32)
    ones = bits_to_masks(v2c == 1).astype(np.uint32)
    out = np.empty(v2c.shape, dtype=np.uint8)
    for i in range(n):
        bit = np.uint32(1 << i)
        others = erased & ~bit
        is_erased = (tables.closure[others | bit] >> np.uint32(i)) & 1
        rep = tables.reps[i][full & ~others]
        value = popcount(rep & ones & ~bit) & 1
        out[:, i] = np.where(is_erased == 1, ERASED, value)
    return out
