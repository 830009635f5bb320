"""GF(2) linear algebra on dense numpy bit matrices.

A bit matrix is a 2-D numpy uint8 array with entries in {0, 1}. Row
reduction XORs whole rows at once, which is fast enough for the full
GLDPC parity-check matrices in scope (a few thousand rows, N < 4000).

Small vectors (n <= 63) are also handled as integer bitmasks where
coordinate j maps to bit j; weights then come from a byte popcount table.
"""

import logging
from typing import Iterable, List, Tuple

import numpy as np

logger = logging.getLogger(__name__)

_POPCOUNT8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)


def as_bit_matrix(m, allow_empty: bool = False) -> np.ndarray:
    """Validate and convert anything array-like into a uint8 bit matrix."""
    a = np.asarray(m)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise ValueError(f"bit matrix must be 2-D, got shape {a.shape}")
    if not allow_empty and (a.shape[0] < 1 or a.shape[1] < 1):
        raise ValueError(f"bit matrix needs at least one row and column, got {a.shape}")
    if a.size and not np.isin(a, (0, 1)).all():
        raise ValueError("bit matrix entries must be 0 or 1")
    return a.astype(np.uint8, copy=True)


def gf2_row_reduce(m) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over GF(2).

    Rows are packed into 64-bit words so one XOR updates 64 columns;
    column bits are read through a byte view of the same buffer.

    Returns:
        (rref, pivot_columns). Rows past len(pivot_columns) are zero.
    """
    a = as_bit_matrix(m, allow_empty=True)
    rows, cols = a.shape
    width = max(8, -(-cols // 64) * 8)
    packed = np.zeros((rows, width), dtype=np.uint8)
    if cols:
        packed[:, :(cols + 7) // 8] = np.packbits(a, axis=1, bitorder="little")
    words = packed.view(np.uint64)

    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        byte, shift = c >> 3, c & 7
        hits = np.flatnonzero((packed[r:, byte] >> shift) & 1)
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            words[[r, p]] = words[[p, r]]
        mask = ((packed[:, byte] >> shift) & 1).astype(bool)
        mask[r] = False
        words[mask] ^= words[r]
        pivots.append(c)
        r += 1

    rref = np.unpackbits(packed, axis=1, count=cols, bitorder="little")
    return rref, pivots


def gf2_rank(m) -> int:
    """GF(2) row rank."""
    _, pivots = gf2_row_reduce(m)
    return len(pivots)


def gf2_nullspace(m) -> np.ndarray:
    """Basis of {x : m x = 0}, one basis vector per row (shape k x n)."""
    rref, pivots = gf2_row_reduce(m)
    n = rref.shape[1]
    is_pivot = np.zeros(n, dtype=bool)
    is_pivot[pivots] = True
    free = np.flatnonzero(~is_pivot)
    basis = np.zeros((free.size, n), dtype=np.uint8)
    basis[np.arange(free.size), free] = 1
    if pivots:
        basis[:, pivots] = rref[:len(pivots)][:, free].T
    return basis


def in_span(columns: Iterable, target) -> bool:
    """True iff target is a GF(2) combination of the given vectors.

    The empty set spans only the zero vector.
    """
    t = np.asarray(target, dtype=np.uint8).ravel()
    cols = [np.asarray(c, dtype=np.uint8).ravel() for c in columns]
    for c in cols:
        if c.shape != t.shape:
            raise ValueError(f"vector length {c.size} does not match target length {t.size}")
    if not cols:
        return not t.any()
    a = np.stack(cols, axis=1)
    return gf2_rank(a) == gf2_rank(np.column_stack([a, t]))


# ---------------------------------------------------------------------------
# Bitmask helpers
# ---------------------------------------------------------------------------

def bits_to_masks(bits) -> np.ndarray:
    """Pack the last axis of a 0/1 array into uint64 masks (coordinate j -> bit j)."""
    b = np.asarray(bits, dtype=np.uint64)
    n = b.shape[-1]
    if n > 63:
        raise ValueError(f"bitmask packing supports n <= 63, got {n}")
    return (b << np.arange(n, dtype=np.uint64)).sum(axis=-1, dtype=np.uint64)


def masks_to_bits(masks, n: int) -> np.ndarray:
    """Inverse of bits_to_masks."""
    m = np.asarray(masks, dtype=np.uint64)
    return ((m[..., None] >> np.arange(n, dtype=np.uint64)) & np.uint64(1)).astype(np.uint8)


def popcount(masks) -> np.ndarray:
    """Number of set bits per uint64 mask."""
    m = np.ascontiguousarray(masks, dtype=np.uint64)
    counts = _POPCOUNT8[m.view(np.uint8)].reshape(m.shape + (8,))
    return counts.sum(axis=-1, dtype=np.int64)
