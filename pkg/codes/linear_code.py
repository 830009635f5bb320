"""Binary linear block codes.

LinearCode wraps a parity-check matrix and lazily derives everything the
decoders and the analysis need from it: generator, codeword list, weight
spectrum, d_min and A_min. Codewords are enumerated in message-counter
order (message m selects generator row b when bit b of m is set), so the
list is deterministic for a given H.

Parity-check text format:
    # n=7 k=4
    0 0 0 1 1 1 1
    0 1 1 0 0 1 1
    1 0 1 0 1 0 1
The header line is optional; when present it is checked.
"""

import logging
import math
import os
import re
from fractions import Fraction
from functools import cached_property
from typing import List, Optional, Sequence

import numpy as np

from codes.gf2 import as_bit_matrix, bits_to_masks, gf2_nullspace, gf2_row_reduce, popcount
from config import MAX_ENUM_DIMENSION
from core.errors import CapacityError, CodeConstructionError

logger = logging.getLogger(__name__)

_HEADER_RE = re.compile(r"^#\s*n\s*=\s*(\d+)\s+k\s*=\s*(\d+)\s*$")


class LinearCode:
    """Binary linear [n, k] code defined by its parity-check matrix.

    Rank-deficient H is normalised to its nonzero RREF rows; a full-rank
    H is kept exactly as given so pinned fixtures keep their row order.
    Instances are treated as immutable once built.
    """

    def __init__(self, H, name: str = "explicit", label: Optional[str] = None,
                 allow_zero_columns: bool = False):
        try:
            h = as_bit_matrix(H)
        except ValueError as exc:
            raise CodeConstructionError(f"{name}: {exc}") from exc
        if not allow_zero_columns and not h.any(axis=0).all():
            zero_cols = np.flatnonzero(~h.any(axis=0)).tolist()
            raise CodeConstructionError(f"{name}: parity-check matrix has zero columns {zero_cols}")

        rref, pivots = gf2_row_reduce(h)
        rank = len(pivots)
        if rank == 0:
            raise CodeConstructionError(f"{name}: parity-check matrix has rank 0")
        if rank < h.shape[0]:
            logger.debug("%s: H has %d rows but rank %d, keeping RREF rows", name, h.shape[0], rank)
            h = rref[:rank]

        h.setflags(write=False)
        self.H = h
        self.name = name
        self.label = label or name
        self.n = h.shape[1]
        self.rank = rank
        self.k = self.n - rank

    def __repr__(self):
        return f"LinearCode({self.name!r}, n={self.n}, k={self.k})"

    # ------------------------------------------------------------------
    # Generator and codewords
    # ------------------------------------------------------------------

    @cached_property
    def generator(self) -> np.ndarray:
        """k x n generator matrix (rows span the nullspace of H)."""
        g = gf2_nullspace(self.H)
        g.setflags(write=False)
        return g

    @cached_property
    def codewords(self) -> np.ndarray:
        """All 2^k codewords as a (2^k, n) uint8 array in message-counter order."""
        if self.k > MAX_ENUM_DIMENSION:
            raise CapacityError(
                f"{self.name}: dimension k={self.k} exceeds enumeration cap {MAX_ENUM_DIMENSION}"
            )
        msgs = np.arange(1 << self.k, dtype=np.int64)
        msg_bits = ((msgs[:, None] >> np.arange(self.k)) & 1).astype(np.int64)
        words = (msg_bits @ self.generator.astype(np.int64)) % 2
        words = words.astype(np.uint8)
        words.setflags(write=False)
        return words

    @cached_property
    def codeword_masks(self) -> np.ndarray:
        """Codewords packed as uint64 masks, coordinate j at bit j."""
        return bits_to_masks(self.codewords)

    @cached_property
    def weight_spectrum(self) -> np.ndarray:
        """A_0..A_n."""
        weights = popcount(self.codeword_masks) if self.n <= 63 else self.codewords.sum(axis=1)
        return np.bincount(weights, minlength=self.n + 1).astype(np.int64)

    @property
    def d_min(self) -> Optional[int]:
        nz = np.flatnonzero(self.weight_spectrum[1:])
        return int(nz[0]) + 1 if nz.size else None

    @property
    def a_min(self) -> int:
        return int(self.weight_spectrum[self.d_min]) if self.d_min else 0

    @cached_property
    def min_weight_codewords(self) -> np.ndarray:
        """Codewords of weight d_min, shape (A_min, n)."""
        weights = self.codewords.sum(axis=1)
        return self.codewords[weights == self.d_min]

    @property
    def rate(self) -> float:
        return self.k / self.n

    @property
    def is_spc(self) -> bool:
        """True for a single parity check over all n coordinates."""
        return self.rank == 1 and bool(self.H.all())

    # ------------------------------------------------------------------
    # Encoding and membership
    # ------------------------------------------------------------------

    def encode(self, message) -> np.ndarray:
        """Map k message bits (or a batch, last axis k) to codewords."""
        m = np.asarray(message, dtype=np.int64)
        if m.shape[-1] != self.k:
            raise ValueError(f"message length {m.shape[-1]} does not match k={self.k}")
        return ((m @ self.generator.astype(np.int64)) % 2).astype(np.uint8)

    def syndrome(self, word) -> np.ndarray:
        w = np.asarray(word, dtype=np.int64)
        if w.shape[-1] != self.n:
            raise ValueError(f"word length {w.shape[-1]} does not match n={self.n}")
        return ((w @ self.H.T.astype(np.int64)) % 2).astype(np.uint8)

    def contains(self, word) -> bool:
        return not self.syndrome(word).any()

    def dual(self) -> "LinearCode":
        """The dual code (parity-check matrix = this generator)."""
        if self.k == 0:
            raise CodeConstructionError(f"{self.name}: dual of a zero-dimensional code")
        return LinearCode(self.generator, name=f"dual({self.name})", allow_zero_columns=True)


# ---------------------------------------------------------------------------
# Module-level operations
# ---------------------------------------------------------------------------

def enumerate_codewords(code: LinearCode) -> np.ndarray:
    """All 2^k codewords, deterministic message-counter order."""
    return code.codewords


def weight_enumerator(code: LinearCode):
    """Return (spectrum, d_min, A_min)."""
    return code.weight_spectrum.copy(), code.d_min, code.a_min


def binom(m: int, r: int) -> int:
    """Binomial coefficient, 0 when m < r, m < 0 or r < 0."""
    if m < 0 or r < 0 or m < r:
        return 0
    return math.comb(m, r)


def krawtchouk(j: int, w: int, n: int) -> int:
    return sum((-1) ** s * binom(w, s) * binom(n - w, j - s) for s in range(j + 1))


def macwilliams_transform(spectrum: Sequence[int], k: int) -> List[int]:
    """Dual weight spectrum from a primal spectrum of an [n, k] code."""
    n = len(spectrum) - 1
    out = []
    for j in range(n + 1):
        b = Fraction(sum(int(a) * krawtchouk(j, w, n) for w, a in enumerate(spectrum)), 1 << k)
        if b.denominator != 1 or b < 0:
            raise ValueError(f"spectrum is not the weight distribution of a linear code (B_{j}={b})")
        out.append(int(b))
    return out


# ---------------------------------------------------------------------------
# Parity-check files
# ---------------------------------------------------------------------------

def read_parity_check(path: str, name: Optional[str] = None) -> LinearCode:
    """Load a code from a parity-check text file."""
    header = None
    rows = []
    with open(path, "r") as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                match = _HEADER_RE.match(line)
                if match and not rows and header is None:
                    header = (int(match.group(1)), int(match.group(2)))
                continue
            try:
                rows.append([int(tok) for tok in line.split()])
            except ValueError as exc:
                raise CodeConstructionError(f"{path}: non-integer entry in '{line}'") from exc

    if not rows:
        raise CodeConstructionError(f"{path}: no parity-check rows")
    if len({len(r) for r in rows}) != 1:
        raise CodeConstructionError(f"{path}: rows have different lengths")

    code = LinearCode(rows, name=name or os.path.splitext(os.path.basename(path))[0])
    if header and header != (code.n, code.k):
        raise CodeConstructionError(
            f"{path}: header says n={header[0]} k={header[1]} but H gives n={code.n} k={code.k}"
        )
    return code


def write_parity_check(code: LinearCode, path: str) -> None:
    with open(path, "w") as f:
        f.write(f"# n={code.n} k={code.k}\n")
        for row in code.H:
            f.write(" ".join(str(int(b)) for b in row) + "\n")
