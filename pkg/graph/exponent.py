"""Exponent matrices of quasi-cyclic codes.

Entry P[i][j] >= 0 expands to a ZC x ZC circulant permutation with shift
P[i][j]; -1 expands to a zero block. Files hold one row per line with
whitespace-separated integers. Lines starting with '#' are ignored.

Config example:
    code:
      exponent_matrix: g_r4_4        # fixture name, file path, or inline rows
      lifting_size: 45               # optional for fixtures
"""

import logging
import os
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from config import EXPONENT_MATRICES
from core.errors import CodeConstructionError, ConfigError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ExponentMatrix:
    entries: np.ndarray
    lifting_size: int
    name: str = "inline"
    min_row_degree: int = 2

    def __post_init__(self):
        e = np.asarray(self.entries)
        if e.ndim != 2 or e.size == 0:
            raise CodeConstructionError(f"{self.name}: exponent matrix must be a nonempty 2-D grid")
        if not np.issubdtype(e.dtype, np.integer):
            raise CodeConstructionError(f"{self.name}: exponent entries must be integers")
        if self.lifting_size < 1:
            raise CodeConstructionError(f"{self.name}: lifting size must be positive, got {self.lifting_size}")
        bad = np.argwhere((e < -1) | (e >= self.lifting_size))
        if bad.size:
            i, j = bad[0]
            raise CodeConstructionError(
                f"{self.name}: entry ({i + 1},{j + 1}) = {e[i, j]} outside [-1, {self.lifting_size - 1}]"
            )
        for i, deg in enumerate((e >= 0).sum(axis=1)):
            if deg < self.min_row_degree:
                raise CodeConstructionError(
                    f"{self.name}: row {i + 1} has {deg} nonnegative entries, need >= {self.min_row_degree}"
                )
        e = e.astype(np.int64)
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def row_degrees(self) -> List[int]:
        return [int(d) for d in (self.entries >= 0).sum(axis=1)]

    @property
    def col_degrees(self) -> List[int]:
        return [int(d) for d in (self.entries >= 0).sum(axis=0)]

    def block_columns(self, i: int) -> np.ndarray:
        """Ascending block columns with a circulant in row i."""
        return np.flatnonzero(self.entries[i] >= 0)


def parse_exponent_text(text: str, name: str = "inline") -> List[List[int]]:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError as exc:
            raise CodeConstructionError(f"{name}: line {lineno} has a non-integer entry") from exc
    if len({len(r) for r in rows}) > 1:
        raise CodeConstructionError(f"{name}: rows have different lengths")
    return rows


def load_exponent_matrix(source, lifting_size: Optional[int] = None) -> ExponentMatrix:
    """Build an ExponentMatrix from a fixture name, a file path or inline rows.

    Fixture names carry a default lifting size; paths and inline rows
    need lifting_size.
    """
    if isinstance(source, str) and source in EXPONENT_MATRICES:
        fixture = EXPONENT_MATRICES[source]
        zc = lifting_size or fixture["lifting_size"]
        with open(fixture["path"], "r") as f:
            rows = parse_exponent_text(f.read(), source)
        return ExponentMatrix(np.array(rows), zc, source)

    if lifting_size is None:
        raise ConfigError("code.lifting_size is required unless exponent_matrix names a fixture")

    if isinstance(source, str):
        try:
            with open(source, "r") as f:
                rows = parse_exponent_text(f.read(), source)
        except OSError as exc:
            raise ConfigError(f"code.exponent_matrix: cannot read {source}: {exc}") from exc
        name = os.path.splitext(os.path.basename(source))[0]
        return ExponentMatrix(np.array(rows), lifting_size, name)

    try:
        grid = np.array(source)
    except ValueError as exc:
        raise CodeConstructionError(f"inline exponent matrix is ragged: {exc}") from exc
    return ExponentMatrix(grid, lifting_size)


def row_overlap(exp: ExponentMatrix, i: int, j: int) -> int:
    """Block columns where rows i and j (0-based) both hold a circulant."""
    return int(((exp.entries[i] >= 0) & (exp.entries[j] >= 0)).sum())
