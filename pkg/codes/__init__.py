"""Binary linear block codes: GF(2) kernels, LinearCode and named families.

Architecture:
    gf2          -- row reduction, rank, nullspace, span test, bitmasks
    linear_code  -- LinearCode with cached codewords and weight spectrum
    families     -- registered subcode fixtures and make_code()
"""

from codes.families import make_code, spc
from codes.gf2 import gf2_nullspace, gf2_rank, gf2_row_reduce, in_span
from codes.linear_code import (
    LinearCode,
    binom,
    enumerate_codewords,
    macwilliams_transform,
    read_parity_check,
    weight_enumerator,
    write_parity_check,
)

__all__ = [
    "LinearCode",
    "binom",
    "make_code",
    "spc",
    "gf2_rank",
    "gf2_row_reduce",
    "gf2_nullspace",
    "in_span",
    "enumerate_codewords",
    "weight_enumerator",
    "macwilliams_transform",
    "read_parity_check",
    "write_parity_check",
]
