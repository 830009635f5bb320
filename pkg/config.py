"""GLDPC Scheduling Lab - Configuration

Constant tables shared by every package: enumeration caps, decoder
numerics, the named subcode fixtures and the exponent-matrix fixtures.

Parity-check rows are pinned here verbatim so that results never depend
on construction order. Column j of a Hamming-type matrix is the binary
expansion of j+1 with the most significant bit in the top row.

Experiment settings (channel points, schedules, trial counts) live in
the YAML files under experiments/, not here.
"""

import os

ROOT_DIR = os.path.dirname(os.path.abspath(__file__))

# ---------------------------------------------------------------------------
# Enumeration limits
# ---------------------------------------------------------------------------
MAX_ENUM_DIMENSION = 16     # k <= 16 -> at most 65536 codewords per subcode
MAX_PATTERN_LENGTH = 20     # 2^(n-1) erasure patterns in the exact oracle
MAX_TABLE_LENGTH = 20       # BEC erasure lookup tables hold 2^n entries

# ---------------------------------------------------------------------------
# Decoder numerics
# ---------------------------------------------------------------------------
ATANH_DELTA = 1e-12         # tanh-rule product clipped to (-1+d, 1-d)
DEFAULT_MAX_ITERATIONS = 3  # high-throughput regime: three or five iterations
DEFAULT_GC_RULE = {"bec": "exact", "awgn": "min"}
APP_CHUNK_ELEMENTS = 4_000_000  # rows x codewords x n per APP kernel chunk

# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------
DEFAULT_BATCH_SIZE = 256    # trials decoded together by one worker
DEFAULT_SEED = 42
WILSON_Z = 1.959963984540054  # two-sided 95%

# Tags for streams derived from run.seed when no explicit seed is given
ASSIGNMENT_STREAM = 0x41534E47
SCHEDULE_STREAM = 0x53434844

# ---------------------------------------------------------------------------
# Subcode fixtures
# ---------------------------------------------------------------------------
SUBCODES = {
    "hamming_7_4": {
        "label": "(7,4,3) Hamming",
        "description": "All seven nonzero 3-bit columns, lexicographic",
        "H": [
            [0, 0, 0, 1, 1, 1, 1],
            [0, 1, 1, 0, 0, 1, 1],
            [1, 0, 1, 0, 1, 0, 1],
        ],
    },
    "simplex_7_3": {
        "label": "(7,3,4) Simplex",
        "description": "Dual of the (7,4,3) Hamming code",
        # Rows are a generator of hamming_7_4
        "H": [
            [1, 1, 1, 0, 0, 0, 0],
            [1, 0, 0, 1, 1, 0, 0],
            [0, 1, 0, 1, 0, 1, 0],
            [1, 1, 0, 1, 0, 0, 1],
        ],
    },
    "hamming_subcode_7_3": {
        "label": "(7,3,3) Hamming subcode",
        "description": "Hamming codewords with x1 = x2; spectrum 1+3x^3+3x^4+x^7",
        "H": [
            [0, 0, 0, 1, 1, 1, 1],
            [0, 1, 1, 0, 0, 1, 1],
            [1, 0, 1, 0, 1, 0, 1],
            [1, 1, 0, 0, 0, 0, 0],
        ],
    },
    "shortened_hamming_6_3": {
        "label": "(6,3,3) shortened Hamming",
        "description": "(7,4,3) Hamming shortened at the all-one column",
        "H": [
            [0, 0, 0, 1, 1, 1],
            [0, 1, 1, 0, 0, 1],
            [1, 0, 1, 0, 1, 0],
        ],
    },
    "hamming_15_11": {
        "label": "(15,11,3) Hamming",
        "description": "All fifteen nonzero 4-bit columns, lexicographic",
        "H": [
            [0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1],
            [0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1],
            [0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1],
            [1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1],
        ],
    },
    "shortened_hamming_14_10": {
        "label": "(14,10,3) shortened Hamming",
        "description": "(15,11,3) Hamming with the all-one column removed",
        "H": [
            [0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1],
            [0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1],
            [0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1],
            [1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0],
        ],
    },
}

# ---------------------------------------------------------------------------
# Exponent-matrix fixtures
# ---------------------------------------------------------------------------
EXPONENT_DIR = os.path.join(ROOT_DIR, "data", "exponent")

EXPONENT_MATRICES = {
    "g_r4_1": {
        "path": os.path.join(EXPONENT_DIR, "g_r4_1.txt"),
        "lifting_size": 34,
        "description": "4 x 14, every row degree 7 (rate 2/7 with Hamming rows 1-3)",
    },
    "g_r4_2": {
        "path": os.path.join(EXPONENT_DIR, "g_r4_2.txt"),
        "lifting_size": 45,
        "description": "4 x 12, every row degree 6",
    },
    "g_r4_3": {
        "path": os.path.join(EXPONENT_DIR, "g_r4_3.txt"),
        "lifting_size": 45,
        "description": "4 x 30, every row degree 15",
    },
    "g_r4_4": {
        "path": os.path.join(EXPONENT_DIR, "g_r4_4.txt"),
        "lifting_size": 45,
        "description": "g_r4_2 plus two edges; row degrees 6,6,7,7",
    },
}
