"""First-iteration error analysis of adjacent constraint-node updates."""

from analysis.coefficients import ENSEMBLE, EXACT, count_Ai_Bi, g_coeff, h_coeff, tail_sums
from analysis.predictions import (
    A_FIRST,
    B_FIRST,
    INDIFFERENT,
    PredictionReport,
    awgn_error_monte_carlo,
    awgn_leading_error,
    erasure_polynomial,
    exact_first_iter_erasure,
    lemma1_awgn_leading,
    psum_compare,
    q_function,
)

__all__ = [
    "EXACT",
    "ENSEMBLE",
    "count_Ai_Bi",
    "g_coeff",
    "h_coeff",
    "tail_sums",
    "A_FIRST",
    "B_FIRST",
    "INDIFFERENT",
    "PredictionReport",
    "awgn_error_monte_carlo",
    "awgn_leading_error",
    "erasure_polynomial",
    "exact_first_iter_erasure",
    "lemma1_awgn_leading",
    "psum_compare",
    "q_function",
]
