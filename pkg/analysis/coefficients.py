"""Leading-order coefficients of first-iteration message error probabilities.

Two constraint nodes a and b share n_ab variables. Coordinates are
0-based and the shared variables are taken to be the first n_ab
coordinates of each subcode.

    A_i  min-weight codewords with x_i = 1                 (= exact g)
    B_i  those whose support lies in the tail plus {i}      (= exact h)

"Ensemble" forms replace the per-position counts by their average over
a random coordinate assignment. Everything here is exact rational.
"""

import logging
from fractions import Fraction
from typing import Tuple

import numpy as np

from codes.linear_code import LinearCode, binom

logger = logging.getLogger(__name__)

EXACT = "exact"
ENSEMBLE = "ensemble"


def _check_form(form: str) -> None:
    if form not in (EXACT, ENSEMBLE):
        raise ValueError(f"coefficient form must be 'exact' or 'ensemble', got {form!r}")


def count_Ai_Bi(code: LinearCode, i: int, n_ab: int) -> Tuple[int, int]:
    """Exact (A_i, B_i) by enumerating the minimum-weight codewords."""
    if not 0 <= i < code.n or not 0 <= n_ab <= code.n:
        raise ValueError(f"coordinate {i} / overlap {n_ab} out of range for n={code.n}")
    words = code.min_weight_codewords
    covers = words[:, i] == 1
    allowed = np.zeros(code.n, dtype=bool)
    allowed[n_ab:] = True
    allowed[i] = True
    inside = ~(words[:, ~allowed].any(axis=1))
    return int(covers.sum()), int((covers & inside).sum())


def min_weight_density(code: LinearCode) -> Fraction:
    """A_min / C(n, d_min): chance that a random weight-d_min word is a codeword."""
    return Fraction(code.a_min, binom(code.n, code.d_min))


def g_coeff(code: LinearCode, i: int, form: str = EXACT) -> Fraction:
    _check_form(form)
    if form == EXACT:
        return Fraction(count_Ai_Bi(code, i, 0)[0])
    return min_weight_density(code) * binom(code.n - 1, code.d_min - 1)


def h_coeff(code: LinearCode, j: int, n_ab: int, form: str = EXACT) -> Fraction:
    _check_form(form)
    if form == EXACT:
        return Fraction(count_Ai_Bi(code, j, n_ab)[1])
    d = code.d_min
    if j < n_ab:
        return min_weight_density(code) * binom(code.n - n_ab, d - 1)
    return min_weight_density(code) * binom(code.n - n_ab - 1, d - 1)


def tail_sums(code: LinearCode, n_ab: int, form: str = EXACT) -> Tuple[Fraction, Fraction]:
    """(sum of g, sum of h) over the non-shared coordinates n_ab..n-1."""
    g = sum((g_coeff(code, i, form) for i in range(n_ab, code.n)), Fraction(0))
    h = sum((h_coeff(code, i, n_ab, form) for i in range(n_ab, code.n)), Fraction(0))
    return g, h
