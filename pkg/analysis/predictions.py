"""First-iteration predictions and the exact oracles that back them.

BEC
    exact_first_iter_erasure  probability that a node's message to
                              coordinate i is erased, by enumerating every
                              erasure pattern of the other n-1 inputs
    erasure_polynomial        the same as pattern counts by size, so that
                              P(eps) = sum_s c_s eps^s (1-eps)^(n-1-s)
AWGN
    lemma1_awgn_leading       A_i * Q(sqrt(d_min u / 2)) for iid N(u, 2u) inputs
    awgn_error_monte_carlo    empirical P(a-posteriori LLR < 0) for the same setting
Both
    psum_compare              summed error probability of two adjacent
                              nodes for both update orders
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np
from scipy.special import erfc, logsumexp

from analysis.coefficients import EXACT, count_Ai_Bi, g_coeff, h_coeff, tail_sums
from codes.gf2 import masks_to_bits
from codes.linear_code import LinearCode
from config import MAX_PATTERN_LENGTH
from core.errors import CapacityError
from decoding.rules import EXACT as APP_EXACT
from decoding.rules import erasure_tables

logger = logging.getLogger(__name__)

A_FIRST = "a_first"
B_FIRST = "b_first"
INDIFFERENT = "indifferent"


def q_function(x):
    """Standard normal tail probability."""
    return 0.5 * erfc(np.asarray(x, dtype=np.float64) / math.sqrt(2.0))


# ---------------------------------------------------------------------------
# AWGN
# ---------------------------------------------------------------------------

def lemma1_awgn_leading(code: LinearCode, i: int, u: float) -> Tuple[int, float]:
    """(A_i, sqrt(d_min u / 2)); the predicted probability is A_i * Q(argument)."""
    if u <= 0:
        raise ValueError(f"LLR mean must be positive, got {u}")
    a_i, _ = count_Ai_Bi(code, i, 0)
    return a_i, math.sqrt(code.d_min * u / 2.0)


def awgn_leading_error(code: LinearCode, i: int, u: float) -> float:
    coeff, arg = lemma1_awgn_leading(code, i, u)
    return float(coeff * q_function(arg))


def awgn_error_monte_carlo(code: LinearCode, i: int, u: float, samples: int,
                       rng: np.random.Generator, mode: str = APP_EXACT,
                       chunk: int = 200_000) -> Tuple[int, int]:
    """Count negative a-posteriori LLRs of coordinate i.

    Inputs are iid N(u, 2u) on all n coordinates, the all-zero codeword
    being sent. The a-posteriori value is the extrinsic APP message plus
    the coordinate's own input; its error probability is the one led by
    A_i * Q(sqrt(d_min u / 2)).

    Returns:
        (negative count, samples)
    """
    words = code.codewords
    cw = words.astype(np.float64)
    zero = words[:, i] == 0
    negative = 0
    remaining = samples
    while remaining > 0:
        size = min(chunk, remaining)
        llr = rng.normal(u, math.sqrt(2.0 * u), size=(size, code.n))
        metric = -(llr @ cw.T)
        if mode == APP_EXACT:
            post = logsumexp(metric[:, zero], axis=1) - logsumexp(metric[:, ~zero], axis=1)
        else:
            post = metric[:, zero].max(axis=1) - metric[:, ~zero].max(axis=1)
        negative += int((post < 0).sum())
        remaining -= size
    return negative, samples


# ---------------------------------------------------------------------------
# BEC oracle
# ---------------------------------------------------------------------------

def _erasure_patterns(code: LinearCode, i: int) -> Tuple[np.ndarray, np.ndarray]:
    """All erasure sets over the coordinates other than i, and whether each erases the output."""
    n = code.n
    if n > MAX_PATTERN_LENGTH:
        raise CapacityError(f"{code.name}: pattern enumeration needs n <= {MAX_PATTERN_LENGTH}, got n={n}")
    if not 0 <= i < n:
        raise ValueError(f"coordinate {i} out of range for n={n}")
    p = np.arange(1 << (n - 1), dtype=np.uint32)
    below = np.uint32((1 << i) - 1)
    masks = (p & below) | ((p >> np.uint32(i)) << np.uint32(i + 1))
    closure = erasure_tables(code).closure
    erased = ((closure[masks | np.uint32(1 << i)] >> np.uint32(i)) & 1) == 1
    return masks, erased


def erasure_polynomial(code: LinearCode, i: int) -> List[int]:
    """c_s = number of size-s erasure sets (other coordinates) that erase the message to i."""
    masks, erased = _erasure_patterns(code, i)
    sizes = masks_to_bits(masks[erased], code.n).sum(axis=1)
    return [int(c) for c in np.bincount(sizes, minlength=code.n)]


def exact_first_iter_erasure(code: LinearCode, i: int,
                             epsilon: Union[float, Fraction, Sequence[float]]) -> Union[float, Fraction]:
    """Exact erasure probability of the message to coordinate i.

    Args:
        epsilon: one erasure probability for every input, or a length-n
            sequence (entry i ignored). A Fraction gives an exact result.
    """
    if np.ndim(epsilon) == 0:
        counts = erasure_polynomial(code, i)
        e = epsilon
        m = code.n - 1
        total = sum(c * e ** s * (1 - e) ** (m - s) for s, c in enumerate(counts) if c)
        return total if isinstance(e, Fraction) else float(total)

    eps = np.asarray(epsilon, dtype=np.float64)
    if eps.size != code.n:
        raise ValueError(f"expected {code.n} erasure probabilities, got {eps.size}")
    masks, erased = _erasure_patterns(code, i)
    bits = masks_to_bits(masks[erased], code.n).astype(bool)
    others = np.arange(code.n) != i
    probs = np.where(bits[:, others], eps[others], 1.0 - eps[others]).prod(axis=1)
    return float(probs.sum())


# ---------------------------------------------------------------------------
# Update-order comparison
# ---------------------------------------------------------------------------

@dataclass
class PredictionReport:
    channel: str
    point: float
    n_ab: int
    code_a: str
    code_b: str
    d_a: int
    d_b: int
    g_a: List[Fraction] = field(default_factory=list)
    h_a: List[Fraction] = field(default_factory=list)
    g_b: List[Fraction] = field(default_factory=list)
    h_b: List[Fraction] = field(default_factory=list)
    leading_exponent: int = 0
    psum_ab: float = 0.0
    psum_ba: float = 0.0
    preferred: str = INDIFFERENT

    def as_dict(self) -> Dict[str, object]:
        fmt = (lambda xs: ",".join(str(x) for x in xs))
        return {
            "channel": self.channel,
            "point": self.point,
            "code_a": self.code_a,
            "code_b": self.code_b,
            "n_ab": self.n_ab,
            "d_min_a": self.d_a,
            "d_min_b": self.d_b,
            "g_a": fmt(self.g_a),
            "h_a": fmt(self.h_a),
            "g_b": fmt(self.g_b),
            "h_b": fmt(self.h_b),
            "leading_exponent": self.leading_exponent,
            "psum_ab": f"{self.psum_ab:.10g}",
            "psum_ba": f"{self.psum_ba:.10g}",
            "preferred": self.preferred,
        }


def _order(p_ab, p_ba, rel_tol: float = 0.0) -> str:
    if abs(p_ab - p_ba) <= rel_tol * max(abs(p_ab), abs(p_ba)):
        return INDIFFERENT
    return B_FIRST if p_ab > p_ba else A_FIRST


def psum_compare(code_a: LinearCode, code_b: LinearCode, n_ab: int, channel: str,
                 point: float, form: str = EXACT) -> PredictionReport:
    """Leading-order summed error probability for updating a then b, and b then a.

    Args:
        channel: "bec" (point = epsilon) or "awgn" (point = LLR mean u).
        form: coefficient form, "exact" or "ensemble".
    """
    if not 0 <= n_ab <= min(code_a.n, code_b.n):
        raise ValueError(f"overlap {n_ab} exceeds a code length")
    report = PredictionReport(
        channel=channel, point=point, n_ab=n_ab, code_a=code_a.label, code_b=code_b.label,
        d_a=code_a.d_min, d_b=code_b.d_min,
        g_a=[g_coeff(code_a, i, form) for i in range(code_a.n)],
        h_a=[h_coeff(code_a, i, n_ab, form) for i in range(code_a.n)],
        g_b=[g_coeff(code_b, i, form) for i in range(code_b.n)],
        h_b=[h_coeff(code_b, i, n_ab, form) for i in range(code_b.n)],
        leading_exponent=min(code_a.d_min, code_b.d_min),
    )
    ga, ha = tail_sums(code_a, n_ab, form)
    gb, hb = tail_sums(code_b, n_ab, form)

    if channel == "bec":
        if not 0.0 < point < 1.0:
            raise ValueError(f"erasure probability must lie in (0, 1), got {point}")
        eps = Fraction(str(point))
        p_ab = ga * eps ** code_a.d_min + hb * eps ** code_b.d_min
        p_ba = gb * eps ** code_b.d_min + ha * eps ** code_a.d_min
        report.psum_ab, report.psum_ba = float(p_ab), float(p_ba)
        report.preferred = _order(p_ab, p_ba)
    elif channel == "awgn":
        if point <= 0:
            raise ValueError(f"LLR mean must be positive, got {point}")
        q = float(q_function(math.sqrt(point / 2.0)))
        qa = float(q_function(math.sqrt(code_a.d_min * point / 2.0)))
        qb = float(q_function(math.sqrt(code_b.d_min * point / 2.0)))
        p_ab = q * (qa * float(ga) + qb * float(hb))
        p_ba = q * (qa * float(ha) + qb * float(gb))
        report.psum_ab, report.psum_ba = p_ab, p_ba
        report.preferred = _order(p_ab, p_ba, rel_tol=1e-12)
    else:
        raise ValueError(f"channel must be 'bec' or 'awgn', got {channel!r}")
    return report
