"""Hierarchical distance scheduling.

Nodes are inserted one at a time and bubbled left while the node to the
right should be updated first: larger d_min first, and among equal
d_min the smaller f-metric first. Swaps need a strict inequality, so
equal profiles keep their input order.
"""

import logging
from fractions import Fraction
from typing import List, Sequence

from analysis.coefficients import tail_sums
from analysis.predictions import A_FIRST, B_FIRST, INDIFFERENT
from codes.linear_code import binom
from scheduling.profiles import NodeProfile, OverlapTable

logger = logging.getLogger(__name__)


def f_metric(a_min: int, d_min: int, n: int, n_ab: int) -> Fraction:
    """(n - n_ab) * A_min / C(n, d) * (C(n-1, d-1) - C(n-n_ab-1, d-1)), exactly."""
    if not 0 <= n_ab <= n:
        raise ValueError(f"overlap {n_ab} outside [0, {n}]")
    return (n - n_ab) * Fraction(a_min, binom(n, d_min)) * (
        binom(n - 1, d_min - 1) - binom(n - n_ab - 1, d_min - 1)
    )


def _f(p: NodeProfile, n_ab: int) -> Fraction:
    return f_metric(p.a_min, p.d_min, p.n, n_ab)


def hds_schedule(profiles: Sequence[NodeProfile], overlaps: OverlapTable) -> List[int]:
    """Order profile ids by distance properties (insertion with strict swaps)."""
    if not profiles:
        raise ValueError("hds_schedule needs at least one profile")
    beta: List[NodeProfile] = [profiles[0]]
    for p in profiles[1:]:
        beta.append(p)
        j = len(beta) - 1
        while j > 0:
            left, right = beta[j - 1], beta[j]
            if right.d_min > left.d_min:
                swap = True
            elif right.d_min == left.d_min:
                n_ab = overlaps(left.id, right.id)
                swap = _f(left, n_ab) > _f(right, n_ab)
            else:
                swap = False
            if not swap:
                break
            beta[j - 1], beta[j] = right, left
            j -= 1
    order = [p.id for p in beta]
    logger.debug("HDS order: %s", order)
    return order


def pairwise_preference(a: NodeProfile, b: NodeProfile, n_ab: int, channel: str) -> str:
    """Which of two adjacent nodes to update first.

    Distance decides first. With equal d_min and no shared variables the
    updates commute and the answer is indifferent.
    """
    if channel not in ("bec", "awgn"):
        raise ValueError(f"channel must be 'bec' or 'awgn', got {channel!r}")
    if b.d_min > a.d_min:
        return B_FIRST
    if a.d_min > b.d_min:
        return A_FIRST
    if n_ab == 0:
        return INDIFFERENT

    if channel == "bec":
        score_a, score_b = _f(a, n_ab), _f(b, n_ab)
    else:
        if a.code is None or b.code is None:
            raise ValueError("AWGN preference needs the subcodes on both profiles")
        g_a, h_a = tail_sums(a.code, n_ab)
        g_b, h_b = tail_sums(b.code, n_ab)
        score_a, score_b = g_a - h_a, g_b - h_b
    if score_a > score_b:
        return B_FIRST
    if score_b > score_a:
        return A_FIRST
    return INDIFFERENT
