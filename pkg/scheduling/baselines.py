"""Named scheduling strategies.

Every strategy takes (profiles, overlaps, rng) and returns an ordering of
profile ids. Experiment configs select them by name through
SCHEDULE_REGISTRY; "per_trial_random" is redrawn for every decoded word.
"""

import logging
from typing import List, Optional, Sequence

import numpy as np

from core.errors import ConfigError
from core.registry import SCHEDULE_REGISTRY, register_schedule
from graph.gldpc import GldpcCode
from scheduling.hds import hds_schedule
from scheduling.profiles import (
    NodeProfile,
    OverlapTable,
    node_overlap_table,
    node_profiles,
    row_overlap_table,
    row_profiles,
)

logger = logging.getLogger(__name__)

ROW = "row"
NODE = "node"
PER_TRIAL_RANDOM = "per_trial_random"


@register_schedule("natural")
def natural(profiles: Sequence[NodeProfile], overlaps: OverlapTable, rng=None) -> List[int]:
    return sorted(p.id for p in profiles)


@register_schedule("random")
def random_order(profiles: Sequence[NodeProfile], overlaps: OverlapTable, rng=None) -> List[int]:
    rng = rng if rng is not None else np.random.default_rng()
    ids = sorted(p.id for p in profiles)
    return [ids[k] for k in rng.permutation(len(ids))]


@register_schedule(PER_TRIAL_RANDOM)
def per_trial_random(profiles: Sequence[NodeProfile], overlaps: OverlapTable, rng=None) -> List[int]:
    return random_order(profiles, overlaps, rng)


@register_schedule("low_degree")
def low_degree(profiles: Sequence[NodeProfile], overlaps: OverlapTable, rng=None) -> List[int]:
    return [p.id for p in sorted(profiles, key=lambda p: (p.degree, p.id))]


@register_schedule("hds")
def hds(profiles: Sequence[NodeProfile], overlaps: OverlapTable, rng=None) -> List[int]:
    return hds_schedule(profiles, overlaps)


def profiles_for(code: GldpcCode, granularity: str = ROW):
    """(profiles, overlaps) at row or node granularity."""
    if granularity == ROW:
        return row_profiles(code), row_overlap_table(code.exp)
    if granularity == NODE:
        return node_profiles(code), node_overlap_table(code)
    raise ConfigError(f"decoder.granularity must be 'row' or 'node', got {granularity!r}")


def baseline_schedule(kind: str, code: GldpcCode, seed: Optional[int] = None,
                      granularity: str = ROW) -> List[int]:
    """Order of row (or node) ids, 0-based, for a named strategy."""
    fn = SCHEDULE_REGISTRY.get(kind)
    if fn is None:
        raise ConfigError(f"unknown schedule {kind!r}; known: {', '.join(sorted(SCHEDULE_REGISTRY))}")
    profiles, overlaps = profiles_for(code, granularity)
    return fn(profiles, overlaps, np.random.default_rng(seed))
