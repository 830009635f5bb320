"""Scheduling sequences: distance profiles, hierarchical distance scheduling, baselines.

Importing this package registers every named strategy with SCHEDULE_REGISTRY.
"""

from scheduling.baselines import NODE, PER_TRIAL_RANDOM, ROW, baseline_schedule, profiles_for
from scheduling.hds import f_metric, hds_schedule, pairwise_preference
from scheduling.profiles import (
    NodeProfile,
    OverlapTable,
    node_overlap_table,
    node_profiles,
    profile_code,
    row_overlap_table,
    row_profiles,
)

__all__ = [
    "NodeProfile",
    "OverlapTable",
    "profile_code",
    "row_profiles",
    "node_profiles",
    "row_overlap_table",
    "node_overlap_table",
    "f_metric",
    "hds_schedule",
    "pairwise_preference",
    "baseline_schedule",
    "profiles_for",
    "ROW",
    "NODE",
    "PER_TRIAL_RANDOM",
]
