"""BLER records and their CSV form.

The CSV contract:
    channel_param,schedule,iterations,trials,block_errors,bler,seed
one row per (channel parameter, schedule), sorted by parameter then label.
Numbers are written in positional notation with up to 10 significant
digits, so equal runs give byte-identical files.
"""

import csv
import logging
import math
import os
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from config import WILSON_Z
from core.errors import ConfigError

logger = logging.getLogger(__name__)

CSV_HEADER = ["channel_param", "schedule", "iterations", "trials", "block_errors", "bler", "seed"]


def wilson_interval(errors: int, trials: int, z: float = WILSON_Z) -> Tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        return 0.0, 1.0
    p = errors / trials
    denom = 1.0 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


@dataclass(frozen=True)
class BlerRecord:
    channel_param: float
    schedule: str
    iterations: int
    trials: int
    block_errors: int
    seed: int
    wall_time: float = 0.0

    def __post_init__(self):
        if not 0 <= self.block_errors <= self.trials:
            raise ValueError(f"block_errors {self.block_errors} outside [0, {self.trials}]")

    @property
    def bler(self) -> float:
        return self.block_errors / self.trials if self.trials else 0.0

    @property
    def interval(self) -> Tuple[float, float]:
        return wilson_interval(self.block_errors, self.trials)

    def row(self) -> List[str]:
        return [
            format_number(self.channel_param),
            self.schedule,
            str(self.iterations),
            str(self.trials),
            str(self.block_errors),
            format_number(self.bler),
            str(self.seed),
        ]


def format_number(x: float) -> str:
    """Positional decimal, at most 10 significant digits, no trailing zeros."""
    return np.format_float_positional(float(x), precision=10, unique=True, fractional=False, trim="-")


def sort_records(records: Iterable[BlerRecord]) -> List[BlerRecord]:
    return sorted(records, key=lambda r: (r.channel_param, r.schedule))


def write_csv(records: Iterable[BlerRecord], f) -> None:
    writer = csv.writer(f, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in sort_records(records):
        writer.writerow(rec.row())


def emit_csv(records: Iterable[BlerRecord], path: str) -> None:
    """Write records to path, creating the parent directory."""
    records = list(records)
    parent = os.path.dirname(os.path.abspath(path))
    try:
        os.makedirs(parent, exist_ok=True)
        with open(path, "w", newline="") as f:
            write_csv(records, f)
    except OSError as exc:
        raise ConfigError(f"run.output: cannot write {path}: {exc}") from exc
    logger.info("Wrote %d records to %s", len(records), path)


def read_csv(path: str) -> List[dict]:
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def check_monotonicity(records: Sequence[BlerRecord]) -> List[Tuple[BlerRecord, BlerRecord]]:
    """BEC smoke check: BLER non-decreasing in epsilon per schedule.

    A decrease only counts when the two Wilson intervals are disjoint.
    Violations are logged and returned.
    """
    by_schedule = {}
    for rec in sort_records(records):
        by_schedule.setdefault((rec.schedule, rec.iterations), []).append(rec)

    violations = []
    for recs in by_schedule.values():
        for lo, hi in zip(recs, recs[1:]):
            if hi.bler < lo.bler and hi.interval[1] < lo.interval[0]:
                violations.append((lo, hi))
                logger.warning(
                    "BLER decreased for schedule %s: %.4g at %g > %.4g at %g",
                    lo.schedule, lo.bler, lo.channel_param, hi.bler, hi.channel_param,
                )
    return violations
