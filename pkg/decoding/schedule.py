"""Decoding schedules.

A Schedule is either flooding or layered. A layered schedule carries a
permutation of all constraint-node ids (0-based); the same order is
applied in every iteration. Row-level sequences are written 1-based and
comma-separated on the command line and in CSV files, e.g. "1,3,2,4".
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from core.errors import ConfigError

logger = logging.getLogger(__name__)

FLOODING = "flooding"
LAYERED = "layered"


@dataclass(frozen=True)
class Schedule:
    kind: str
    sequence: Optional[Tuple[int, ...]] = None
    label: str = ""

    @classmethod
    def flooding(cls, label: str = FLOODING) -> "Schedule":
        return cls(FLOODING, None, label)

    @classmethod
    def layered(cls, sequence: Sequence[int], label: str = "") -> "Schedule":
        seq = tuple(int(s) for s in sequence)
        return cls(LAYERED, seq, label or format_sequence(seq))

    def validate(self, num_nodes: int) -> None:
        """Raise ConfigError unless a layered sequence is a permutation of 0..num_nodes-1."""
        if self.kind == FLOODING:
            return
        if self.kind != LAYERED or self.sequence is None:
            raise ConfigError(f"decoder.mode: unknown schedule kind {self.kind!r}")
        if sorted(self.sequence) != list(range(num_nodes)):
            raise ConfigError(
                f"schedule {self.label!r} is not a permutation of the {num_nodes} constraint nodes"
            )


def parse_sequence(text: str) -> List[int]:
    """'1,3,2,4' -> [0, 2, 1, 3]."""
    try:
        items = [int(tok) for tok in str(text).replace(" ", "").split(",") if tok]
    except ValueError as exc:
        raise ConfigError(f"schedule {text!r} is not a comma-separated list of integers") from exc
    if not items or min(items) < 1:
        raise ConfigError(f"schedule {text!r} must list 1-based indices")
    return [i - 1 for i in items]


def format_sequence(sequence: Sequence[int]) -> str:
    """[0, 2, 1, 3] -> '1,3,2,4'."""
    return ",".join(str(int(i) + 1) for i in sequence)
