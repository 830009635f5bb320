"""Binary erasure channel."""

import logging

import numpy as np

from channels.base import ChannelModel
from core.errors import ConfigError
from core.registry import register_channel

logger = logging.getLogger(__name__)

ERASED = np.uint8(2)


@register_channel("bec")
class BinaryErasureChannel(ChannelModel):
    """BEC(epsilon): each bit independently erased with probability epsilon."""

    kind = "bec"

    def __init__(self, epsilon: float):
        if not 0.0 <= epsilon <= 1.0:
            raise ConfigError(f"channel.parameters: erasure probability {epsilon} outside [0, 1]")
        self.epsilon = float(epsilon)

    def __repr__(self):
        return f"BinaryErasureChannel(epsilon={self.epsilon})"

    @classmethod
    def from_parameter(cls, value: float, rate: float = 1.0) -> "BinaryErasureChannel":
        return cls(value)

    @property
    def parameter(self) -> float:
        return self.epsilon

    def transmit(self, codewords: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        out = np.asarray(codewords, dtype=np.uint8).copy()
        out[rng.random(out.shape) < self.epsilon] = ERASED
        return out
