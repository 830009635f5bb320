"""Base channel class.

Every channel model inherits from ChannelModel, registers itself with
@register_channel and is built from an experiment's channel section by
build_channel(). Models are immutable; randomness comes from the
numpy Generator passed to transmit(), one stream per trial.

Received words are numpy arrays with the codeword's shape:
    BEC   uint8 symbols 0, 1 or ERASED
    AWGN  float64 channel LLRs L = ln P(y|0)/P(y|1)
"""

import logging
from abc import ABC, abstractmethod

import numpy as np

from core.errors import ConfigError
from core.registry import CHANNEL_REGISTRY

logger = logging.getLogger(__name__)


class ChannelModel(ABC):
    """Abstract binary-input memoryless channel.

    Subclasses must implement:
        transmit(codewords, rng)  -- observation for each bit
        from_parameter(value, rate)  -- build from a sweep value

    kind is "bec" or "awgn" and selects the decoder message domain.
    """

    kind: str = ""

    @classmethod
    @abstractmethod
    def from_parameter(cls, value: float, rate: float) -> "ChannelModel":
        """Build from one entry of channel.parameters."""
        ...

    @property
    @abstractmethod
    def parameter(self) -> float:
        """The sweep value this channel was built from."""
        ...

    @abstractmethod
    def transmit(self, codewords: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        """Pass 0/1 codewords (any leading batch shape) through the channel."""
        ...


def build_channel(kind: str, value: float, rate: float = 1.0) -> ChannelModel:
    """Look up a registered channel type and build it from a sweep value."""
    cls = CHANNEL_REGISTRY.get(kind)
    if cls is None:
        raise ConfigError(f"channel.type must be one of {sorted(CHANNEL_REGISTRY)}, got {kind!r}")
    return cls.from_parameter(value, rate)
