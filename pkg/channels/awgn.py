"""Binary-input AWGN channel with BPSK mapping 0 -> +1, 1 -> -1."""

import logging
import math

import numpy as np

from channels.base import ChannelModel
from core.errors import ConfigError
from core.registry import register_channel

logger = logging.getLogger(__name__)


def ebn0_to_sigma(ebn0_db: float, rate: float) -> float:
    """Noise standard deviation for a given Eb/N0 (dB) and code rate."""
    if not 0.0 < rate <= 1.0:
        raise ValueError(f"code rate must lie in (0, 1], got {rate}")
    return math.sqrt(1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0)))


@register_channel("awgn")
class BiAwgnChannel(ChannelModel):
    """BI-AWGN(sigma). Emits channel LLRs 2y / sigma^2.

    Built from a sweep value, the value is Eb/N0 in dB and sigma follows
    from the code's actual rate.
    """

    kind = "awgn"

    def __init__(self, sigma: float, ebn0_db: float = None):
        if not sigma > 0.0:
            raise ConfigError(f"channel: noise standard deviation must be positive, got {sigma}")
        self.sigma = float(sigma)
        self.ebn0_db = ebn0_db

    def __repr__(self):
        return f"BiAwgnChannel(sigma={self.sigma:.6g}, ebn0_db={self.ebn0_db})"

    @classmethod
    def from_parameter(cls, value: float, rate: float) -> "BiAwgnChannel":
        return cls(ebn0_to_sigma(value, rate), ebn0_db=float(value))

    @property
    def parameter(self) -> float:
        return self.ebn0_db if self.ebn0_db is not None else self.sigma

    def transmit(self, codewords: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        x = 1.0 - 2.0 * np.asarray(codewords, dtype=np.float64)
        y = x + self.sigma * rng.standard_normal(x.shape)
        return 2.0 * y / self.sigma ** 2
