"""Channel models.

Importing this package registers every channel type with CHANNEL_REGISTRY.

Config example:
    channel:
      type: bec                 # or awgn (parameters are then Eb/N0 in dB)
      parameters: [0.30, 0.32, 0.34]
      codeword: all_zero        # or random
"""

from channels.awgn import BiAwgnChannel, ebn0_to_sigma
from channels.base import ChannelModel, build_channel
from channels.bec import ERASED, BinaryErasureChannel

__all__ = [
    "ChannelModel",
    "BinaryErasureChannel",
    "BiAwgnChannel",
    "ERASED",
    "build_channel",
    "ebn0_to_sigma",
]
