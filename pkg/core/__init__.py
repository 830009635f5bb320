"""Shared framework pieces: name registries and the exception hierarchy.

Architecture:
    Registry   -- maps config strings to code families, channels, schedules
    errors     -- GldpcError and its subclasses; main.py maps them to exit codes
"""

from core.errors import (
    CapacityError,
    CodeConstructionError,
    ConfigError,
    DecoderAnomaly,
    GldpcError,
    VerificationFailure,
)
from core.registry import (
    CHANNEL_REGISTRY,
    CODE_REGISTRY,
    SCHEDULE_REGISTRY,
    register_channel,
    register_code,
    register_schedule,
)

__all__ = [
    "GldpcError",
    "ConfigError",
    "CapacityError",
    "CodeConstructionError",
    "DecoderAnomaly",
    "VerificationFailure",
    "CODE_REGISTRY",
    "CHANNEL_REGISTRY",
    "SCHEDULE_REGISTRY",
    "register_code",
    "register_channel",
    "register_schedule",
]
