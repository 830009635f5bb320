"""Exception hierarchy shared by every package.

Library code raises these; only main.py maps them to exit codes.
"""


class GldpcError(Exception):
    """Base class for all errors raised by this project."""


class ConfigError(GldpcError):
    """Invalid experiment configuration. The message names the field."""


class CapacityError(GldpcError):
    """An enumeration would exceed its configured cap."""


class CodeConstructionError(GldpcError):
    """Malformed parity-check or exponent matrix, or a degree mismatch."""


class DecoderAnomaly(GldpcError):
    """A decoder invariant was violated (impossible on a valid transmission)."""


class VerificationFailure(GldpcError):
    """An oracle cross-check suite found a mismatch."""
