"""Code-family, channel and schedule registries.

Register subcode families, channel models and named scheduling
strategies by name. Experiment configs refer to them by string and the
builders instantiate the right objects by looking them up here.

Usage:
    @register_code("hamming_7_4")
    def hamming_7_4():
        ...

    @register_channel("bec")
    class BinaryErasureChannel(ChannelModel):
        ...

    @register_schedule("low_degree")
    def low_degree(profiles, overlaps, rng):
        ...
"""

import logging

logger = logging.getLogger(__name__)

CODE_REGISTRY = {}
CHANNEL_REGISTRY = {}
SCHEDULE_REGISTRY = {}


def register_code(name):
    """Decorator to register a subcode family constructor by name."""
    def decorator(fn):
        CODE_REGISTRY[name] = fn
        logger.debug("Registered code family: %s -> %s", name, fn.__name__)
        return fn
    return decorator


def register_channel(name):
    """Decorator to register a channel model class by type name."""
    def decorator(cls):
        CHANNEL_REGISTRY[name] = cls
        logger.debug("Registered channel type: %s -> %s", name, cls.__name__)
        return cls
    return decorator


def register_schedule(name):
    """Decorator to register a named scheduling strategy."""
    def decorator(fn):
        SCHEDULE_REGISTRY[name] = fn
        logger.debug("Registered schedule: %s -> %s", name, fn.__name__)
        return fn
    return decorator
