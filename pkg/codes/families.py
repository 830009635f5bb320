"""Named subcode families and the make_code descriptor parser.

Descriptors accepted by make_code:
    "spc(7)"                  single parity check of length 7
    "spc"                     SPC whose length is taken from the row degree
    "hamming_7_4", ...        any fixture in config.SUBCODES
    "shortened_hamming_15_11" accepted name for the (15,11,3) Hamming code
    "file:path/to/H.txt"      parity-check text file
    {"H": [[...], ...]}       explicit parity-check rows
    {"spc": 7} / {"file": p}  mapping forms of the above

Config example (experiment YAML):
    code:
      subcodes:
        1: shortened_hamming_6_3
        3: hamming_7_4
"""

import functools
import logging
import re
from typing import Optional

from codes.linear_code import LinearCode, read_parity_check
from config import SUBCODES
from core.errors import CodeConstructionError, ConfigError
from core.registry import CODE_REGISTRY, register_code

logger = logging.getLogger(__name__)

_SPC_RE = re.compile(r"^spc\s*\(\s*(\d+)\s*\)$")


@functools.lru_cache(maxsize=None)
def _fixture(name: str) -> LinearCode:
    entry = SUBCODES[name]
    code = LinearCode(entry["H"], name=name, label=entry["label"])
    logger.debug("Built fixture %s: n=%d k=%d", name, code.n, code.k)
    return code


@register_code("spc")
@functools.lru_cache(maxsize=None)
def spc(n: int) -> LinearCode:
    """Single parity-check code of length n (n >= 2)."""
    if n < 2:
        raise CodeConstructionError(f"spc({n}): length must be at least 2")
    return LinearCode([[1] * n], name=f"spc({n})", label=f"SPC({n})")


@register_code("hamming_7_4")
def hamming_7_4() -> LinearCode:
    return _fixture("hamming_7_4")


@register_code("simplex_7_3")
def simplex_7_3() -> LinearCode:
    return _fixture("simplex_7_3")


@register_code("hamming_subcode_7_3")
def hamming_subcode_7_3() -> LinearCode:
    return _fixture("hamming_subcode_7_3")


@register_code("shortened_hamming_6_3")
def shortened_hamming_6_3() -> LinearCode:
    return _fixture("shortened_hamming_6_3")


@register_code("hamming_15_11")
def hamming_15_11() -> LinearCode:
    return _fixture("hamming_15_11")


@register_code("shortened_hamming_14_10")
def shortened_hamming_14_10() -> LinearCode:
    return _fixture("shortened_hamming_14_10")


@register_code("shortened_hamming_15_11")
def shortened_hamming_15_11() -> LinearCode:
    """Same code as hamming_15_11.

    A binary (15,11,3) code is perfect, so every one is the Hamming code
    up to coordinate order. Configs should use hamming_15_11.
    """
    return hamming_15_11()


def make_code(descriptor, length: Optional[int] = None) -> LinearCode:
    """Resolve a code-family descriptor to a LinearCode.

    Args:
        descriptor: string or mapping, see the module docstring.
        length: row degree, used when the descriptor is a bare "spc".
    """
    if isinstance(descriptor, LinearCode):
        return descriptor

    if isinstance(descriptor, dict):
        if set(descriptor) == {"H"}:
            return LinearCode(descriptor["H"], name="explicit")
        if set(descriptor) == {"spc"}:
            return spc(int(descriptor["spc"]))
        if set(descriptor) == {"file"}:
            return _from_file(descriptor["file"])
        raise ConfigError(f"code descriptor mapping must have exactly one of H/spc/file, got {sorted(descriptor)}")

    if not isinstance(descriptor, str):
        raise ConfigError(f"unsupported code descriptor {descriptor!r}")

    text = descriptor.strip()
    match = _SPC_RE.match(text)
    if match:
        return spc(int(match.group(1)))
    if text == "spc":
        if length is None:
            raise ConfigError("descriptor 'spc' needs a length (row degree)")
        return spc(length)
    if text.startswith("file:"):
        return _from_file(text[len("file:"):])

    builder = CODE_REGISTRY.get(text)
    if builder is None or text == "spc":
        raise ConfigError(
            f"unknown code '{text}'; known: spc(n), {', '.join(sorted(k for k in CODE_REGISTRY if k != 'spc'))}"
        )
    return builder()


def _from_file(path: str) -> LinearCode:
    try:
        return read_parity_check(path)
    except OSError as exc:
        raise ConfigError(f"cannot read parity-check file {path}: {exc}") from exc
