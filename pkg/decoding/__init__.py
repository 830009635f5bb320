"""Message-passing decoding: schedules, node update rules and the decoder."""

from decoding.decoder import (
    BatchResult,
    DecodeResult,
    DecoderState,
    MessagePassingDecoder,
    compile_groups,
    decode,
    v2c,
)
from decoding.rules import (
    app_kernel_awgn,
    app_kernel_bec,
    gc_c2v_awgn,
    gc_c2v_bec,
    gc_c2v_bec_enumerate,
    spc_c2v_awgn,
)
from decoding.schedule import Schedule, format_sequence, parse_sequence

__all__ = [
    "Schedule",
    "parse_sequence",
    "format_sequence",
    "MessagePassingDecoder",
    "DecoderState",
    "DecodeResult",
    "BatchResult",
    "compile_groups",
    "decode",
    "v2c",
    "spc_c2v_awgn",
    "gc_c2v_awgn",
    "gc_c2v_bec",
    "gc_c2v_bec_enumerate",
    "app_kernel_awgn",
    "app_kernel_bec",
]
