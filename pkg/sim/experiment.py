"""Experiment configuration.

Experiments are YAML files with the sections code, channel, decoder, run
and an optional analysis section. Unknown sections or keys are rejected.

Config example:
    code:
      exponent_matrix: g_r4_1       # fixture name, path, or inline rows
      lifting_size: 34
      subcodes: {1: hamming_7_4, 2: hamming_7_4, 3: hamming_7_4}
      assignment: sequential
    channel:
      type: bec
      parameters: [0.30, 0.32]
    decoder:
      mode: layered
      schedules: ["1,2,3,4", "1,4,2,3", "4,1,2,3", per_trial_random]
      max_iterations: 3
    run:
      trials: 10000
      seed: 42
      output: results/hamming_bec.csv
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
import yaml

import channels  # noqa: F401  registers channel types
import scheduling  # noqa: F401  registers named schedules
from config import (
    ASSIGNMENT_STREAM,
    DEFAULT_BATCH_SIZE,
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_SEED,
    SCHEDULE_STREAM,
)
from core.errors import ConfigError
from core.registry import CHANNEL_REGISTRY, SCHEDULE_REGISTRY
from decoding.schedule import FLOODING, Schedule, format_sequence, parse_sequence
from graph.exponent import load_exponent_matrix
from graph.gldpc import GldpcCode, generalize, lift
from scheduling.baselines import NODE, PER_TRIAL_RANDOM, ROW, profiles_for

logger = logging.getLogger(__name__)

SECTION_KEYS = {
    "code": {"exponent_matrix", "lifting_size", "subcodes", "assignment", "assignment_seed"},
    "channel": {"type", "parameters", "codeword"},
    "decoder": {"mode", "schedules", "granularity", "max_iterations", "gc_rule",
                "early_stop", "schedule_seed"},
    "run": {"trials", "min_block_errors", "seed", "output", "batch_size", "common_noise"},
    "analysis": {"epsilon", "llr_mean"},
}


@dataclass
class CodeSection:
    exponent_matrix: Any = None
    lifting_size: Optional[int] = None
    subcodes: Dict[int, Any] = field(default_factory=dict)   # 0-based row -> descriptor
    assignment: str = "sequential"
    assignment_seed: Optional[int] = None


@dataclass
class ChannelSection:
    type: str = "bec"
    parameters: List[float] = field(default_factory=list)
    codeword: str = "all_zero"


@dataclass
class DecoderSection:
    mode: str = "layered"
    schedules: List[str] = field(default_factory=list)
    granularity: str = ROW
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    gc_rule: Optional[str] = None
    early_stop: bool = False
    schedule_seed: Optional[int] = None


@dataclass
class RunSection:
    trials: int = 1000
    min_block_errors: Optional[int] = None
    seed: int = DEFAULT_SEED
    output: Optional[str] = None
    batch_size: int = DEFAULT_BATCH_SIZE
    common_noise: bool = False


@dataclass
class AnalysisSection:
    epsilon: float = 1e-4
    llr_mean: float = 16.0


@dataclass
class ExperimentConfig:
    code: CodeSection
    channel: ChannelSection = field(default_factory=ChannelSection)
    decoder: DecoderSection = field(default_factory=DecoderSection)
    run: RunSection = field(default_factory=RunSection)
    analysis: AnalysisSection = field(default_factory=AnalysisSection)
    source: str = "<inline>"


@dataclass(frozen=True)
class ScheduleSpec:
    """One entry of decoder.schedules, resolved against a code."""
    label: str
    schedule: Optional[Schedule]     # None for per-trial random
    order: Optional[tuple] = None    # row or node order behind the schedule, 0-based
    per_trial: bool = False


# ---------------------------------------------------------------------------
# Loading and validation
# ---------------------------------------------------------------------------

def load_config(path: str) -> ExperimentConfig:
    """Read and validate an experiment YAML file."""
    try:
        with open(path, "r") as f:
            raw = yaml.safe_load(f)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: invalid YAML: {exc}") from exc
    cfg = parse_config(raw or {}, source=path)
    logger.info("Loaded experiment config %s", path)
    return cfg


def _int(value, name: str, minimum: Optional[int] = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{name} must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {value}")
    return value


def _bool(value, name: str) -> bool:
    if not isinstance(value, bool):
        raise ConfigError(f"{name} must be true or false, got {value!r}")
    return value


def _choice(value, name: str, options) -> str:
    if value not in options:
        raise ConfigError(f"{name} must be one of {sorted(options)}, got {value!r}")
    return value


def parse_config(raw: Dict[str, Any], source: str = "<inline>") -> ExperimentConfig:
    if not isinstance(raw, dict):
        raise ConfigError(f"{source}: top level must be a mapping of sections")
    for section, body in raw.items():
        if section not in SECTION_KEYS:
            raise ConfigError(f"unknown section '{section}' (expected {sorted(SECTION_KEYS)})")
        if body is None:
            continue
        if not isinstance(body, dict):
            raise ConfigError(f"section '{section}' must be a mapping")
        for key in body:
            if key not in SECTION_KEYS[section]:
                raise ConfigError(f"unknown key '{section}.{key}'")
    if "code" not in raw or not raw["code"]:
        raise ConfigError("missing section 'code'")

    c = raw["code"]
    if "exponent_matrix" not in c:
        raise ConfigError("code.exponent_matrix is required")
    subcodes = {}
    for row, desc in (c.get("subcodes") or {}).items():
        subcodes[_int(row, "code.subcodes row", 1) - 1] = desc
    code = CodeSection(
        exponent_matrix=c["exponent_matrix"],
        lifting_size=_int(c["lifting_size"], "code.lifting_size", 1) if c.get("lifting_size") is not None else None,
        subcodes=subcodes,
        assignment=_choice(c.get("assignment", "sequential"), "code.assignment", {"sequential", "random"}),
        assignment_seed=_int(c["assignment_seed"], "code.assignment_seed", 0) if c.get("assignment_seed") is not None else None,
    )

    ch = raw.get("channel") or {}
    params = ch.get("parameters", [])
    if not isinstance(params, list) or not all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in params):
        raise ConfigError("channel.parameters must be a list of numbers")
    channel = ChannelSection(
        type=_choice(ch.get("type", "bec"), "channel.type", set(CHANNEL_REGISTRY)),
        parameters=[float(p) for p in params],
        codeword=_choice(ch.get("codeword", "all_zero"), "channel.codeword", {"all_zero", "random"}),
    )
    if "channel" in raw and not channel.parameters:
        raise ConfigError("channel.parameters must not be empty")

    d = raw.get("decoder") or {}
    schedules = d.get("schedules", [])
    if not isinstance(schedules, list):
        raise ConfigError("decoder.schedules must be a list")
    decoder = DecoderSection(
        mode=_choice(d.get("mode", "layered"), "decoder.mode", {"layered", FLOODING}),
        schedules=[format_sequence([x - 1 for x in s]) if isinstance(s, list) else str(s) for s in schedules],
        granularity=_choice(d.get("granularity", ROW), "decoder.granularity", {ROW, NODE}),
        max_iterations=_int(d.get("max_iterations", DEFAULT_MAX_ITERATIONS), "decoder.max_iterations", 1),
        gc_rule=_choice(d["gc_rule"], "decoder.gc_rule", {"exact", "min"}) if d.get("gc_rule") is not None else None,
        early_stop=_bool(d.get("early_stop", False), "decoder.early_stop"),
        schedule_seed=_int(d["schedule_seed"], "decoder.schedule_seed", 0) if d.get("schedule_seed") is not None else None,
    )

    r = raw.get("run") or {}
    run = RunSection(
        trials=_int(r.get("trials", 1000), "run.trials", 1),
        min_block_errors=_int(r["min_block_errors"], "run.min_block_errors", 1) if r.get("min_block_errors") is not None else None,
        seed=_int(r.get("seed", DEFAULT_SEED), "run.seed", 0),
        output=r.get("output"),
        batch_size=_int(r.get("batch_size", DEFAULT_BATCH_SIZE), "run.batch_size", 1),
        common_noise=_bool(r.get("common_noise", False), "run.common_noise"),
    )

    a = raw.get("analysis") or {}
    analysis = AnalysisSection(
        epsilon=float(a.get("epsilon", 1e-4)),
        llr_mean=float(a.get("llr_mean", 16.0)),
    )
    if not 0.0 < analysis.epsilon < 1.0:
        raise ConfigError(f"analysis.epsilon must lie in (0, 1), got {analysis.epsilon}")
    if analysis.llr_mean <= 0:
        raise ConfigError(f"analysis.llr_mean must be positive, got {analysis.llr_mean}")

    return ExperimentConfig(code, channel, decoder, run, analysis, source)


def require_simulation(cfg: ExperimentConfig) -> None:
    """Fields that only simulate needs."""
    if not cfg.channel.parameters:
        raise ConfigError("channel.parameters must not be empty")


# ---------------------------------------------------------------------------
# Building
# ---------------------------------------------------------------------------

def derived_seed(seed: int, stream: int) -> int:
    """A 64-bit seed for one named stream of run.seed."""
    return int(np.random.SeedSequence([seed, stream]).generate_state(1, np.uint64)[0])


def assignment_seed(cfg: ExperimentConfig) -> int:
    seed = cfg.code.assignment_seed
    return seed if seed is not None else derived_seed(cfg.run.seed, ASSIGNMENT_STREAM)


def schedule_seed(cfg: ExperimentConfig) -> int:
    seed = cfg.decoder.schedule_seed
    return seed if seed is not None else derived_seed(cfg.run.seed, SCHEDULE_STREAM)


def build_code(cfg: ExperimentConfig) -> GldpcCode:
    """Exponent matrix -> lifted graph -> GldpcCode.

    A random coordinate assignment without code.assignment_seed is drawn
    from a stream of run.seed, so the code is fixed by the config.
    """
    section = cfg.code
    exp = load_exponent_matrix(section.exponent_matrix, section.lifting_size)
    return generalize(lift(exp), section.subcodes, section.assignment, assignment_seed(cfg))


def log_code_summary(code: GldpcCode) -> None:
    s = code.summary()
    logger.info("Code %s ZC=%d: N=%d K=%d rank=%d rate=%.4f", s["exponent_matrix"], s["lifting_size"],
                s["N"], s["K"], s["rank"], s["rate"])
    if s["rank_deficiency"]:
        logger.warning("Parity-check matrix has %d check equations but rank %d (deficiency %d)",
                       s["check_equations"], s["rank"], s["rank_deficiency"])


def resolve_schedules(cfg: ExperimentConfig, code: GldpcCode) -> List[ScheduleSpec]:
    """Turn decoder.schedules into node-level schedules.

    Entries are explicit 1-based sequences ("1,3,2,4") or names from
    SCHEDULE_REGISTRY, plus "flooding". At row granularity sequences
    list exponent rows and expand to their lifted checks.
    """
    dec = cfg.decoder
    entries = dec.schedules or ([FLOODING] if dec.mode == FLOODING else ["natural"])
    granularity = dec.granularity
    units = code.row_count if granularity == ROW else len(code.nodes)
    profiles = overlaps = None

    specs: List[ScheduleSpec] = []
    for entry in entries:
        if entry == FLOODING or (dec.mode == FLOODING and entry == "natural"):
            specs.append(ScheduleSpec(FLOODING, Schedule.flooding()))
            continue
        if entry == PER_TRIAL_RANDOM:
            specs.append(ScheduleSpec(PER_TRIAL_RANDOM, None, per_trial=True))
            continue
        if entry in SCHEDULE_REGISTRY:
            if profiles is None:
                profiles, overlaps = profiles_for(code, granularity)
            order = SCHEDULE_REGISTRY[entry](profiles, overlaps, np.random.default_rng(schedule_seed(cfg)))
            label = entry
        else:
            order = parse_sequence(entry)
            if sorted(order) != list(range(units)):
                raise ConfigError(
                    f"decoder.schedules: {entry!r} is not a permutation of 1..{units} ({granularity} granularity)"
                )
            label = format_sequence(order)
        nodes = code.expand_rows(order) if granularity == ROW else order
        specs.append(ScheduleSpec(label, Schedule.layered(nodes, label), tuple(order)))

    labels = [s.label for s in specs]
    if len(set(labels)) != len(labels):
        raise ConfigError(f"decoder.schedules has duplicate entries: {labels}")
    return specs
