"""Experiment configs, seeded Monte Carlo BLER sweeps, CSV output and oracle suites.

Architecture:
    experiment  -- YAML loading/validation, code and schedule resolution
    runner      -- batched, worker-count independent BLER simulation
    records     -- BlerRecord, Wilson intervals, CSV emission
    verify      -- cross-check suites behind `main.py verify`
"""

from sim.experiment import ExperimentConfig, ScheduleSpec, build_code, load_config, parse_config, resolve_schedules
from sim.records import BlerRecord, check_monotonicity, emit_csv, wilson_interval
from sim.runner import run_simulation, trial_rng
from sim.verify import SuiteResult, run_verification

__all__ = [
    "ExperimentConfig",
    "ScheduleSpec",
    "load_config",
    "parse_config",
    "build_code",
    "resolve_schedules",
    "BlerRecord",
    "emit_csv",
    "wilson_interval",
    "check_monotonicity",
    "run_simulation",
    "trial_rng",
    "SuiteResult",
    "run_verification",
]
