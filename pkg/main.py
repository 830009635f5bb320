#!/usr/bin/env python3
"""GLDPC scheduling toolkit: entry point.

Builds GLDPC codes from exponent matrices, orders constraint-node
updates by distance properties, runs seeded Monte Carlo BLER sweeps and
cross-checks the decoder against enumeration oracles.

Usage:
    python3 main.py analyze experiments/g_r4_4_mixed_awgn.yaml
    python3 main.py schedule experiments/g_r4_4_mixed_awgn.yaml        # -> 1,3,2,4
    python3 main.py simulate --config experiments/hamming_bec_zc34.yaml --workers 8
    python3 main.py predict experiments/g_r4_4_mixed_awgn.yaml
    python3 main.py verify --quick

Exit status: 0 success, 1 configuration or usage error, 2 verification failure,
3 decoder anomaly or other runtime error.
"""

__version__ = "1.0.0"

import argparse
import logging
import sys

from core.errors import CapacityError, CodeConstructionError, ConfigError, GldpcError, VerificationFailure

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_VERIFY = 2
EXIT_RUNTIME = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; usage errors here are 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _add_config(p: argparse.ArgumentParser) -> None:
    p.add_argument("config_path", nargs="?", metavar="CONFIG", help="Experiment YAML file")
    p.add_argument("--config", dest="config_flag", metavar="PATH", help="Experiment YAML file")


def parse_args(argv=None):
    parser = _Parser(
        prog="main.py",
        description="GLDPC scheduling toolkit: codes, schedules, BLER simulation, oracles",
    )
    parser.add_argument(
        "--log-level", default="INFO",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Set the logging verbosity (default: INFO)",
    )
    parser.add_argument(
        "--version", action="version",
        version=f"gldpc-sched {__version__}",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("analyze", help="Print per-row subcode profiles and overlaps")
    _add_config(p)

    p = sub.add_parser("schedule", help="Print the distance-based scheduling sequence")
    _add_config(p)
    p.add_argument("--baselines", action="store_true",
                   help="Also print the baseline strategies, one per line")
    p.add_argument("--seed", type=int, help="Seed for the random baseline")

    p = sub.add_parser("simulate", help="Run the Monte Carlo BLER sweep and write CSV")
    _add_config(p)
    p.add_argument("--output", help="CSV path (overrides run.output; '-' for stdout)")
    p.add_argument("--seed", type=int, help="Override run.seed")
    p.add_argument("--workers", type=int, help="Worker processes (default: CPU count)")
    p.add_argument("--quiet", action="store_true", help="No progress bar")

    p = sub.add_parser("predict", help="Print first-iteration error predictions")
    _add_config(p)

    p = sub.add_parser("verify", help="Run the oracle cross-check suites")
    p.add_argument("--quick", action="store_true", help="Smaller sample counts")
    p.add_argument("--only", nargs="+", metavar="SUITE", help="Run only these suites")

    return parser.parse_args(argv)


def setup_logging(level_name: str) -> None:
    """Configure root logger with a consistent format."""
    level = getattr(logging, level_name.upper(), logging.INFO)
    logging.basicConfig(
        level=level,
        format="%(asctime)s  %(levelname)-7s  %(name)s  %(message)s",
        datefmt="%H:%M:%S",
        stream=sys.stderr,
    )


def _config(args):
    from sim.experiment import load_config

    path = args.config_flag or args.config_path
    if not path:
        raise ConfigError("a config file is required (positional or --config)")
    return load_config(path)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    from scheduling.profiles import row_overlap_table, row_profiles
    from sim.experiment import build_code, log_code_summary

    cfg = _config(args)
    code = build_code(cfg)
    log_code_summary(code)
    overlaps = row_overlap_table(code.exp)
    profiles = row_profiles(code)
    rows = len(profiles)
    print(f"N={code.N} K={code.K} rank={code.rank} rate={code.rate:.6f} ZC={code.ZC}")
    print("row  subcode                    n  d_min  A_min  degree  overlaps")
    for p in profiles:
        ov = ",".join(str(overlaps(p.id, j)) if j != p.id else "-" for j in range(rows))
        print(f"{p.id + 1:<4d} {p.code.label:<26s} {p.n:<2d} {p.d_min:<6d} {p.a_min:<6d} {p.degree:<7d} {ov}")
    return EXIT_OK


def cmd_schedule(args) -> int:
    import numpy as np

    from decoding.schedule import format_sequence
    from scheduling.baselines import PER_TRIAL_RANDOM, profiles_for
    from core.registry import SCHEDULE_REGISTRY
    from sim.experiment import build_code, schedule_seed

    cfg = _config(args)
    code = build_code(cfg)
    profiles, overlaps = profiles_for(code, cfg.decoder.granularity)
    order = SCHEDULE_REGISTRY["hds"](profiles, overlaps)
    logging.getLogger(__name__).info("Distance-based schedule (%s granularity): %s",
                                     cfg.decoder.granularity, format_sequence(order))
    print(format_sequence(order))
    if args.baselines:
        seed = args.seed if args.seed is not None else schedule_seed(cfg)
        for name in sorted(SCHEDULE_REGISTRY):
            if name in ("hds", PER_TRIAL_RANDOM):
                continue
            seq = SCHEDULE_REGISTRY[name](profiles, overlaps, np.random.default_rng(seed))
            print(f"{name}: {format_sequence(seq)}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    from sim.records import check_monotonicity, emit_csv, write_csv
    from sim.runner import run_simulation

    cfg = _config(args)
    if args.seed is not None:
        if args.seed < 0:
            raise ConfigError(f"--seed must be >= 0, got {args.seed}")
        cfg.run.seed = args.seed
    if args.workers is not None and args.workers < 1:
        raise ConfigError(f"--workers must be >= 1, got {args.workers}")
    output = args.output or cfg.run.output

    records = run_simulation(cfg, workers=args.workers, quiet=args.quiet)
    if cfg.channel.type == "bec":
        check_monotonicity(records)
    if output and output != "-":
        emit_csv(records, output)
    else:
        write_csv(records, sys.stdout)
    return EXIT_OK


def cmd_predict(args) -> int:
    from analysis.predictions import exact_first_iter_erasure, awgn_leading_error, psum_compare
    from scheduling.profiles import row_overlap_table
    from sim.experiment import build_code

    cfg = _config(args)
    code = build_code(cfg)
    channel = cfg.channel.type
    point = cfg.analysis.epsilon if channel == "bec" else cfg.analysis.llr_mean
    overlaps = row_overlap_table(code.exp)

    for r, sub in enumerate(code.row_subcodes):
        if channel == "bec":
            value = exact_first_iter_erasure(sub, 0, point)
            print(f"row={r + 1} subcode={sub.label} epsilon={point:g} first_iter_erasure={value:.10g}")
        else:
            value = awgn_leading_error(sub, 0, point)
            print(f"row={r + 1} subcode={sub.label} llr_mean={point:g} leading_error={value:.10g}")

    rows = code.row_count
    for a in range(rows):
        for b in range(a + 1, rows):
            report = psum_compare(code.row_subcodes[a], code.row_subcodes[b], overlaps(a, b), channel, point)
            fields = " ".join(f"{k}={v}" for k, v in report.as_dict().items())
            print(f"rows={a + 1},{b + 1} {fields}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from sim.verify import run_verification

    run_verification(quick=args.quick, only=args.only)
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "schedule": cmd_schedule,
    "simulate": cmd_simulate,
    "predict": cmd_predict,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = parse_args(argv)
    setup_logging(args.log_level)

    logger = logging.getLogger(__name__)
    logger.debug("gldpc-sched v%s: %s", __version__, args.command)

    try:
        return COMMANDS[args.command](args)
    except (ConfigError, CodeConstructionError, CapacityError) as exc:
        logger.error("%s", exc)
        return EXIT_CONFIG
    except VerificationFailure as exc:
        logger.error("%s", exc)
        return EXIT_VERIFY
    except (GldpcError, ValueError) as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        logger.debug("Traceback", exc_info=True)
        return EXIT_RUNTIME
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
