"""Seeded Monte Carlo BLER sweeps.

Work is cut into batches of consecutive trials for one (channel
parameter, schedule) point. Trial t of point (c, s) draws everything from
its own counter-based stream

    Generator(Philox(SeedSequence([seed, c, s, t])))

(with s left out when run.common_noise is set), in the order: message
bits (random-codeword mode), channel noise, schedule permutation
(per-trial-random). Batches are reduced in trial order, so results do
not depend on the number of workers.
"""

import logging
import os
import sys
import time
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from channels.base import ChannelModel, build_channel
from decoding.decoder import MessagePassingDecoder
from decoding.schedule import Schedule
from graph.gldpc import GldpcCode
from scheduling.baselines import ROW
from sim.experiment import (
    ExperimentConfig,
    ScheduleSpec,
    build_code,
    log_code_summary,
    require_simulation,
    resolve_schedules,
)
from sim.records import BlerRecord

logger = logging.getLogger(__name__)


def trial_rng(seed: int, channel_index: int, schedule_index: int, trial: int,
              common_noise: bool = False) -> np.random.Generator:
    key = [seed, channel_index, trial] if common_noise else [seed, channel_index, schedule_index, trial]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(key)))


@dataclass(frozen=True)
class WorkItem:
    channel_index: int
    schedule_index: int
    start: int
    count: int


class TrialRunner:
    """Everything one process needs to decode batches of trials."""

    def __init__(self, cfg: ExperimentConfig, code: GldpcCode, specs: Sequence[ScheduleSpec],
                 channels: Sequence[ChannelModel]):
        self.cfg = cfg
        self.code = code
        self.specs = list(specs)
        self.channels = list(channels)
        self.decoder = MessagePassingDecoder(
            code, channels[0].kind, cfg.decoder.max_iterations, cfg.decoder.gc_rule,
            early_stop=cfg.decoder.early_stop,
        )
        self._units = code.row_count if cfg.decoder.granularity == ROW else len(code.nodes)
        self._random_codeword = cfg.channel.codeword == "random"

    def _permutation_schedule(self, perm: Tuple[int, ...]) -> Schedule:
        nodes = self.code.expand_rows(perm) if self.cfg.decoder.granularity == ROW else perm
        return Schedule.layered(nodes, "per_trial_random")

    def run(self, item: WorkItem) -> Tuple[int, float]:
        """Decode one batch; returns (block errors, seconds)."""
        t0 = time.perf_counter()
        spec = self.specs[item.schedule_index]
        channel = self.channels[item.channel_index]
        run = self.cfg.run
        n = self.code.N

        sent = np.zeros((item.count, n), dtype=np.uint8)
        received = []
        perms = []
        for j in range(item.count):
            rng = trial_rng(run.seed, item.channel_index, item.schedule_index, item.start + j, run.common_noise)
            if self._random_codeword:
                msg = rng.integers(0, 2, self.code.K, dtype=np.int64)
                sent[j] = (msg @ self.code.generator.astype(np.int64)) % 2
            received.append(channel.transmit(sent[j], rng))
            if spec.per_trial:
                perms.append(tuple(int(p) for p in rng.permutation(self._units)))
        received = np.stack(received)

        if not spec.per_trial:
            errors = int((~self.decoder.decode_batch(received, spec.schedule, sent).success).sum())
            return errors, time.perf_counter() - t0

        groups: Dict[Tuple[int, ...], List[int]] = {}
        for j, perm in enumerate(perms):
            groups.setdefault(perm, []).append(j)
        errors = 0
        for perm, idx in groups.items():
            idx = np.asarray(idx)
            res = self.decoder.decode_batch(received[idx], self._permutation_schedule(perm), sent[idx])
            errors += int((~res.success).sum())
        return errors, time.perf_counter() - t0


_WORKER: Optional[TrialRunner] = None


def _init_worker(cfg: ExperimentConfig, code: GldpcCode, specs, channels) -> None:
    global _WORKER
    logging.getLogger().setLevel(logging.WARNING)
    _WORKER = TrialRunner(cfg, code, specs, channels)


def _run_item(item: WorkItem) -> Tuple[WorkItem, int, float]:
    errors, seconds = _WORKER.run(item)
    return item, errors, seconds


def _batches(trials: int, batch_size: int, ch: int, sched: int) -> List[WorkItem]:
    return [WorkItem(ch, sched, s, min(batch_size, trials - s)) for s in range(0, trials, batch_size)]


def run_simulation(cfg: ExperimentConfig, workers: Optional[int] = None,
                   quiet: bool = False) -> List[BlerRecord]:
    """Run every (channel parameter, schedule) point of an experiment.

    With run.min_block_errors set, a point stops after the first batch
    at which the error count reaches the target; the cut is always at a
    batch boundary so it does not depend on the worker count.
    """
    require_simulation(cfg)
    code = build_code(cfg)
    log_code_summary(code)
    specs = resolve_schedules(cfg, code)
    channels = [build_channel(cfg.channel.type, p, code.rate) for p in cfg.channel.parameters]
    for spec in specs:
        logger.info("Schedule %s", spec.label)

    workers = workers or os.cpu_count() or 1
    run = cfg.run
    points = [(c, s) for c in range(len(channels)) for s in range(len(specs))]
    total = len(points) * run.trials
    bar = tqdm(total=total, unit="trial", disable=quiet or not sys.stderr.isatty(), file=sys.stderr)

    pool = None
    if workers > 1:
        pool = Pool(workers, initializer=_init_worker, initargs=(cfg, code, specs, channels))
        execute = lambda items: pool.imap(_run_item, items)  # noqa: E731
    else:
        local = TrialRunner(cfg, code, specs, channels)
        execute = lambda items: ((it, *local.run(it)) for it in items)  # noqa: E731
    logger.info("Simulating %d points x %d trials on %d worker(s)", len(points), run.trials, workers)

    totals: Dict[Tuple[int, int], List] = {p: [0, 0, 0.0] for p in points}
    try:
        if run.min_block_errors is None:
            items = [it for c, s in points for it in _batches(run.trials, run.batch_size, c, s)]
            for it, errors, seconds in execute(items):
                acc = totals[(it.channel_index, it.schedule_index)]
                acc[0] += it.count
                acc[1] += errors
                acc[2] += seconds
                bar.update(it.count)
        else:
            wave = max(1, 2 * workers)
            for c, s in points:
                items = _batches(run.trials, run.batch_size, c, s)
                acc = totals[(c, s)]
                for w in range(0, len(items), wave):
                    for it, errors, seconds in execute(items[w:w + wave]):
                        if acc[1] >= run.min_block_errors:
                            break
                        acc[0] += it.count
                        acc[1] += errors
                        acc[2] += seconds
                        bar.update(it.count)
                    if acc[1] >= run.min_block_errors:
                        break
                bar.update(run.trials - acc[0])
    finally:
        bar.close()
        if pool is not None:
            pool.close()
            pool.join()

    records = []
    for c, s in points:
        trials, errors, seconds = totals[(c, s)]
        rec = BlerRecord(channels[c].parameter, specs[s].label, cfg.decoder.max_iterations,
                         trials, errors, run.seed, seconds)
        lo, hi = rec.interval
        logger.info("param=%g schedule=%s: %d/%d block errors, BLER %.4g [%.3g, %.3g]",
                    rec.channel_param, rec.schedule, errors, trials, rec.bler, lo, hi)
        records.append(rec)
    return records
