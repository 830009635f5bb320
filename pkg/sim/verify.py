"""Oracle cross-check suites behind the `verify` command.

Each suite returns a SuiteResult; run_verification() runs them all,
logs one line per suite and raises VerificationFailure if any failed.
`quick` shrinks the Monte Carlo and random-pattern sample counts.
"""

import itertools
import logging
import time
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np

from analysis.coefficients import ENSEMBLE, EXACT, g_coeff
from analysis.predictions import (
    INDIFFERENT,
    awgn_error_monte_carlo,
    awgn_leading_error,
    erasure_polynomial,
    exact_first_iter_erasure,
    psum_compare,
)
from channels.bec import ERASED
from codes.families import make_code, spc
from codes.linear_code import LinearCode, binom, macwilliams_transform
from config import DEFAULT_SEED
from core.errors import ConfigError, VerificationFailure
from decoding.rules import (
    EXACT as APP_EXACT,
    app_kernel_awgn,
    app_kernel_bec,
    gc_c2v_bec,
    gc_c2v_bec_enumerate,
    spc_kernel_awgn,
)
from decoding.schedule import format_sequence
from graph.exponent import load_exponent_matrix
from graph.gldpc import generalize, lift
from scheduling.hds import hds_schedule, pairwise_preference
from scheduling.profiles import profile_code, row_overlap_table, row_profiles
from sim.records import wilson_interval

logger = logging.getLogger(__name__)

SMALL_FIXTURES = ["hamming_7_4", "simplex_7_3", "hamming_subcode_7_3", "shortened_hamming_6_3"]
ALL_FIXTURES = SMALL_FIXTURES + ["hamming_15_11", "shortened_hamming_14_10"]
ORDERING_CODES = ["spc(6)", "spc(7)", "hamming_7_4", "simplex_7_3", "shortened_hamming_6_3"]

EXPECTED_SPECTRA = {
    "hamming_7_4": [1, 0, 0, 7, 7, 0, 0, 1],
    "simplex_7_3": [1, 0, 0, 0, 7, 0, 0, 0],
    "hamming_subcode_7_3": [1, 0, 0, 3, 3, 0, 0, 1],
    "shortened_hamming_6_3": [1, 0, 0, 4, 3, 0, 0],
}


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def check_spectra(quick: bool = False) -> SuiteResult:
    bad = []
    for name, expected in EXPECTED_SPECTRA.items():
        got = make_code(name).weight_spectrum.tolist()
        if got != expected:
            bad.append(f"{name}: {got} != {expected}")
    for n in range(2, 11):
        got = spc(n).weight_spectrum
        if got[2] != binom(n, 2) or got[1] != 0:
            bad.append(f"spc({n}): A_2={got[2]}, expected {binom(n, 2)}")
    return SuiteResult("spectra", not bad, "; ".join(bad) or "all fixture spectra match")


def check_macwilliams(quick: bool = False) -> SuiteResult:
    bad = []
    for name in ALL_FIXTURES + ["spc(7)"]:
        code = make_code(name)
        dual = code.dual()
        predicted = macwilliams_transform(code.weight_spectrum.tolist(), code.k)
        if predicted != dual.weight_spectrum.tolist():
            bad.append(f"{name}: transform {predicted} != dual spectrum {dual.weight_spectrum.tolist()}")
    return SuiteResult("macwilliams", not bad, "; ".join(bad) or "dual spectra agree")


def _bec_compare(code: LinearCode, words: np.ndarray, erased: np.ndarray, coords: np.ndarray) -> int:
    """Mismatches between the span rule, enumeration and the batched kernel."""
    v2c = np.where(erased, ERASED, words).astype(np.uint8)
    kernel = app_kernel_bec(v2c, code)
    mismatches = 0
    for r, i in enumerate(coords):
        incoming = np.delete(v2c[r], i)
        span = gc_c2v_bec(code, incoming, int(i))
        ref = gc_c2v_bec_enumerate(code, incoming, int(i))
        if not span == ref == int(kernel[r, i]):
            mismatches += 1
    return mismatches


def check_bec_app(quick: bool = False, seed: int = DEFAULT_SEED) -> SuiteResult:
    rng = np.random.default_rng(seed)
    mismatches = 0
    checked = 0
    for name in SMALL_FIXTURES + ["spc(6)", "spc(7)"]:
        code = make_code(name)
        n = code.n
        patterns = ((np.arange(1 << n)[:, None] >> np.arange(n)) & 1).astype(bool)
        rows = np.repeat(patterns, n, axis=0)
        coords = np.tile(np.arange(n), 1 << n)
        words = code.codewords[rng.integers(0, code.codewords.shape[0], rows.shape[0])]
        mismatches += _bec_compare(code, words, rows, coords)
        checked += rows.shape[0]

    code = make_code("hamming_15_11")
    count = 1_000 if quick else 10_000
    erased = rng.random((count, code.n)) < rng.random((count, 1))
    words = code.encode(rng.integers(0, 2, (count, code.k)))
    mismatches += _bec_compare(code, words, erased, rng.integers(0, code.n, count))
    checked += count
    return SuiteResult("bec_app", mismatches == 0, f"{mismatches} mismatches over {checked} cases")


def check_coefficients(quick: bool = False) -> SuiteResult:
    bad = []
    ham = make_code("hamming_7_4")
    for eps, tol in ((1e-3, 0.05), (1e-4, 0.01)):
        p = exact_first_iter_erasure(ham, 0, eps)
        ref = 3 * eps ** 2
        if abs(p - ref) > tol * ref:
            bad.append(f"hamming eps={eps}: {p:.6g} vs {ref:.6g}")
    for name in ALL_FIXTURES[:4] + ["spc(6)"]:
        code = make_code(name)
        for i in range(code.n):
            counts = erasure_polynomial(code, i)
            d = code.d_min
            if any(counts[:d - 1]) or counts[d - 1] != g_coeff(code, i):
                bad.append(f"{name} coord {i}: leading count {counts[d - 1]} vs g={g_coeff(code, i)}")
    return SuiteResult("coefficients", not bad, "; ".join(bad) or "leading erasure counts equal g")


def check_spc_coincidence(quick: bool = False, seed: int = DEFAULT_SEED) -> SuiteResult:
    rng = np.random.default_rng(seed)
    total = 10_000 if quick else 100_000
    worst = 0.0
    for n in (3, 6, 7):
        v2c = rng.uniform(-10.0, 10.0, (total // 3, n))
        diff = np.abs(app_kernel_awgn(v2c, spc(n), APP_EXACT) - spc_kernel_awgn(v2c))
        worst = max(worst, float(diff.max()))
    return SuiteResult("spc_coincidence", worst <= 1e-9, f"max |exact APP - tanh rule| = {worst:.3g}")


def check_ordering_agreement(quick: bool = False) -> SuiteResult:
    codes = [make_code(c) for c in ORDERING_CODES]
    disagreements = []
    checked = 0
    for channel, point, form in (("bec", 1e-4, ENSEMBLE), ("awgn", 40.0, EXACT)):
        for a, b in itertools.permutations(codes, 2):
            # without shared variables the leading sums coincide
            for n_ab in range(1, 4):
                expected = pairwise_preference(profile_code(a, 0), profile_code(b, 1), n_ab, channel)
                if expected == INDIFFERENT:
                    continue
                checked += 1
                got = psum_compare(a, b, n_ab, channel, point, form).preferred
                if got != expected:
                    disagreements.append(f"{channel} {a.name}/{b.name} n_ab={n_ab}: {got} vs {expected}")
    ok = not disagreements
    return SuiteResult("ordering_agreement", ok, "; ".join(disagreements) or f"{checked} strict cases agree")


def check_hds_golden(quick: bool = False) -> SuiteResult:
    exp = load_exponent_matrix("g_r4_4")
    code = generalize(lift(exp), {0: "shortened_hamming_6_3", 2: "hamming_7_4"})
    order = format_sequence(hds_schedule(row_profiles(code), row_overlap_table(exp)))
    return SuiteResult("hds_golden", order == "1,3,2,4", f"schedule {order}")


def check_awgn_leading(quick: bool = False, seed: int = DEFAULT_SEED) -> SuiteResult:
    code = make_code("hamming_7_4")
    u = 16.0
    samples = 1_000_000 if quick else 10_000_000
    neg, samples = awgn_error_monte_carlo(code, 0, u, samples, np.random.default_rng(seed))
    predicted = awgn_leading_error(code, 0, u)
    observed = neg / samples
    lo, hi = wilson_interval(neg, samples, z=3.0)
    ok = lo <= predicted <= hi
    return SuiteResult("awgn_leading", ok, f"observed {observed:.4g} ({neg}/{samples}), predicted {predicted:.4g}")


SUITES: List[Callable[..., SuiteResult]] = [
    check_spectra,
    check_macwilliams,
    check_bec_app,
    check_coefficients,
    check_spc_coincidence,
    check_ordering_agreement,
    check_hds_golden,
    check_awgn_leading,
]


def run_verification(quick: bool = False, only: Optional[List[str]] = None) -> List[SuiteResult]:
    names = [suite.__name__.replace("check_", "") for suite in SUITES]
    unknown = sorted(set(only or []) - set(names))
    if unknown:
        raise ConfigError(f"unknown suite(s) {', '.join(unknown)}; known: {', '.join(names)}")

    results = []
    for suite, name in zip(SUITES, names):
        if only and name not in only:
            continue
        t0 = time.perf_counter()
        try:
            res = suite(quick=quick)
        except Exception as exc:
            logger.exception("Suite %s raised", name)
            res = SuiteResult(name, False, f"raised {type(exc).__name__}: {exc}")
        res.seconds = time.perf_counter() - t0
        log = logger.info if res.passed else logger.error
        log("%-18s %s  %s (%.2fs)", res.name, "PASS" if res.passed else "FAIL", res.detail, res.seconds)
        results.append(res)

    failed = [r.name for r in results if not r.passed]
    if failed:
        raise VerificationFailure(f"verification failed: {', '.join(failed)}")
    return results
