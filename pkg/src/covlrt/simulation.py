"""Seeded Monte Carlo harness for sizes, powers and kurtosis-estimator tables.

Replicate ``r`` of a scenario draws from its own generator
``PCG64(SeedSequence(master_seed, spawn_key=(r,)))``, so results depend only
on the configuration, never on how replicates are scheduled across
workers.  Every test in a replicate sees the same two samples (common random
numbers).  BLAS is pinned to a single thread while replicates run, which
keeps floating point results identical between the serial and the pooled
paths.
"""

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from functools import lru_cache

import numpy as np
from threadpoolctl import threadpool_limits

from .calibration import FULL, LITE, KurtosisPair, DesignRatios, centering_full, make_ratios
from .comparators import clx_test, li_chen_test
from .exceptions import CovLRTError, ScenarioFailure
from .kurtosis import estimate_delta, estimate_pair
from .linalg import beta_spectrum_from_scatter, scatter_matrix
from .reference_tables import A_VALUES, BLOCKS, KURTOSIS, SIZE_POWER
from .statistics import ESTIMATED, GAUSSIAN_ASSUMED, KNOWN, TWO_SIDED, evaluate_spectrum

CASES = (1, 2, 3, 4)
TEST_NAMES = ("T", "T_lite", "lc", "clx")
KURTOSIS_MODES = ("true-values", "estimated", "gaussian")
SCALINGS = ("data", "covariance")
UNIFORM_DELTA = -1.2
MAX_FAILURE_FRACTION = 0.01


@dataclass(frozen=True)
class ScenarioConfig:
    """One Monte Carlo experiment.

    ``n1`` and ``n2`` are degrees of freedom; each replicate draws ``n_l + 1``
    observations per sample.  Under ``scaling="data"`` sample 1 is
    ``(1 + a/n1)`` times a draw from the sample-2 population; under
    ``scaling="covariance"`` its covariance is ``(1 + a/n1) Sigma2``.
    """

    case: int
    n1: int
    n2: int
    p: int
    a: float = 0.0
    replicates: int = 2000
    master_seed: int = 0
    level: float = 0.05
    tests: tuple = TEST_NAMES
    kurtosis_mode: str = "true-values"
    sided: str = TWO_SIDED
    scaling: str = "data"

    def __post_init__(self):
        if self.case not in CASES:
            raise ValueError(f"case must be one of {CASES}")
        if self.replicates < 0:
            raise ValueError("replicates must be >= 0")
        if not 0 < self.level < 1:
            raise ValueError("level must lie in (0, 1)")
        unknown = set(self.tests) - set(TEST_NAMES)
        if unknown:
            raise ValueError(f"unknown tests {sorted(unknown)}; expected a subset of {TEST_NAMES}")
        if self.kurtosis_mode not in KURTOSIS_MODES:
            raise ValueError(f"kurtosis_mode must be one of {KURTOSIS_MODES}")
        if self.scaling not in SCALINGS:
            raise ValueError(f"scaling must be one of {SCALINGS}")
        if {"T", "T_lite"} & set(self.tests):
            make_ratios(self.p, self.n1, self.n2)
        object.__setattr__(self, "tests", tuple(t for t in TEST_NAMES if t in self.tests))

    def to_dict(self):
        d = asdict(self)
        d["tests"] = list(self.tests)
        return d


@dataclass
class ScenarioReport:
    config: ScenarioConfig
    rejection_rates: dict
    statistic_mean: dict
    statistic_variance: dict
    failures: dict
    replicates: int
    runtime: float = field(default=0.0, compare=False)

    def to_dict(self, timings=False):
        out = {
            "config": self.config.to_dict(),
            "replicates": self.replicates,
            "rejection_rates": self.rejection_rates,
            "statistic_mean": self.statistic_mean,
            "statistic_variance": self.statistic_variance,
            "failures": self.failures,
        }
        if timings:
            out["runtime_seconds"] = self.runtime
        return out


def replicate_rng(master_seed, index):
    """Independent generator for replicate ``index`` of a scenario."""
    ss = np.random.SeedSequence(int(master_seed), spawn_key=(int(index),))
    return np.random.Generator(np.random.PCG64(ss))


def derive_seed(master_seed, *key):
    """A 64-bit seed derived deterministically from ``master_seed`` and ``key``."""
    ss = np.random.SeedSequence(int(master_seed), spawn_key=tuple(int(k) for k in key))
    return int(ss.generate_state(1, np.uint64)[0])


@lru_cache(maxsize=32)
def _compound_sqrt(p):
    # symmetric square root of 0.5 I + 0.5 11'
    sigma = 0.5 * np.eye(p) + 0.5 * np.ones((p, p))
    w, V = np.linalg.eigh(sigma)
    root = (V * np.sqrt(w)) @ V.T
    root = (root + root.T) / 2
    root.setflags(write=False)
    return root


def population_sqrt(case, p):
    """Symmetric square root of the sample-2 covariance (``None`` for identity)."""
    if case in (1, 2):
        return None
    if case == 3:
        return np.concatenate(([float(p)], np.ones(p - 1)))
    return _compound_sqrt(p)


def _entries(case, shape, rng):
    if case == 1:
        return rng.standard_normal(shape)
    return math.sqrt(3.0) * (2.0 * rng.random(shape) - 1.0)


def generate_population(case, role, n, p, a=0.0, rng=None, scaling="data"):
    """Draw ``n + 1`` observations of dimension ``p`` (rows) for one sample.

    Parameters
    ----------
    case : {1, 2, 3, 4}
        1: Gaussian entries, identity covariance.  2: uniform entries on
        ``(-sqrt 3, sqrt 3)``, identity.  3: uniform, ``Diag(p^2, 1, ..., 1)``.
        4: uniform, ``0.5 I + 0.5 11'``.
    role : {"sample1", "sample2"}
        Sample 1 carries the alternative scaling ``a``.
    n : int
        Degrees of freedom of the sample; ``n + 1`` rows are returned.
    """
    if case not in CASES:
        raise ValueError(f"case must be one of {CASES}")
    if role not in ("sample1", "sample2"):
        raise ValueError("role must be 'sample1' or 'sample2'")
    rng = np.random.default_rng() if rng is None else rng
    X = _entries(case, (n + 1, p), rng)
    root = population_sqrt(case, p)
    if root is not None:
        X = X * root if root.ndim == 1 else X @ root
    if role == "sample1" and a:
        factor = 1.0 + a / n
        X *= factor if scaling == "data" else math.sqrt(factor)
    return X


def true_kurtosis(case):
    return KurtosisPair(0.0, 0.0) if case == 1 else KurtosisPair(UNIFORM_DELTA, UNIFORM_DELTA)


def _replicate(cfg, index):
    """Standardized statistics (NaN on failure) and rejection flags for one replicate."""
    rng = replicate_rng(cfg.master_seed, index)
    X1 = generate_population(cfg.case, "sample1", cfg.n1, cfg.p, cfg.a, rng, cfg.scaling)
    X2 = generate_population(cfg.case, "sample2", cfg.n2, cfg.p, cfg.a, rng, cfg.scaling)
    stats, rejects = {}, {}
    lrt = [t for t in ("T", "T_lite") if t in cfg.tests]
    if lrt:
        try:
            ratios = make_ratios(cfg.p, cfg.n1, cfg.n2)
            spec = beta_spectrum_from_scatter(scatter_matrix(X1), scatter_matrix(X2), cfg.n1, cfg.n2)
            if cfg.kurtosis_mode == "true-values":
                pair, source = true_kurtosis(cfg.case), KNOWN
            elif cfg.kurtosis_mode == "estimated":
                e1, e2 = estimate_pair(X1, X2)
                pair, source = KurtosisPair(e1.value, e2.value), ESTIMATED
            else:
                pair, source = KurtosisPair(), GAUSSIAN_ASSUMED
            for name in lrt:
                res = evaluate_spectrum(spec, ratios, pair, FULL if name == "T" else LITE, cfg.sided, source)
                stats[name] = res.standardized
                rejects[name] = res.p_value < cfg.level
        except (CovLRTError, ArithmeticError, np.linalg.LinAlgError):
            for name in lrt:
                stats[name], rejects[name] = math.nan, None
    for name, fn in (("lc", li_chen_test), ("clx", clx_test)):
        if name in cfg.tests:
            try:
                res = fn(X1, X2)
                stats[name], rejects[name] = res.statistic, res.p_value < cfg.level
            except (CovLRTError, ArithmeticError, np.linalg.LinAlgError, ValueError):
                stats[name], rejects[name] = math.nan, None
    return stats, rejects


def _run_chunk(args):
    cfg, start, stop, kind = args
    with threadpool_limits(limits=1):
        if kind == "tests":
            return [_replicate(cfg, r) for r in range(start, stop)]
        return [_kurtosis_replicate(cfg, r) for r in range(start, stop)]


def _chunks(total, threads):
    size = max(1, min(64, -(-total // max(1, threads * 4))))
    return [(s, min(total, s + size)) for s in range(0, total, size)]


def _map_replicates(cfg, kind, threads):
    bounds = _chunks(cfg.replicates, threads)
    jobs = [(cfg, s, e, kind) for s, e in bounds]
    if threads <= 1 or len(jobs) <= 1:
        parts = [_run_chunk(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_run_chunk, jobs))
    return [item for part in parts for item in part]


def _summaries(values):
    arr = np.asarray(values, dtype=np.float64)
    ok = arr[np.isfinite(arr)]
    if ok.size == 0:
        return None, None
    return float(np.mean(ok)), float(np.var(ok, ddof=1)) if ok.size > 1 else 0.0


def run_scenario(cfg, threads=1):
    """Run all replicates of ``cfg`` and tally rejection rates at ``cfg.level``.

    Raises
    ------
    ScenarioFailure
        If more than 1% of the replicates of any test fail numerically.
    """
    t0 = time.perf_counter()
    results = _map_replicates(cfg, "tests", threads)
    rates, means, variances, failures = {}, {}, {}, {}
    for name in cfg.tests:
        flags = [rej[name] for _, rej in results]
        ok = [f for f in flags if f is not None]
        failures[name] = len(flags) - len(ok)
        if cfg.replicates and failures[name] > MAX_FAILURE_FRACTION * cfg.replicates:
            raise ScenarioFailure(f"{failures[name]} of {cfg.replicates} replicates failed for {name}")
        rates[name] = float(sum(ok)) / len(ok) if ok else None
        means[name], variances[name] = _summaries([st[name] for st, _ in results])
    return ScenarioReport(cfg, rates, means, variances, failures, cfg.replicates,
                          time.perf_counter() - t0)


def null_distribution_sample(cfg, m, variant="T", threads=1):
    """``m`` null replicates of a standardized statistic (``"T"`` or ``"T_lite"``)."""
    if m <= 0:
        return []
    cfg = replace(cfg, a=0.0, replicates=int(m), tests=(variant,))
    results = _map_replicates(cfg, "tests", threads)
    return [st[variant] for st, _ in results]


# kurtosis-estimator scenarios ---------------------------------------------------------------

@dataclass(frozen=True)
class KurtosisConfig:
    case: int
    n1: int
    n2: int
    p: int
    replicates: int = 500
    master_seed: int = 0
    method: str = "pooled"

    def to_dict(self):
        return asdict(self)


def _kurtosis_replicate(cfg, index):
    rng = replicate_rng(cfg.master_seed, index)
    X1 = generate_population(cfg.case, "sample1", cfg.n1, cfg.p, 0.0, rng)
    X2 = generate_population(cfg.case, "sample2", cfg.n2, cfg.p, 0.0, rng)
    try:
        if cfg.method == "lowdim":
            from .kurtosis import estimate_delta_lowdim
            return estimate_delta_lowdim(X1, 1).value
        return estimate_delta(X1, X2, 1).value
    except (CovLRTError, ArithmeticError, np.linalg.LinAlgError):
        return math.nan


def run_kurtosis_scenario(cfg, threads=1):
    """Mean and variance of the sample-1 cumulant estimate over replicates."""
    values = _map_replicates(cfg, "kurtosis", threads)
    mean, var = _summaries(values)
    failed = int(np.sum(~np.isfinite(np.asarray(values, dtype=float)))) if values else 0
    if cfg.replicates and failed > MAX_FAILURE_FRACTION * cfg.replicates:
        raise ScenarioFailure(f"{failed} of {cfg.replicates} kurtosis replicates failed")
    return {"config": cfg.to_dict(), "mean": mean, "variance": var, "failures": failed,
            "truth": true_kurtosis(cfg.case).delta1}


# table reproduction -----------------------------------------------------------------------------

TABLE_IDS = ("1", "2", "3", "4", "del1", "del2")


def table_cells(table, a_values=A_VALUES):
    """(n1, n2, p, a) cells of a size/power table or (n1, n2, p) rows of a kurtosis table."""
    table = str(table)
    if table in ("1", "2", "3", "4"):
        return [(n1, n2, p, a) for block in BLOCKS for (n1, n2, p) in block for a in a_values]
    if table in KURTOSIS:
        return [(n1, n2, p) for (n1, n2), rows in KURTOSIS[table].items() for p, _, _ in rows]
    raise ValueError(f"unknown table {table!r}; expected one of {TABLE_IDS}")


def reproduce_table(table, replicates=2000, master_seed=0, threads=1, a_values=A_VALUES,
                    tests=TEST_NAMES, kurtosis_mode="true-values", cells=None):
    """Regenerate a published grid; every cell carries its reference values.

    Each cell gets its own master seed derived from ``master_seed`` and the
    cell index, so any cell can be rerun on its own from the report.
    """
    table = str(table)
    cells = table_cells(table, a_values) if cells is None else list(cells)
    out = []
    if table in ("1", "2", "3", "4"):
        case = int(table)
        for i, (n1, n2, p, a) in enumerate(cells):
            cfg = ScenarioConfig(case, n1, n2, p, a, replicates, derive_seed(master_seed, case, i),
                                 tests=tuple(tests), kurtosis_mode=kurtosis_mode)
            rep = run_scenario(cfg, threads)
            ref = SIZE_POWER[case].get((n1, n2, p), {}).get(a)
            row = {"n1": n1, "n2": n2, "p": p, "a": a, "seed": cfg.master_seed,
                   "rates": rep.rejection_rates, "failures": rep.failures,
                   "reference": dict(zip(TEST_NAMES, ref)) if ref else None}
            out.append(row)
    else:
        case = 1 if table == "del1" else 2
        refs = {(n1, n2, p): (m, v) for (n1, n2), rows in KURTOSIS[table].items() for p, m, v in rows}
        for i, (n1, n2, p) in enumerate(cells):
            cfg = KurtosisConfig(case, n1, n2, p, replicates, derive_seed(master_seed, 10 + case, i))
            rep = run_kurtosis_scenario(cfg, threads)
            ref = refs.get((n1, n2, p))
            out.append({"n1": n1, "n2": n2, "p": p, "seed": cfg.master_seed, "mean": rep["mean"],
                        "variance": rep["variance"], "failures": rep["failures"],
                        "reference": {"mean": ref[0], "variance": ref[1]} if ref else None})
    return {"table": table, "replicates": replicates, "master_seed": master_seed, "cells": out}


# calibration surfaces -----------------------------------------------------------------------------

def ratios_from_y(y1, y2):
    """Design ratios with the given ``y1, y2`` (``p = 1``, fractional degrees of freedom)."""
    return DesignRatios(1, 1.0 / y1, 1.0 / y2)


def calibration_surface(y1_range=(0.0, 2.0), y2_range=(0.0, 2.0), steps=40, quantity="mu",
                        delta1=0.0, delta2=0.0):
    """Evaluate the full statistic's ``mu`` or ``nu2`` over an open (y1, y2) grid.

    Grid points are interior: ``steps`` equally spaced midpoints of each
    range.  Infeasible cells (``y1 + y2 - y1 y2 <= 0``), near-critical cells
    (``|y - 1| < 0.02``) and cells whose calibration fails are ``None``.
    """
    from .calibration import CRITICAL_BAND

    if quantity not in ("mu", "nu2", "ell"):
        raise ValueError("quantity must be 'mu', 'nu2' or 'ell'")
    ys1 = [y1_range[0] + (y1_range[1] - y1_range[0]) * (i + 0.5) / steps for i in range(steps)]
    ys2 = [y2_range[0] + (y2_range[1] - y2_range[0]) * (j + 0.5) / steps for j in range(steps)]
    k = KurtosisPair(delta1, delta2)
    grid = []
    for y1 in ys1:
        row = []
        for y2 in ys2:
            if y1 <= 0 or y2 <= 0 or y1 + y2 - y1 * y2 <= 0 or \
                    abs(y1 - 1) < CRITICAL_BAND or abs(y2 - 1) < CRITICAL_BAND:
                row.append(None)
                continue
            try:
                row.append(getattr(centering_full(ratios_from_y(y1, y2), k), quantity))
            except CovLRTError:
                row.append(None)
        grid.append(row)
    return {"quantity": quantity, "y1": ys1, "y2": ys2, "delta1": delta1, "delta2": delta2,
            "values": grid}


def surface_value(y1, y2, quantity="mu", delta1=0.0, delta2=0.0):
    return getattr(centering_full(ratios_from_y(y1, y2), KurtosisPair(delta1, delta2)), quantity)
