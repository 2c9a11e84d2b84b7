"""Command-line interface.

Exit status: 0 on success, 1 on usage or input errors, 2 when a numerical
or modelling assumption fails (for example the Dimensions Assumption).
"""

import argparse
import os
import sys
import time

import numpy as np

from . import simulation as sim
from .calibration import CRITICAL_BAND, KurtosisPair, centering, make_ratios
from .comparators import clx_test, li_chen_test
from .density import FULL_LRT_KERNEL, LOG_X, limiting_density, quadrature_centering, support
from .exceptions import CovLRTError
from .io import ORIENTATIONS, VARIABLES_IN_ROWS, CSVParseError, ReportDocument, ingest_csv, log_returns, read_price_csv
from .kurtosis import estimate_pair
from .statistics import SIDES, TWO_SIDED, run_test

THREADS_ENV = "COVLRT_THREADS"
EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _default_threads():
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _kurtosis_arg(text):
    if text in ("gaussian", "estimate"):
        return text
    if text.startswith("known:"):
        parts = text[len("known:"):].split(",")
        if len(parts) == 2:
            try:
                return KurtosisPair(float(parts[0]), float(parts[1]))
            except ValueError:
                pass
    raise argparse.ArgumentTypeError("expected gaussian, estimate or known:D1,D2")


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _nonneg_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a non-negative integer")
    return value


def _level(text):
    value = float(text)
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError("level must lie in (0, 1)")
    return value


def _add_output(p):
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte-identical reports)")


def _add_data(p):
    p.add_argument("sample1")
    p.add_argument("sample2")
    p.add_argument("--orientation", choices=ORIENTATIONS, default=VARIABLES_IN_ROWS)


def _add_pool(p):
    p.add_argument("--replicates", type=_nonneg_int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=_positive_int, default=None,
                   help=f"worker processes (default: ${THREADS_ENV} or 1)")


def build_parser():
    parser = _Parser(prog="covlrt", description="Modified likelihood-ratio tests for equal covariance matrices.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("test", help="test two datasets for equal covariance")
    _add_data(p)
    p.add_argument("--variant", choices=("full", "lite"), default="full")
    p.add_argument("--kurtosis", type=_kurtosis_arg, default="gaussian", metavar="{gaussian,estimate,known:D1,D2}")
    p.add_argument("--sided", choices=SIDES, default=TWO_SIDED)
    p.add_argument("--level", type=_level, default=0.05)
    p.add_argument("--lowdim", action="store_true", help="own-sample kurtosis estimator when p < min(n1, n2) - 1")
    p.add_argument("--comparators", action="store_true", help="also run the Li-Chen and CLX tests")
    _add_output(p)

    p = sub.add_parser("simulate", help="Monte Carlo size or power for one scenario")
    p.add_argument("--case", type=int, choices=sim.CASES, default=1)
    p.add_argument("--n1", type=_positive_int, required=True)
    p.add_argument("--n2", type=_positive_int, required=True)
    p.add_argument("--p", type=_positive_int, required=True)
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--level", type=_level, default=0.05)
    p.add_argument("--tests", default=",".join(sim.TEST_NAMES), help="comma-separated subset of T,T_lite,lc,clx")
    p.add_argument("--kurtosis-mode", choices=sim.KURTOSIS_MODES, default="true-values")
    p.add_argument("--sided", choices=SIDES, default=TWO_SIDED)
    p.add_argument("--scaling", choices=sim.SCALINGS, default="data")
    _add_pool(p)
    _add_output(p)

    p = sub.add_parser("table", help="regenerate a published size/power or kurtosis table")
    p.add_argument("table", choices=sim.TABLE_IDS)
    p.add_argument("--kurtosis-mode", choices=sim.KURTOSIS_MODES, default="true-values")
    _add_pool(p)
    _add_output(p)

    p = sub.add_parser("estimate-kurtosis", help="estimate the fourth cumulants of two datasets")
    _add_data(p)
    p.add_argument("--lowdim", action="store_true")
    p.add_argument("--algorithm", choices=("rank-one", "direct"), default="rank-one")
    _add_output(p)

    p = sub.add_parser("density", help="limiting spectral density and quadrature checks")
    p.add_argument("--p", type=_positive_int, required=True)
    p.add_argument("--n1", type=_positive_int, required=True)
    p.add_argument("--n2", type=_positive_int, required=True)
    p.add_argument("--points", type=_positive_int, default=50)
    _add_output(p)

    p = sub.add_parser("surface", help="centering mean or variance over a (y1, y2) grid")
    p.add_argument("--quantity", choices=("mu", "nu2", "ell"), default="mu")
    p.add_argument("--y1-range", type=float, nargs=2, default=(0.0, 2.0), metavar=("LO", "HI"))
    p.add_argument("--y2-range", type=float, nargs=2, default=(0.0, 2.0), metavar=("LO", "HI"))
    p.add_argument("--steps", type=_positive_int, default=40)
    p.add_argument("--delta1", type=float, default=0.0)
    p.add_argument("--delta2", type=float, default=0.0)
    _add_output(p)

    p = sub.add_parser("log-returns", help="log returns of a price file (header: date,TICKER,...)")
    p.add_argument("prices")
    p.add_argument("--returns-csv", help="write the returns matrix (dates in rows) to this path")
    _add_output(p)
    return parser


# handlers --------------------------------------------------------------------------------------

def _load(args, name):
    return ingest_csv(getattr(args, name), args.orientation)


def cmd_test(args):
    o1, o2 = _load(args, "sample1"), _load(args, "sample2")
    res = run_test(o1.observations, o2.observations, args.variant, args.kurtosis, args.sided, args.lowdim)
    out = res.to_dict()
    out["reject"] = res.p_value < args.level
    results = {"test": out}
    if args.comparators:
        results["comparators"] = {}
        for fn in (li_chen_test, clx_test):
            c = fn(o1.observations, o2.observations).to_dict()
            c["reject"] = c["p_value"] < args.level
            results["comparators"][c["name"]] = c
    kurt = args.kurtosis
    config = {"sample1": args.sample1, "sample2": args.sample2, "orientation": args.orientation,
              "variant": args.variant, "sided": args.sided, "level": args.level, "lowdim": args.lowdim,
              "kurtosis": kurt if isinstance(kurt, str) else f"known:{kurt.delta1!r},{kurt.delta2!r}",
              "comparators": args.comparators}
    return config, results, list(res.warnings)


def cmd_simulate(args):
    tests = tuple(t.strip() for t in args.tests.split(",") if t.strip())
    cfg = sim.ScenarioConfig(args.case, args.n1, args.n2, args.p, args.a, args.replicates, args.seed,
                             args.level, tests, args.kurtosis_mode, args.sided, args.scaling)
    rep = sim.run_scenario(cfg, args.threads)
    notes = [f"{k}: {v} failed replicates" for k, v in rep.failures.items() if v]
    notes.append("tests share replicate draws (common random numbers)")
    return cfg.to_dict(), rep.to_dict(), notes


def cmd_table(args):
    tab = sim.reproduce_table(args.table, args.replicates, args.seed, args.threads,
                              kurtosis_mode=args.kurtosis_mode)
    config = {"table": args.table, "replicates": args.replicates, "seed": args.seed,
              "kurtosis_mode": args.kurtosis_mode, "level": 0.05, "scaling": "data", "sided": TWO_SIDED}
    notes = []
    if args.table in ("1", "2", "3", "4"):
        notes.append("tests share replicate draws (common random numbers)")
    return config, tab, notes


def cmd_estimate_kurtosis(args):
    o1, o2 = _load(args, "sample1"), _load(args, "sample2")
    X1, X2 = o1.observations, o2.observations
    e1, e2 = estimate_pair(X1, X2, args.lowdim, args.algorithm)
    results = {f"delta{e.which_sample}": {"value": e.value, "method": e.method, "y_used": e.y_used}
               for e in (e1, e2)}
    config = {"sample1": args.sample1, "sample2": args.sample2, "orientation": args.orientation,
              "lowdim": args.lowdim, "algorithm": args.algorithm}
    return config, results, list(e1.warnings + e2.warnings)


def cmd_density(args):
    r = make_ratios(args.p, args.n1, args.n2)
    sup = support(r)
    xs = [sup.x_l + (sup.x_r - sup.x_l) * (i + 0.5) / args.points for i in range(args.points)]
    dens = limiting_density(r, np.array(xs))
    results = {
        "y1": r.y1, "y2": r.y2, "support": {"x_l": sup.x_l, "x_r": sup.x_r},
        "grid": {"x": xs, "density": list(dens)},
        "ell": {
            "lite": {"closed_form": centering(r, variant="lite").ell, "quadrature": quadrature_centering(r, LOG_X)},
            "full": {"closed_form": centering(r, variant="full").ell,
                     "quadrature": quadrature_centering(r, FULL_LRT_KERNEL)},
        },
    }
    config = {"p": args.p, "n1": args.n1, "n2": args.n2, "points": args.points}
    return config, results, list(r.warnings)


def cmd_surface(args):
    res = sim.calibration_surface(tuple(args.y1_range), tuple(args.y2_range), args.steps, args.quantity,
                                  args.delta1, args.delta2)
    config = {"quantity": args.quantity, "y1_range": list(args.y1_range), "y2_range": list(args.y2_range),
              "steps": args.steps, "delta1": args.delta1, "delta2": args.delta2,
              "critical_band": CRITICAL_BAND}
    return config, res, ["cells violating the Dimensions Assumption or near y=1 are null"]


def cmd_log_returns(args):
    prices = read_price_csv(args.prices)
    obs = log_returns(prices)
    if args.returns_csv:
        header = ",".join(("date",) + tuple(prices.tickers))
        with open(args.returns_csv, "w") as fh:
            fh.write(header + "\n")
            for date, row in zip(prices.dates[1:], obs.observations):
                fh.write(",".join([date] + [repr(float(v)) for v in row]) + "\n")
    results = {"p": obs.p, "N": obs.N, "n": obs.N - 1, "dates": len(prices.dates),
               "tickers": list(prices.tickers), "returns_csv": args.returns_csv}
    return {"prices": args.prices, "returns_csv": args.returns_csv}, results, []


HANDLERS = {
    "test": cmd_test,
    "simulate": cmd_simulate,
    "table": cmd_table,
    "estimate-kurtosis": cmd_estimate_kurtosis,
    "density": cmd_density,
    "surface": cmd_surface,
    "log-returns": cmd_log_returns,
}


def main(argv=None, stdout=None, stderr=None):
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(str(exc), file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    if getattr(args, "threads", 1) is None:
        args.threads = _default_threads()
    t0 = time.perf_counter()
    try:
        config, results, notes = HANDLERS[args.command](args)
    except CovLRTError as exc:
        print(f"covlrt: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_NUMERICAL
    except (UsageError, CSVParseError, OSError, ValueError) as exc:
        print(f"covlrt: error: {exc}", file=stderr)
        return EXIT_USAGE
    # the worker count never changes results, so it stays out of the echoed config
    config = dict(config, format=args.format)
    timings = {"wall_seconds": time.perf_counter() - t0} if args.timings else None
    doc = ReportDocument(args.command, config, results, notes, timings)
    text = doc.render(args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK


def entry_point():
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
