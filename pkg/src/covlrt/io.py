"""CSV ingestion, log returns and report serialization.

Library functions take observations in rows, ``(N, p)``.  Files on disk may
hold either layout; :func:`ingest_csv` requires the orientation to be stated
and returns an :class:`ObservationMatrix` whose ``data`` is ``p x N``.
"""

import csv
import io as _io
import json
import math
from dataclasses import dataclass

import numpy as np

SCHEMA_VERSION = "1.0"
VARIABLES_IN_ROWS = "variables-in-rows"
VARIABLES_IN_COLUMNS = "variables-in-columns"
ORIENTATIONS = (VARIABLES_IN_ROWS, VARIABLES_IN_COLUMNS)


class CSVParseError(ValueError):
    """Malformed CSV input; ``line`` is 1-based."""

    def __init__(self, path, line, msg):
        self.path, self.line = path, line
        where = f"{path}: " if path else ""
        super().__init__(f"{where}line {line}: {msg}" if line else f"{where}{msg}")


@dataclass(frozen=True)
class ObservationMatrix:
    """``data`` has variables in rows and observations in columns."""

    data: np.ndarray
    labels: tuple = None

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError("observation matrix must be two-dimensional")
        if not np.all(np.isfinite(arr)):
            raise ValueError("observation matrix contains non-finite entries")
        object.__setattr__(self, "data", arr)

    @property
    def p(self):
        return self.data.shape[0]

    @property
    def N(self):
        return self.data.shape[1]

    @property
    def observations(self):
        """Row-per-observation view ``(N, p)`` expected by the library."""
        return self.data.T


def _is_number(cell):
    try:
        float(cell)
    except ValueError:
        return False
    return True


def read_numeric_csv(path=None, text=None, header="auto"):
    """Parse a rectangular numeric CSV into a 2-D array and optional header.

    ``header="auto"`` treats the first row as a header when any of its cells
    is non-numeric.  Blank lines are skipped.  Errors name the offending line.
    """
    if text is None:
        with open(path, newline="") as fh:
            text = fh.read()
    rows = []
    for lineno, row in enumerate(csv.reader(_io.StringIO(text)), start=1):
        if not row or all(not c.strip() for c in row):
            continue
        rows.append((lineno, [c.strip() for c in row]))
    if not rows:
        raise CSVParseError(path, 0, "empty file")
    names = None
    first_line, first = rows[0]
    if header is True or (header == "auto" and not all(_is_number(c) for c in first)):
        names = tuple(first)
        rows = rows[1:]
        if not rows:
            raise CSVParseError(path, first_line, "header row but no data")
    width = len(names) if names is not None else len(rows[0][1])
    out = np.empty((len(rows), width))
    for i, (lineno, cells) in enumerate(rows):
        if len(cells) != width:
            raise CSVParseError(path, lineno, f"ragged row: expected {width} cells, found {len(cells)}")
        for j, cell in enumerate(cells):
            try:
                value = float(cell)
            except ValueError:
                raise CSVParseError(path, lineno, f"non-numeric cell {cell!r} in column {j + 1}") from None
            if not math.isfinite(value):
                raise CSVParseError(path, lineno, f"non-finite cell {cell!r} in column {j + 1}")
            out[i, j] = value
    return out, names


def ingest_csv(path, orientation, header="auto", text=None):
    """Read a dataset; orientation is one of ``variables-in-rows``, ``variables-in-columns``."""
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}")
    arr, names = read_numeric_csv(path, text, header)
    data = arr if orientation == VARIABLES_IN_ROWS else arr.T
    return ObservationMatrix(data, names)


# prices and returns --------------------------------------------------------------------------

@dataclass(frozen=True)
class PriceSeriesTable:
    dates: tuple
    tickers: tuple
    prices: np.ndarray

    def __post_init__(self):
        prices = np.asarray(self.prices, dtype=np.float64)
        if prices.shape != (len(self.dates), len(self.tickers)):
            raise ValueError("prices must have shape (dates, tickers)")
        if list(self.dates) != sorted(self.dates) or len(set(self.dates)) != len(self.dates):
            raise ValueError("dates must be strictly increasing")
        object.__setattr__(self, "prices", prices)


def read_price_csv(path=None, text=None):
    """Prices file: header ``date,TICKER1,...``, one row per date."""
    if text is None:
        with open(path, newline="") as fh:
            text = fh.read()
    rows = [(i, [c.strip() for c in r]) for i, r in enumerate(csv.reader(_io.StringIO(text)), 1)
            if r and any(c.strip() for c in r)]
    if len(rows) < 2:
        raise CSVParseError(path, 0, "price file needs a header and at least one row")
    tickers = tuple(rows[0][1][1:])
    dates, values = [], []
    for lineno, cells in rows[1:]:
        if len(cells) != len(tickers) + 1:
            raise CSVParseError(path, lineno, f"ragged row: expected {len(tickers) + 1} cells, found {len(cells)}")
        try:
            values.append([float(c) for c in cells[1:]])
        except ValueError:
            raise CSVParseError(path, lineno, "non-numeric price") from None
        dates.append(cells[0])
    return PriceSeriesTable(tuple(dates), tickers, np.array(values))


def log_returns(prices):
    """Log differences ``log(P_t / P_{t-1})`` as an ``ObservationMatrix`` (tickers x dates-1)."""
    P = prices.prices
    if P.shape[0] < 2:
        raise ValueError("need at least two dates")
    bad = np.argwhere(~(P > 0))
    if bad.size:
        t, i = bad[0]
        raise ValueError(f"nonpositive price {P[t, i]!r} at date {prices.dates[t]!r}, ticker {prices.tickers[i]!r}")
    R = np.diff(np.log(P), axis=0)
    return ObservationMatrix(R.T, tuple(prices.tickers))


# reports ---------------------------------------------------------------------------------------

def _clean(obj):
    """Make ``obj`` JSON-ready: numpy scalars to Python, non-finite floats to None."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    return obj


@dataclass
class ReportDocument:
    command: str
    config: dict
    results: object
    warnings: list
    timings: dict = None
    schema_version: str = SCHEMA_VERSION

    def to_dict(self):
        return _clean({
            "schema_version": self.schema_version,
            "command": self.command,
            "config": self.config,
            "results": self.results,
            "warnings": list(self.warnings),
            "timings": self.timings,
        })

    def to_json(self):
        # float repr is the shortest string that round-trips, i.e. <= 17 significant digits
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self):
        """Flat ``key,value`` grid of every leaf, keys as dotted paths."""
        buf = _io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["key", "value"])
        for key, value in flatten(self.to_dict()):
            writer.writerow([key, format_value(value)])
        return buf.getvalue()

    def render(self, fmt="json"):
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        raise ValueError("format must be 'json' or 'csv'")


def flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from flatten(obj[k], f"{prefix}.{k}" if prefix else k)
    elif isinstance(obj, list):
        if not obj:
            yield prefix, ""
        for i, v in enumerate(obj):
            yield from flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, obj


def format_value(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def load_report(text):
    return json.loads(text)
