"""Centering constants for the trimmed likelihood-ratio statistics.

All quantities are expressed in the design ratios ``y1 = p/n1`` and
``y2 = p/n2``.  Powers are evaluated as products of logarithms so that
extreme ratios do not overflow.  The scalar helpers :func:`scalar_l`,
:func:`scalar_u`, :func:`scalar_v` and :func:`psi` take their two
arguments positionally and re-derive ``c1 = b/(a+b)``, ``c2 = a/(a+b)``
and ``h = sqrt(a+b-ab)`` from them, so swapping the arguments yields the
mirrored quantity for the other sample.
"""

import math
from dataclasses import dataclass, field

from scipy.special import xlogy

from .exceptions import CalibrationError, CovLRTError, DimensionsAssumptionError

#: |y - 1| below this triggers a near-critical warning
CRITICAL_BAND = 0.02

FULL = "full"
LITE = "lite"
VARIANTS = (FULL, LITE)


class DomainError(CovLRTError, ValueError):
    """Scalar function evaluated where ``a + b - ab <= 0``."""


@dataclass(frozen=True)
class DesignRatios:
    """Dimension ``p`` and degrees of freedom ``n1 = N1-1``, ``n2 = N2-1``."""

    p: int
    n1: int
    n2: int
    warnings: tuple = field(default=(), compare=False)

    @property
    def y1(self):
        return self.p / self.n1

    @property
    def y2(self):
        return self.p / self.n2

    @property
    def h2(self):
        y1, y2 = self.y1, self.y2
        return y1 + y2 - y1 * y2

    @property
    def h(self):
        return math.sqrt(self.h2)

    @property
    def c1(self):
        return self.n1 / (self.n1 + self.n2)

    @property
    def c2(self):
        return self.n2 / (self.n1 + self.n2)

    @property
    def alpha(self):
        return self.n2 / self.n1

    def swapped(self):
        return DesignRatios(self.p, self.n2, self.n1, self.warnings)


@dataclass(frozen=True)
class KurtosisPair:
    """Fourth cumulants ``E x^4 - 3`` of the standardized entries of each sample."""

    delta1: float = 0.0
    delta2: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.delta1) and math.isfinite(self.delta2)):
            raise ValueError("kurtosis values must be finite")

    def swapped(self):
        return KurtosisPair(self.delta2, self.delta1)


GAUSSIAN = KurtosisPair(0.0, 0.0)


@dataclass(frozen=True)
class CenteringParams:
    """Per-eigenvalue limit ``ell``, mean correction ``mu`` and variance ``nu2``.

    ``(statistic - p*ell - mu) / sqrt(nu2)`` is asymptotically standard normal
    under the null hypothesis.
    """

    ell: float
    mu: float
    nu2: float
    variant: str


def make_ratios(p, n1, n2):
    """Build :class:`DesignRatios`, checking the Dimensions Assumption.

    Raises
    ------
    DimensionsAssumptionError
        If ``p >= n1 + n2``.
    """
    p, n1, n2 = int(p), int(n1), int(n2)
    if p < 1 or n1 < 1 or n2 < 1:
        raise ValueError(f"p, n1, n2 must be positive, got {(p, n1, n2)}")
    if p >= n1 + n2:
        raise DimensionsAssumptionError(p, n1, n2)
    notes = []
    for name, y in (("y1", p / n1), ("y2", p / n2)):
        if abs(y - 1) < CRITICAL_BAND:
            notes.append(f"near-critical design: {name}={y:.4f} within {CRITICAL_BAND} of 1, "
                         "the statistic is unstable")
    return DesignRatios(p, n1, n2, tuple(notes))


def _constants(a, b):
    h2 = a + b - a * b
    if not (a > 0 and b > 0) or h2 <= 0:
        raise DomainError(f"need a, b > 0 and a+b-ab > 0, got a={a}, b={b}")
    return b / (a + b), a / (a + b), h2


def scalar_l(a, b):
    c1, _, h2 = _constants(a, b)
    if a <= 1:
        return 0.0
    log_h = 0.5 * math.log(h2)
    return (2 * c1 * h2 / (a * b)) * log_h - c1 * (1 + b) / b * math.log(a) - c1 * (1 - a) / a * math.log(b)


def scalar_u(a, b):
    c1, _, h2 = _constants(a, b)
    if a <= 1:
        return 0.0
    return c1 * (math.log(a) - 0.5 * math.log(h2))


def scalar_v(a, b):
    c1, c2, h2 = _constants(a, b)
    if a <= 1:
        return 0.0
    return 2 * c1 * math.log(a) - c1 * (c1 + 2 * c2) * math.log(h2)


def psi(a, b):
    """Fourth-moment coefficient of the full statistic's mean correction.

    For ``a, b < 1`` this reduces to ``-a**3 * b**3``.
    """
    c1, c2, h2 = _constants(a, b)
    first = b ** 4 if b < 1 else (h2 * (2 * b * b - h2) if b > 1 else 0.0)
    second = a ** 3 * (a + 2 * b) if a < 1 else (h2 * (a + b + a * b) if a > 1 else 0.0)
    return c2 * a * a * first - c1 * b * b * second


def _abs_log_term(y):
    # |1-y| * log|1-y|, zero at y == 1
    return float(xlogy(abs(1 - y), abs(1 - y)))


def _log_abs1m(y):
    d = abs(1 - y)
    return math.log(d) if d > 0 else -math.inf


def _finish(ell, mu, nu2, variant):
    if not all(math.isfinite(v) for v in (ell, mu, nu2)):
        raise CalibrationError(f"non-finite centering ({ell}, {mu}, {nu2}); design is critical")
    if nu2 <= 0:
        raise CalibrationError(f"variance {nu2} is not positive; design too close to critical")
    return CenteringParams(ell, mu, nu2, variant)


def centering_full(r, k=GAUSSIAN):
    """Centering triple for the full trimmed LRT (both log-kernels weighted by c1, c2)."""
    y1, y2, h2, c1, c2 = r.y1, r.y2, r.h2, r.c1, r.c2
    s = y1 + y2
    log_h = 0.5 * math.log(h2)
    big1, big2 = y1 > 1, y2 > 1

    ell = (c2 * math.log(y1) + c1 * math.log(y2) + (2 * h2 / (y1 * y2)) * log_h
           - (s / (y1 * y2)) * math.log(s)
           - c1 / y1 * _abs_log_term(y1) - c2 / y2 * _abs_log_term(y2)
           - scalar_l(y1, y2) - scalar_l(y2, y1))

    mu = (0.5 * math.log(s) + 0.5 * c1 * _log_abs1m(y1) + 0.5 * c2 * _log_abs1m(y2) - log_h
          - scalar_u(y1, y2) - scalar_u(y2, y1)
          + k.delta1 * psi(y1, y2) / (2 * y1 * y2 * y2 * s * s)
          + k.delta2 * psi(y2, y1) / (2 * y2 * y1 * y1 * s * s))

    both = 4 * c1 * c2 * log_h if (big1 and big2) else 0.0
    spread = ((y1 - 1) * y2 * y2 if big1 else 0.0) - ((y2 - 1) * y1 * y1 if big2 else 0.0)
    nu2 = (4 * log_h - 2 * c1 * c1 * _log_abs1m(y1) - 2 * c2 * c2 * _log_abs1m(y2) - 2 * math.log(s)
           + 2 * (scalar_v(y1, y2) + scalar_v(y2, y1) + both)
           + (y1 * k.delta1 + y2 * k.delta2) / (y1 * y1 * y2 * y2 * s * s) * spread * spread)
    return _finish(ell, mu, nu2, FULL)


def centering_lite(r, k=GAUSSIAN):
    """Centering triple for the lite statistic (sum of log bulk eigenvalues)."""
    y1, y2, h2 = r.y1, r.y2, r.h2
    s = y1 + y2
    log_h = 0.5 * math.log(h2)
    big1 = y1 > 1
    small1 = y1 < 1

    ell = (math.log(y2) + (2 * h2 / (y1 * y2)) * log_h - (s / (y1 * y2)) * math.log(s)
           - _abs_log_term(y1) / y1)
    if big1:
        ell -= (2 * h2 / (y1 * y2)) * log_h - (1 + y2) / y2 * math.log(y1) - (1 - y1) / y1 * math.log(y2)

    m1 = y1 ** 3 * (y1 + 2 * y2) if small1 else (h2 * s + h2 * y1 * y2 if big1 else 0.0)
    m2 = y1 ** 4 * y2 if small1 else (h2 * y2 * (2 * y1 * y1 - h2) if big1 else 0.0)
    mu = (0.5 * math.log(s) + 0.5 * _log_abs1m(y1) - log_h
          - ((math.log(y1) - log_h) if big1 else 0.0)
          - k.delta1 * m1 / (2 * y1 * s * s)
          + k.delta2 * m2 / (2 * y1 * y1 * s * s))

    v = y1 ** 4 if small1 else (h2 * h2 if big1 else 0.0)
    nu2 = (2 * (2 * log_h - _log_abs1m(y1) - math.log(s))
           + (2 * (2 * math.log(y1) - 2 * log_h) if big1 else 0.0)
           + (y1 * k.delta1 + y2 * k.delta2) / (y1 * y1 * s * s) * v)
    return _finish(ell, mu, nu2, LITE)


def centering(r, k=GAUSSIAN, variant=FULL):
    if variant == FULL:
        return centering_full(r, k)
    if variant == LITE:
        return centering_lite(r, k)
    raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
