"""Trimmed likelihood-ratio statistics, standardization and p-values."""

import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_pair
from .calibration import FULL, GAUSSIAN, LITE, VARIANTS, KurtosisPair, centering, make_ratios
from .exceptions import SpectrumIntegrityError
from .kurtosis import estimate_pair
from .linalg import beta_spectrum_from_scatter, scatter_matrix

TWO_SIDED = "two"
LOWER = "lower"
SIDES = (TWO_SIDED, LOWER)

KNOWN = "known"
ESTIMATED = "estimated"
GAUSSIAN_ASSUMED = "gaussian-assumed"


@dataclass(frozen=True)
class TestResult:
    """Outcome of one modified LRT.

    ``standardized = (raw_statistic - p*centering.ell - centering.mu) / sqrt(centering.nu2)``.
    """

    __test__ = False  # not a pytest class

    variant: str
    raw_statistic: float
    standardized: float
    p_value: float
    centering: object
    kurtosis_source: str
    kurtosis: KurtosisPair
    sided: str
    p: int
    n1: int
    n2: int
    warnings: tuple = ()

    def to_dict(self):
        return {
            "variant": self.variant,
            "raw_statistic": self.raw_statistic,
            "standardized": self.standardized,
            "p_value": self.p_value,
            "centering": {"ell": self.centering.ell, "mu": self.centering.mu, "nu2": self.centering.nu2},
            "kurtosis_source": self.kurtosis_source,
            "kurtosis": {"delta1": self.kurtosis.delta1, "delta2": self.kurtosis.delta2},
            "sided": self.sided,
            "p": self.p,
            "n1": self.n1,
            "n2": self.n2,
            "warnings": list(self.warnings),
        }


def norm_cdf(x):
    """Standard normal CDF via the complementary error function."""
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def p_value(z, sided=TWO_SIDED):
    if sided == TWO_SIDED:
        return math.erfc(abs(z) / math.sqrt(2.0))
    if sided == LOWER:
        return norm_cdf(z)
    raise ValueError(f"unknown sidedness {sided!r}; expected one of {SIDES}")


def _check_bulk(spec):
    bulk = spec.bulk
    if bulk.size == 0:
        raise SpectrumIntegrityError("empty bulk spectrum")
    if not (np.all(bulk > 0.0) and np.all(bulk < 1.0)):
        raise SpectrumIntegrityError("bulk eigenvalue outside the open interval (0, 1)")
    return bulk


def lrt_statistic(spec, r=None):
    """Sum of ``c1 log(lambda) + c2 log(1 - lambda)`` over the bulk eigenvalues."""
    bulk = _check_bulk(spec)
    n1, n2 = (spec.n1, spec.n2) if r is None else (r.n1, r.n2)
    c1 = n1 / (n1 + n2)
    c2 = n2 / (n1 + n2)
    return float(c1 * np.sum(np.log(bulk)) + c2 * np.sum(np.log1p(-bulk)))


def lite_statistic(spec):
    """Sum of ``log(lambda)`` over the bulk eigenvalues."""
    return float(np.sum(np.log(_check_bulk(spec))))


def raw_statistic(spec, variant=FULL):
    if variant == FULL:
        return lrt_statistic(spec)
    if variant == LITE:
        return lite_statistic(spec)
    raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


def standardize(raw, p, params):
    return (raw - p * params.ell - params.mu) / math.sqrt(params.nu2)


def evaluate_spectrum(spec, ratios, kurtosis=GAUSSIAN, variant=FULL, sided=TWO_SIDED,
                      kurtosis_source=GAUSSIAN_ASSUMED, extra_warnings=()):
    """Standardize the chosen statistic of an already computed spectrum."""
    params = centering(ratios, kurtosis, variant)
    raw = raw_statistic(spec, variant)
    z = standardize(raw, ratios.p, params)
    notes = tuple(ratios.warnings) + tuple(spec.warnings) + tuple(extra_warnings)
    return TestResult(variant, raw, z, p_value(z, sided), params, kurtosis_source, kurtosis,
                      sided, ratios.p, ratios.n1, ratios.n2, notes)


def _resolve_kurtosis(X1, X2, kurtosis, lowdim):
    if kurtosis is None or kurtosis == "gaussian":
        return GAUSSIAN, GAUSSIAN_ASSUMED, ()
    if isinstance(kurtosis, str) and kurtosis in ("estimate", "estimated"):
        e1, e2 = estimate_pair(X1, X2, lowdim=lowdim)
        return KurtosisPair(e1.value, e2.value), ESTIMATED, e1.warnings + e2.warnings
    if isinstance(kurtosis, KurtosisPair):
        pair = kurtosis
    else:
        d1, d2 = kurtosis
        pair = KurtosisPair(float(d1), float(d2))
    if pair.delta1 < -2 or pair.delta2 < -2:
        raise ValueError("a fourth cumulant E x^4 - 3 cannot be below -2")
    return pair, KNOWN, ()


def run_test(X1, X2, variant=FULL, kurtosis="gaussian", sided=TWO_SIDED, lowdim=False):
    """Test equality of the covariance matrices of two samples.

    Parameters
    ----------
    X1, X2 : array-like of shape (N1, p) and (N2, p)
        Observations in rows.
    variant : {"full", "lite"}
        ``"full"`` weights ``log(lambda)`` and ``log(1-lambda)`` by ``c1, c2``;
        ``"lite"`` sums ``log(lambda)`` only.
    kurtosis : "gaussian", "estimate", KurtosisPair or (delta1, delta2)
        Source of the fourth cumulants entering the centering.
    sided : {"two", "lower"}
    lowdim : bool
        With ``kurtosis="estimate"``, prefer the own-sample estimator when
        ``p < min(n1, n2) - 1``.

    Returns
    -------
    TestResult
    """
    if sided not in SIDES:
        raise ValueError(f"unknown sidedness {sided!r}; expected one of {SIDES}")
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    X1, X2 = check_pair(X1, X2)
    n1, n2 = X1.shape[0] - 1, X2.shape[0] - 1
    ratios = make_ratios(X1.shape[1], n1, n2)
    spec = beta_spectrum_from_scatter(scatter_matrix(X1), scatter_matrix(X2), n1, n2)
    pair, source, notes = _resolve_kurtosis(X1, X2, kurtosis, lowdim)
    return evaluate_spectrum(spec, ratios, pair, variant, sided, source, notes)
