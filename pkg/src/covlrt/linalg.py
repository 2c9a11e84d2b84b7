"""Sample covariances and the trimmed spectrum of the Beta matrix.

The Beta matrix of two samples is ``B = W1 (W1 + W2)^{-1}`` where ``W_l`` is
the centered scatter matrix ``n_l * S_l``.  Its eigenvalues lie in [0, 1];
when ``p > n1`` (resp. ``p > n2``) exactly ``p - n1`` of them are zero (resp.
``p - n2`` are one), and the test statistics only use the remaining bulk.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import linalg as sla

from ._validation import check_observations
from .exceptions import DegenerateSampleError, DimensionsAssumptionError, SingularPooledError

#: a rank-classified structural eigenvalue this far from {0, 1} signals trouble
STRUCTURAL_TOL = 1e-6
#: relative threshold on the smallest pooled eigenvalue
SINGULAR_TOL = 1e-10


@dataclass(frozen=True)
class CovarianceMatrix:
    """Unbiased sample covariance ``matrix`` with divisor ``n = N - 1``."""

    matrix: np.ndarray
    n: int

    @property
    def p(self):
        return self.matrix.shape[0]

    @property
    def scatter(self):
        """Centered cross-product matrix ``n * S``."""
        return self.n * self.matrix


@dataclass(frozen=True)
class TrimmedSpectrum:
    """Eigenvalues of the Beta matrix split into structural zeros, ones and bulk.

    ``raw`` holds all ``p`` eigenvalues (ascending, clamped to [0, 1]) and
    ``bulk`` the ``p - zero_count - one_count`` middle ones.
    """

    bulk: np.ndarray
    zero_count: int
    one_count: int
    p: int
    n1: int
    n2: int
    raw: np.ndarray = field(repr=False)
    clamp_magnitude: float = 0.0
    warnings: tuple = ()


def scatter_matrix(X):
    """Return ``sum_i (x_i - xbar)(x_i - xbar)'`` for rows ``x_i`` of ``X``."""
    Xc = X - X.mean(axis=0)
    W = Xc.T @ Xc
    return (W + W.T) / 2


def sample_covariance(X):
    """Unbiased sample covariance of the rows of ``X`` (shape ``(N, p)``).

    Raises
    ------
    DegenerateSampleError
        If fewer than two observations are supplied.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 2:
        raise DegenerateSampleError("sample covariance needs N >= 2 observations (divisor N-1)")
    X = check_observations(X)
    n = X.shape[0] - 1
    return CovarianceMatrix(scatter_matrix(X) / n, n)


def _pooled_reduction(W1, P):
    # Cholesky P = R'R, then R^{-T} W1 R^{-1} shares the generalized eigenvalues
    R = sla.cholesky(P, lower=False)
    M = sla.solve_triangular(R, W1, trans="T")
    C = sla.solve_triangular(R, M.T, trans="T").T
    return (C + C.T) / 2


def beta_spectrum_from_scatter(W1, W2, n1, n2):
    """Trimmed Beta-matrix spectrum from the two scatter matrices.

    Solves ``W1 v = lambda (W1 + W2) v`` by reducing with the Cholesky factor
    of the pooled matrix; the pooled matrix is positive definite under the
    Dimensions Assumption while ``W1`` alone may be singular.
    """
    p = W1.shape[0]
    if p >= n1 + n2:
        raise DimensionsAssumptionError(p, n1, n2)
    P = W1 + W2
    pooled_eigs = np.linalg.eigvalsh(P)
    if pooled_eigs[0] < SINGULAR_TOL * max(pooled_eigs[-1], np.finfo(float).tiny):
        raise SingularPooledError(p, n1, n2, "pooled matrix n1*S1 + n2*S2 is numerically singular")
    try:
        raw = np.linalg.eigvalsh(_pooled_reduction(W1, P))
    except np.linalg.LinAlgError as exc:
        raise SingularPooledError(p, n1, n2, f"Cholesky of pooled matrix failed: {exc}") from exc

    clipped = np.clip(raw, 0.0, 1.0)
    clamp = float(np.max(np.abs(raw - clipped))) if p else 0.0
    zero_count = max(0, p - n1)
    one_count = max(0, p - n2)

    notes = []
    if zero_count and clipped[zero_count - 1] > STRUCTURAL_TOL:
        notes.append(f"structural zero eigenvalue {clipped[zero_count - 1]:.3e} exceeds {STRUCTURAL_TOL:g}")
    if one_count and clipped[p - one_count] < 1 - STRUCTURAL_TOL:
        notes.append(f"structural one eigenvalue {clipped[p - one_count]:.12g} below 1-{STRUCTURAL_TOL:g}")
    if clamp > STRUCTURAL_TOL:
        notes.append(f"eigenvalues clamped into [0, 1] by up to {clamp:.3e}")

    bulk = clipped[zero_count:p - one_count].copy()
    bulk.setflags(write=False)
    clipped.setflags(write=False)
    return TrimmedSpectrum(bulk, zero_count, one_count, p, n1, n2, clipped, clamp, tuple(notes))


def beta_spectrum(S1, S2, n1=None, n2=None):
    """Trimmed spectrum of ``n1 S1 (n1 S1 + n2 S2)^{-1}``.

    Parameters
    ----------
    S1, S2 : CovarianceMatrix or ndarray of shape (p, p)
        Sample covariance matrices.  Divisors default to the ones carried by
        :class:`CovarianceMatrix` inputs.
    n1, n2 : int, optional
        Degrees of freedom (``N_l - 1``); required for plain arrays.

    Returns
    -------
    TrimmedSpectrum
        Trimming is rank based: the ``max(0, p - n1)`` smallest eigenvalues are
        the structural zeros and the ``max(0, p - n2)`` largest the structural
        ones, whatever their computed values.

    Raises
    ------
    DimensionsAssumptionError
        If ``p >= n1 + n2``.
    SingularPooledError
        If the pooled matrix is numerically singular.
    """
    if isinstance(S1, CovarianceMatrix):
        n1 = S1.n if n1 is None else n1
        S1 = S1.matrix
    if isinstance(S2, CovarianceMatrix):
        n2 = S2.n if n2 is None else n2
        S2 = S2.matrix
    if n1 is None or n2 is None:
        raise TypeError("n1 and n2 are required when plain arrays are passed")
    S1 = np.asarray(S1, dtype=np.float64)
    S2 = np.asarray(S2, dtype=np.float64)
    if S1.shape != S2.shape or S1.ndim != 2 or S1.shape[0] != S1.shape[1]:
        raise ValueError(f"incompatible covariance shapes {S1.shape} and {S2.shape}")
    return beta_spectrum_from_scatter(n1 * S1, n2 * S2, int(n1), int(n2))


def sample_beta_spectrum(X1, X2):
    """Trimmed Beta-matrix spectrum computed directly from two samples."""
    X1 = check_observations(X1, "X1")
    X2 = check_observations(X2, "X2")
    if X1.shape[1] != X2.shape[1]:
        raise ValueError("samples have different dimensions")
    return beta_spectrum_from_scatter(scatter_matrix(X1), scatter_matrix(X2),
                                      X1.shape[0] - 1, X2.shape[0] - 1)
