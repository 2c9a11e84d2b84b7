"""Moment estimators of the fourth cumulants of the two samples.

For each observation ``z_j`` of one sample the estimator evaluates the
quadratic form of the centered observation against the inverse of the
pooled covariance with ``z_j`` left out, and compares the spread of these
quadratic forms with what a Gaussian sample would produce.

Leaving ``z_j`` out of a sample changes its centered scatter matrix by a
rank-one term::

    W_(-j) = W - N/(N-1) * d_j d_j',    d_j = z_j - zbar

so with ``s_j = d_j' W^{-1} d_j`` the Sherman-Morrison identity gives
``d_j' W_(-j)^{-1} d_j = s_j / (1 - N/(N-1) s_j)``.  The default
``"rank-one"`` algorithm uses this and costs one Cholesky factorization per
call; ``"direct"`` rebuilds and solves every leave-one-out matrix.
"""

from dataclasses import dataclass

import numpy as np
from scipy import linalg as sla

from ._validation import check_observations
from .exceptions import DegenerateSampleError, DimensionsAssumptionError, SingularLeaveOneOutError
from .linalg import scatter_matrix

POOLED = "pooled-leave-one-out"
OWN = "own-leave-one-out"
ALGORITHMS = ("rank-one", "direct")

#: leave-one-out determinant ratio below this is treated as singular
LOO_SINGULAR_TOL = 1e-10
#: estimates below -2 - SOFT_FLOOR are flagged (never clipped)
SOFT_FLOOR = 0.5


@dataclass(frozen=True)
class KurtosisEstimate:
    value: float
    which_sample: int
    method: str
    y_used: float
    per_observation_quadratics: np.ndarray = None
    warnings: tuple = ()


def _quadratics(d, W, k, dof, algorithm):
    """Quadratic forms ``d_j' (W_(-j)/dof)^{-1} d_j`` for every row of ``d``."""
    N, p = d.shape
    if algorithm == "rank-one":
        try:
            L = sla.cholesky(W, lower=True)
        except np.linalg.LinAlgError as exc:
            raise SingularLeaveOneOutError(-1, f"pooled scatter matrix is not positive definite: {exc}") from exc
        u = sla.solve_triangular(L, d.T, lower=True)
        s = np.einsum("ij,ij->j", u, u)
        ratio = 1.0 - k * s
        bad = np.flatnonzero(ratio < LOO_SINGULAR_TOL)
        if bad.size:
            raise SingularLeaveOneOutError(int(bad[0]))
        return dof * s / ratio
    if algorithm == "direct":
        q = np.empty(N)
        for j in range(N):
            Wj = W - k * np.outer(d[j], d[j])
            try:
                cf = sla.cho_factor(Wj / dof)
            except np.linalg.LinAlgError as exc:
                raise SingularLeaveOneOutError(j) from exc
            q[j] = d[j] @ sla.cho_solve(cf, d[j])
        return q
    raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}")


def _finish(q, p, y, which, method, keep):
    N = q.size
    value = (1 - y) ** 2 * float(np.sum((q - p / (1 - y)) ** 2)) / (p * N) - 2 / (1 - y)
    notes = ()
    if value < -2 - SOFT_FLOOR:
        notes = (f"kurtosis estimate {value:.3f} for sample {which} is far below the bound -2",)
    return KurtosisEstimate(value, which, method, y, q if keep else None, notes)


def estimate_delta(own, other, which=1, algorithm="rank-one", keep_quadratics=False):
    """Estimate the fourth cumulant of ``own`` using the pooled leave-one-out inverse.

    Parameters
    ----------
    own, other : array-like of shape (N_own, p) and (N_other, p)
        The sample whose cumulant is estimated and the other sample.
    which : {1, 2}
        Label recorded in the result.  The pooled matrix is the same
        ``(W_own,(-j) + W_other) / (n1 + n2 - 1)`` either way.
    algorithm : {"rank-one", "direct"}
    keep_quadratics : bool
        Store the per-observation quadratic forms in the result.

    Raises
    ------
    DimensionsAssumptionError
        If ``p >= n1 + n2 - 1``.
    SingularLeaveOneOutError
        If a leave-one-out pooled matrix is numerically singular.
    """
    own = check_observations(own, "own", min_samples=3)
    other = check_observations(other, "other", min_samples=2)
    if own.shape[1] != other.shape[1]:
        raise ValueError("samples have different dimensions")
    N, p = own.shape
    n_own, n_other = N - 1, other.shape[0] - 1
    dof = n_own + n_other - 1
    if p >= dof:
        raise DimensionsAssumptionError(p, n_own, n_other, "kurtosis estimation needs p < n1+n2-1")
    d = own - own.mean(axis=0)
    W = scatter_matrix(own) + scatter_matrix(other)
    q = _quadratics(d, W, N / (N - 1), dof, algorithm)
    return _finish(q, p, p / dof, which, POOLED, keep_quadratics)


def estimate_delta_lowdim(own, which=1, algorithm="rank-one", keep_quadratics=False):
    """Estimate the fourth cumulant from one sample alone (requires ``p < n_own - 1``)."""
    own = check_observations(own, "own", min_samples=3)
    N, p = own.shape
    dof = N - 2
    if p >= dof:
        raise DegenerateSampleError(f"own-sample estimator needs p < n-1, got p={p}, n={N - 1}")
    d = own - own.mean(axis=0)
    q = _quadratics(d, scatter_matrix(own), N / (N - 1), dof, algorithm)
    return _finish(q, p, p / dof, which, OWN, keep_quadratics)


def estimate_pair(X1, X2, lowdim=False, algorithm="rank-one"):
    """Estimate both cumulants.

    With ``lowdim=True`` and ``p < min(n1, n2) - 1`` each sample uses its own
    leave-one-out covariance; otherwise the pooled estimator is used.
    """
    p = np.shape(X1)[1]
    n_min = min(np.shape(X1)[0], np.shape(X2)[0]) - 1
    if lowdim and p < n_min - 1:
        return estimate_delta_lowdim(X1, 1, algorithm), estimate_delta_lowdim(X2, 2, algorithm)
    return estimate_delta(X1, X2, 1, algorithm), estimate_delta(X2, X1, 2, algorithm)
