"""scikit-learn style wrappers.

Each test is an estimator whose ``fit(X1, X2)`` takes two samples with
observations in rows and stores the outcome in trailing-underscore
attributes.  Hyperparameters follow the usual conventions, so
``get_params``, ``set_params`` and ``sklearn.base.clone`` work.
"""

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import check_pair
from .comparators import clx_test, li_chen_test
from .kurtosis import estimate_pair
from .statistics import TWO_SIDED, run_test


class _TwoSampleTest(BaseEstimator):
    def _store(self, statistic, pvalue, X1):
        self.statistic_ = statistic
        self.pvalue_ = pvalue
        self.n_features_in_ = X1.shape[1]
        return self

    def reject(self, level=0.05):
        """Whether the fitted test rejects equality at ``level``."""
        check_is_fitted(self, "pvalue_")
        return bool(self.pvalue_ < level)


class ModifiedLRT(_TwoSampleTest):
    """Trimmed likelihood-ratio test of ``Sigma1 = Sigma2``.

    Parameters
    ----------
    variant : {"full", "lite"}, default="full"
    kurtosis : "gaussian", "estimate" or (delta1, delta2), default="gaussian"
    sided : {"two", "lower"}, default="two"
    lowdim : bool, default=False

    Attributes
    ----------
    statistic_ : float
        Raw trimmed statistic.
    standardized_ : float
        Centered and scaled statistic, asymptotically N(0, 1) under the null.
    pvalue_ : float
    centering_ : CenteringParams
    result_ : TestResult

    Examples
    --------
    >>> import numpy as np
    >>> rng = np.random.default_rng(0)
    >>> est = ModifiedLRT().fit(rng.standard_normal((60, 30)), rng.standard_normal((80, 30)))
    >>> 0.0 <= est.pvalue_ <= 1.0
    True
    """

    def __init__(self, variant="full", kurtosis="gaussian", sided=TWO_SIDED, lowdim=False):
        self.variant = variant
        self.kurtosis = kurtosis
        self.sided = sided
        self.lowdim = lowdim

    def fit(self, X1, X2):
        X1, X2 = check_pair(X1, X2)
        res = run_test(X1, X2, self.variant, self.kurtosis, self.sided, self.lowdim)
        self.result_ = res
        self.standardized_ = res.standardized
        self.centering_ = res.centering
        return self._store(res.raw_statistic, res.p_value, X1)


class LiChenTest(_TwoSampleTest):
    """U-statistic test of ``||Sigma1 - Sigma2||_F = 0`` (upper tail)."""

    def fit(self, X1, X2):
        X1, X2 = check_pair(X1, X2, min_samples=4)
        self.result_ = li_chen_test(X1, X2)
        return self._store(self.result_.statistic, self.result_.p_value, X1)


class CLXTest(_TwoSampleTest):
    """Maximum standardized entrywise difference test."""

    def fit(self, X1, X2):
        X1, X2 = check_pair(X1, X2)
        self.result_ = clx_test(X1, X2)
        return self._store(self.result_.statistic, self.result_.p_value, X1)


class KurtosisEstimator(BaseEstimator):
    """Fourth-cumulant estimates ``delta1_``, ``delta2_`` of two samples.

    Parameters
    ----------
    lowdim : bool, default=False
        Use each sample's own leave-one-out covariance when ``p < min(n1, n2) - 1``.
    algorithm : {"rank-one", "direct"}, default="rank-one"
    """

    def __init__(self, lowdim=False, algorithm="rank-one"):
        self.lowdim = lowdim
        self.algorithm = algorithm

    def fit(self, X1, X2):
        X1, X2 = check_pair(X1, X2, min_samples=3)
        e1, e2 = estimate_pair(X1, X2, self.lowdim, self.algorithm)
        self.delta1_, self.delta2_ = e1.value, e2.value
        self.estimates_ = (e1, e2)
        self.n_features_in_ = X1.shape[1]
        return self
