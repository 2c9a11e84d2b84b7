import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from covlrt.estimators import CLXTest, KurtosisEstimator, LiChenTest, ModifiedLRT
from covlrt.statistics import run_test


def test_params_and_clone():
    est = ModifiedLRT(variant="lite", kurtosis=(-1.2, -1.2), sided="lower")
    assert est.get_params() == {"variant": "lite", "kurtosis": (-1.2, -1.2), "sided": "lower", "lowdim": False}
    twin = clone(est)
    assert twin.get_params() == est.get_params()
    est.set_params(variant="full")
    assert est.variant == "full"


def test_modified_lrt_matches_function(rng):
    X1, X2 = rng.standard_normal((40, 20)), rng.standard_normal((50, 20))
    est = ModifiedLRT(variant="lite").fit(X1, X2)
    res = run_test(X1, X2, variant="lite")
    assert est.statistic_ == res.raw_statistic and est.pvalue_ == res.p_value
    assert est.standardized_ == res.standardized and est.centering_ == res.centering
    assert est.n_features_in_ == 20
    assert est.reject(level=1.0) is True


def test_unfitted():
    with pytest.raises(NotFittedError):
        ModifiedLRT().reject()


def test_comparator_and_kurtosis_estimators(rng):
    X1, X2 = rng.standard_normal((40, 20)), rng.standard_normal((50, 20))
    assert 0 <= LiChenTest().fit(X1, X2).pvalue_ <= 1
    assert 0 <= CLXTest().fit(X1, X2).pvalue_ <= 1
    k = KurtosisEstimator(lowdim=True).fit(X1, X2)
    assert np.isfinite(k.delta1_) and k.estimates_[0].method == "own-leave-one-out"


def test_input_validation(rng):
    with pytest.raises(ValueError):
        ModifiedLRT().fit(rng.standard_normal((10, 3)), np.full((10, 3), np.nan))
    with pytest.raises(ValueError):
        ModifiedLRT().fit(rng.standard_normal((10, 3)), rng.standard_normal((10, 2)))
    with pytest.raises(ValueError):
        LiChenTest().fit(rng.standard_normal((3, 3)), rng.standard_normal((10, 3)))
