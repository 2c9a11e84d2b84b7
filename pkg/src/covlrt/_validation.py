"""Input validation helpers shared by the functional API and the estimators."""

import numpy as np
from sklearn.utils.validation import check_array

from .exceptions import DegenerateSampleError


def check_observations(X, name="X", min_samples=2):
    """Validate one sample as a finite float array of shape (n_samples, n_features).

    Rows are observations and columns are variables, following the
    scikit-learn convention.
    """
    X = check_array(X, dtype=np.float64, ensure_2d=True, ensure_all_finite=True,
                    ensure_min_samples=1, input_name=name)
    if X.shape[0] < min_samples:
        raise DegenerateSampleError(
            f"{name} has {X.shape[0]} observation(s); at least {min_samples} required"
        )
    return X


def check_pair(X1, X2, min_samples=2):
    X1 = check_observations(X1, "X1", min_samples)
    X2 = check_observations(X2, "X2", min_samples)
    if X1.shape[1] != X2.shape[1]:
        raise ValueError(
            f"samples have different dimensions: {X1.shape[1]} vs {X2.shape[1]} variables"
        )
    return X1, X2
