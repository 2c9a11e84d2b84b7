import numpy as np
import pytest

from covlrt.exceptions import DegenerateSampleError, DimensionsAssumptionError, SingularLeaveOneOutError
from covlrt.kurtosis import OWN, POOLED, estimate_delta, estimate_delta_lowdim, estimate_pair


def literal_pooled(own, other):
    """Leave-one-out pooled estimator evaluated term by term."""
    N1, p = own.shape
    n1, n2 = N1 - 1, other.shape[0] - 1
    y = p / (n1 + n2 - 1)
    c11, c12 = (n1 - 1) / (n1 + n2 - 1), n2 / (n1 + n2 - 1)
    S2 = np.cov(other, rowvar=False).reshape(p, p)
    zbar = own.mean(axis=0)
    total = 0.0
    for j in range(N1):
        S1j = np.cov(np.delete(own, j, axis=0), rowvar=False).reshape(p, p)
        d = own[j] - zbar
        q = d @ np.linalg.inv(c11 * S1j + c12 * S2) @ d
        total += (q - p / (1 - y)) ** 2
    return (1 - y) ** 2 * total / (p * N1) - 2 / (1 - y)


def literal_lowdim(own):
    N1, p = own.shape
    y = p / (N1 - 2)
    zbar = own.mean(axis=0)
    total = 0.0
    for j in range(N1):
        S1j = np.cov(np.delete(own, j, axis=0), rowvar=False).reshape(p, p)
        d = own[j] - zbar
        total += (d @ np.linalg.solve(S1j, d) - p / (1 - y)) ** 2
    return (1 - y) ** 2 * total / (p * N1) - 2 / (1 - y)


def test_tiny_case_against_literal_formula(rng):
    own, other = rng.standard_normal((5, 2)), rng.standard_normal((6, 2))
    est = estimate_delta(own, other)
    assert est.value == pytest.approx(literal_pooled(own, other), rel=1e-10)
    assert est.method == POOLED and est.y_used == pytest.approx(2 / 8)


def test_moderate_case_against_literal_formula(rng):
    own, other = rng.standard_normal((30, 25)), rng.standard_normal((20, 25))
    assert estimate_delta(own, other, 1).value == pytest.approx(literal_pooled(own, other), rel=1e-9)
    assert estimate_delta(other, own, 2).value == pytest.approx(literal_pooled(other, own), rel=1e-9)


def test_lowdim_against_literal_formula(rng):
    own = rng.standard_normal((40, 6))
    est = estimate_delta_lowdim(own, 1)
    assert est.value == pytest.approx(literal_lowdim(own), rel=1e-10)
    assert est.method == OWN


def test_rank_one_and_direct_agree(rng):
    own, other = rng.uniform(-1, 1, (40, 30)), rng.uniform(-1, 1, (35, 30))
    a = estimate_delta(own, other, algorithm="rank-one", keep_quadratics=True)
    b = estimate_delta(own, other, algorithm="direct", keep_quadratics=True)
    np.testing.assert_allclose(a.per_observation_quadratics, b.per_observation_quadratics, rtol=1e-9)
    assert a.value == pytest.approx(b.value, rel=1e-9)
    assert estimate_delta(own, other).per_observation_quadratics is None
    with pytest.raises(ValueError):
        estimate_delta(own, other, algorithm="qr")


def test_scale_invariance(rng):
    own, other = rng.standard_normal((30, 10)), rng.standard_normal((30, 10))
    A = rng.standard_normal((10, 10)) + 3 * np.eye(10)
    assert estimate_delta(own @ A, other @ A).value == pytest.approx(estimate_delta(own, other).value, rel=1e-8)


def test_distribution_means(rng):
    gauss, unif = [], []
    for _ in range(40):
        gauss.append(estimate_delta(rng.standard_normal((201, 20)), rng.standard_normal((281, 20))).value)
        U = np.sqrt(3) * rng.uniform(-1, 1, (201, 20))
        V = np.sqrt(3) * rng.uniform(-1, 1, (281, 20))
        unif.append(estimate_delta(U, V).value)
    assert abs(np.mean(gauss)) < 0.15
    assert np.mean(unif) == pytest.approx(-1.2, abs=0.06)


def test_dimension_limits(rng):
    with pytest.raises(DimensionsAssumptionError):
        estimate_delta(rng.standard_normal((10, 17)), rng.standard_normal((10, 17)))
    with pytest.raises(DegenerateSampleError):
        estimate_delta_lowdim(rng.standard_normal((10, 8)))
    with pytest.raises(ValueError):
        estimate_delta(rng.standard_normal((10, 3)), rng.standard_normal((10, 4)))


def test_singular_leave_one_out():
    own = np.zeros((6, 2))
    own[0] = [1.0, 0.0]   # the only observation spanning the first axis
    own[1:, 1] = np.arange(1, 6)
    other = np.zeros((4, 2))
    other[:, 1] = np.arange(4)
    with pytest.raises(SingularLeaveOneOutError):
        estimate_delta(own, other)


def test_pair_selection(rng):
    X1, X2 = rng.standard_normal((50, 10)), rng.standard_normal((60, 10))
    e1, e2 = estimate_pair(X1, X2)
    assert (e1.which_sample, e2.which_sample) == (1, 2) and e1.method == POOLED
    l1, l2 = estimate_pair(X1, X2, lowdim=True)
    assert l1.method == OWN and l2.method == OWN
    h1, _ = estimate_pair(rng.standard_normal((20, 30)), rng.standard_normal((25, 30)), lowdim=True)
    assert h1.method == POOLED


def test_extreme_estimate_warns_not_clipped():
    # +-e_i designs give identical quadratic forms, so the estimate sits near its floor -2/(1-y)
    own = np.vstack([np.eye(10), -np.eye(10)])
    est = estimate_delta(own, own.copy())
    assert est.value < -2.5
    assert est.warnings and "below" in est.warnings[0]
