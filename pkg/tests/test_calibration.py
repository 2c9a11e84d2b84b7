import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from covlrt.calibration import (
    GAUSSIAN,
    DesignRatios,
    DomainError,
    KurtosisPair,
    centering,
    centering_full,
    centering_lite,
    make_ratios,
    psi,
    scalar_l,
    scalar_u,
    scalar_v,
)
from covlrt.exceptions import CalibrationError, DimensionsAssumptionError

mp.mp.dps = 40


# Independent high-precision transcriptions, written in product form -------------------------

def mp_parts(a, b):
    a, b = mp.mpf(a), mp.mpf(b)
    return a, b, a + b - a * b, b / (a + b), a / (a + b)


def mp_l(a, b):
    a, b, h2, c1, _ = mp_parts(a, b)
    if a <= 1:
        return mp.mpf(0)
    h = mp.sqrt(h2)
    return mp.log(h ** (2 * c1 * h2 / (a * b))) - mp.log(a ** (c1 * (1 + b) / b) * b ** (c1 * (1 - a) / a))


def mp_u(a, b):
    a, b, h2, c1, _ = mp_parts(a, b)
    return mp.log(a ** c1 / mp.sqrt(h2) ** c1) if a > 1 else mp.mpf(0)


def mp_v(a, b):
    a, b, h2, c1, c2 = mp_parts(a, b)
    return mp.log(a ** (2 * c1) / mp.sqrt(h2) ** (2 * c1 * (c1 + 2 * c2))) if a > 1 else mp.mpf(0)


def mp_psi(a, b):
    a, b, h2, c1, c2 = mp_parts(a, b)
    first = b ** 4 if b < 1 else h2 * (2 * b ** 2 - h2)
    second = a ** 3 * (a + 2 * b) if a < 1 else h2 * (a + b + a * b)
    return c2 * a ** 2 * first - c1 * b ** 2 * second


def gaussian_full_oracle(y1, y2):
    """Gaussian centering of the full statistic, straight from the product-form expressions."""
    y1, y2 = mp.mpf(y1), mp.mpf(y2)
    h2 = y1 + y2 - y1 * y2
    h = mp.sqrt(h2)
    c1, c2 = y2 / (y1 + y2), y1 / (y1 + y2)
    d1, d2 = abs(1 - y1), abs(1 - y2)
    ell = mp.log(y1 ** c2 * y2 ** c1 * h ** (2 * h2 / (y1 * y2))
                 / ((y1 + y2) ** ((y1 + y2) / (y1 * y2)) * d1 ** (c1 * d1 / y1) * d2 ** (c2 * d2 / y2))) \
        - mp_l(y1, y2) - mp_l(y2, y1)
    mu = mp.log(mp.sqrt(y1 + y2) * d1 ** (c1 / 2) * d2 ** (c2 / 2) / h) - mp_u(y1, y2) - mp_u(y2, y1)
    both = mp.log(h ** (4 * c1 * c2)) if (y1 > 1 and y2 > 1) else 0
    nu2 = mp.log(h ** 4 / (d1 ** (2 * c1 ** 2) * d2 ** (2 * c2 ** 2) * (y1 + y2) ** 2)) \
        + 2 * (mp_v(y1, y2) + mp_v(y2, y1) + both)
    return ell, mu, nu2


def lite_oracle(y1, y2, D1=0, D2=0):
    y1, y2 = mp.mpf(y1), mp.mpf(y2)
    h2 = y1 + y2 - y1 * y2
    h = mp.sqrt(h2)
    s = y1 + y2
    big, small = y1 > 1, y1 < 1
    ell = mp.log(y2 * h ** (2 * h2 / (y1 * y2)) / (s ** (s / (y1 * y2)) * abs(1 - y1) ** (abs(1 - y1) / y1)))
    if big:
        ell -= mp.log(h ** (2 * h2 / (y1 * y2)) / (y1 ** ((1 + y2) / y2) * y2 ** ((1 - y1) / y1)))
    mu = mp.log(mp.sqrt(s) * mp.sqrt(abs(1 - y1)) / h) - (mp.log(y1 / h) if big else 0)
    mu -= D1 * (y1 ** 3 * (y1 + 2 * y2) * small + h2 * (y1 + y2 + y1 * y2) * big) / (2 * y1 * s ** 2)
    mu += D2 * (y1 ** 4 * y2 * small + h2 * y2 * (2 * y1 ** 2 - h2) * big) / (2 * y1 ** 2 * s ** 2)
    nu2 = 2 * mp.log(h2 / (abs(1 - y1) * s)) + (2 * mp.log(y1 ** 2 / h2) if big else 0) \
        + (y1 * D1 + y2 * D2) / (y1 ** 2 * s ** 2) * (y1 ** 4 * small + h2 ** 2 * big)
    return ell, mu, nu2


GRID = [0.3, 0.6, 1.3, 1.6, 2.5]
FEASIBLE = [(a, b) for a in GRID for b in GRID if a + b - a * b > 0]


# Scalar functions ---------------------------------------------------------------------------

def test_scalar_functions_high_precision_point():
    a, b = 1.6, 8 / 7
    assert scalar_l(a, b) == pytest.approx(float(mp_l(a, b)), rel=1e-13)
    assert scalar_u(a, b) == pytest.approx(float(mp_u(a, b)), rel=1e-13)
    assert scalar_v(a, b) == pytest.approx(float(mp_v(a, b)), rel=1e-13)
    assert psi(a, b) == pytest.approx(float(mp_psi(a, b)), rel=1e-13)


@pytest.mark.parametrize("a,b", FEASIBLE)
def test_scalar_functions_on_grid(a, b):
    for fast, slow in ((scalar_l, mp_l), (scalar_u, mp_u), (scalar_v, mp_v), (psi, mp_psi)):
        assert fast(a, b) == pytest.approx(float(slow(a, b)), rel=1e-12, abs=1e-14)


def test_scalar_functions_vanish_below_one():
    assert scalar_l(0.5, 2.0) == scalar_u(0.5, 2.0) == scalar_v(0.5, 2.0) == 0.0


def test_scalar_domain_error():
    with pytest.raises(DomainError):
        scalar_l(2.0, 3.0)
    with pytest.raises(DomainError):
        psi(-0.1, 0.5)


@settings(max_examples=300, deadline=None)
@given(st.floats(0.05, 0.95), st.floats(0.05, 0.95))
def test_psi_reduces_to_minus_cubes(a, b):
    assert abs(psi(a, b) + a ** 3 * b ** 3) < 1e-12


# Centering constants --------------------------------------------------------------------------

@pytest.mark.parametrize("y1,y2", FEASIBLE)
def test_gaussian_full_centering_matches_product_form(y1, y2):
    got = centering_full(DesignRatios(1, 1 / y1, 1 / y2))
    ell, mu, nu2 = gaussian_full_oracle(y1, y2)
    assert got.ell == pytest.approx(float(ell), rel=1e-11, abs=1e-13)
    assert got.mu == pytest.approx(float(mu), rel=1e-11, abs=1e-13)
    assert got.nu2 == pytest.approx(float(nu2), rel=1e-11, abs=1e-13)


@pytest.mark.parametrize("y1,y2", FEASIBLE)
def test_lite_centering_matches_product_form(y1, y2):
    r = DesignRatios(1, 1 / y1, 1 / y2)
    for D in ((0.0, 0.0), (-1.2, -1.2), (0.7, -0.4)):
        got = centering_lite(r, KurtosisPair(*D))
        ell, mu, nu2 = lite_oracle(y1, y2, *D)
        assert got.ell == pytest.approx(float(ell), rel=1e-11, abs=1e-13)
        assert got.mu == pytest.approx(float(mu), rel=1e-11, abs=1e-13)
        assert got.nu2 == pytest.approx(float(nu2), rel=1e-11, abs=1e-13)


def test_full_kurtosis_terms():
    y1, y2 = 1.6, 0.6
    r = DesignRatios(1, 1 / y1, 1 / y2)
    D1, D2 = -1.2, 0.5
    base, got = centering_full(r), centering_full(r, KurtosisPair(D1, D2))
    s = y1 + y2
    dmu = D1 * float(mp_psi(y1, y2)) / (2 * y1 * y2 ** 2 * s ** 2) + D2 * float(mp_psi(y2, y1)) / (2 * y2 * y1 ** 2 * s ** 2)
    dnu = (y1 * D1 + y2 * D2) / (y1 ** 2 * y2 ** 2 * s ** 2) * ((y1 - 1) * y2 ** 2) ** 2
    assert got.mu - base.mu == pytest.approx(dmu, rel=1e-12)
    assert got.nu2 - base.nu2 == pytest.approx(dnu, rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.05, 3.0), st.floats(0.05, 3.0), st.floats(-2.0, 2.0), st.floats(-2.0, 2.0))
def test_full_is_weighted_lite_under_swap(y1, y2, D1, D2):
    # log(1 - lambda) are the log eigenvalues of the Beta matrix with the samples swapped
    if y1 + y2 - y1 * y2 < 0.05 or min(abs(y1 - 1), abs(y2 - 1)) < 0.05:
        return
    r = DesignRatios(1, 1 / y1, 1 / y2)
    k = KurtosisPair(D1, D2)
    full = centering_full(r, k)
    a, b = centering_lite(r, k), centering_lite(r.swapped(), k.swapped())
    assert full.ell == pytest.approx(r.c1 * a.ell + r.c2 * b.ell, rel=1e-9, abs=1e-11)
    assert full.mu == pytest.approx(r.c1 * a.mu + r.c2 * b.mu, rel=1e-9, abs=1e-11)


def test_centering_dispatch():
    r = make_ratios(40, 25, 35)
    assert centering(r, GAUSSIAN, "full") == centering_full(r)
    assert centering(r, GAUSSIAN, "lite") == centering_lite(r)
    with pytest.raises(ValueError):
        centering(r, GAUSSIAN, "other")


def test_make_ratios_checks_dimensions():
    with pytest.raises(DimensionsAssumptionError, match="Dimensions Assumption"):
        make_ratios(60, 25, 35)
    r = make_ratios(40, 25, 35)
    assert (r.y1, r.y2) == (40 / 25, 40 / 35)
    assert r.c1 + r.c2 == pytest.approx(1.0)
    assert r.h2 == pytest.approx(r.y1 + r.y2 - r.y1 * r.y2)


def test_near_critical_design_warns():
    assert make_ratios(100, 101, 300).warnings
    assert make_ratios(100, 150, 300).warnings == ()


def test_exactly_critical_design_fails():
    with pytest.raises(CalibrationError):
        centering_full(DesignRatios(10, 10, 30))


def test_kurtosis_pair_rejects_nan():
    with pytest.raises(ValueError):
        KurtosisPair(math.nan, 0.0)


def test_nu2_blows_up_near_critical():
    far = centering_full(DesignRatios(1, 1 / 0.5, 1 / 0.5)).nu2
    near = centering_full(DesignRatios(1, 1 / 0.999, 1 / 0.5)).nu2
    assert near > 5 * far
