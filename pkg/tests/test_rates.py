import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oversmooth.hilbert_scale import DiagonalScale
from oversmooth.rates import DomainError, LogIndexFunction, phi_eval, psi, psi_inverse, qualification_check, rate_ratio

PHI = LogIndexFunction(1.8)
SPECTRUM = DiagonalScale.natural(6000, 1.0)
GRID = [10.0**-k for k in range(2, 9)]


def test_phi_at_inverse_e():
    for kappa in (0.5, 1.8, 3.0):
        assert LogIndexFunction(kappa)(math.exp(-1)) == pytest.approx(1.0, rel=1e-15)


def test_phi_values():
    assert PHI(1e-3) == pytest.approx(math.log(1e3) ** -1.8, rel=1e-15)
    # rounded value recoverable from the a priori table: 3.12e-2 / 1.0101
    assert PHI(1e-3) == pytest.approx(3.089e-2, rel=5e-3)
    assert PHI(2.0**-4) == pytest.approx((4 * math.log(2)) ** -1.8, rel=1e-14)


def test_phi_domain():
    with pytest.raises(DomainError):
        PHI(0.0)
    with pytest.raises(DomainError):
        PHI(0.95)
    with pytest.raises(ValueError):
        LogIndexFunction(0.0)


@pytest.mark.parametrize("theta", [0.0, 0.5])
def test_qualification_with_unit_constant(theta):
    rep = qualification_check(PHI, SPECTRUM, theta, GRID, 1.0)
    assert rep.ok, rep.ratios


def test_qualification_fails_for_tiny_constant():
    assert not qualification_check(PHI, SPECTRUM, 0.0, GRID, 1e-3).ok


def test_qualification_theta_three_quarters_only_for_small_alpha():
    # t^(theta-1) phi(t) decreases only for t < exp(-kappa/(1-theta)) ~ 7.5e-4
    rep = qualification_check(PHI, SPECTRUM, 0.75, [10.0**-k for k in range(2, 13)], 1.0)
    assert not rep.ok
    assert all(rep.passed[-5:])


def test_psi_inverse_regression():
    alpha = psi_inverse(PHI, 1.0, 1e-3)
    assert psi(PHI, 1.0, alpha) == pytest.approx(1e-3, rel=1e-12)
    assert alpha == pytest.approx(2.4432827219766e-05, rel=1e-9)


def test_psi_inverse_round_trip():
    for delta in np.logspace(-12, -2, 20):
        assert psi(PHI, 1.0, psi_inverse(PHI, 1.0, delta)) == pytest.approx(delta, rel=1e-12)


def test_psi_inverse_domain():
    with pytest.raises(ValueError):
        psi_inverse(PHI, 1.0, 0.0)
    with pytest.raises(DomainError):
        psi_inverse(PHI, 1.0, 1e3)


@settings(max_examples=60, deadline=None)
@given(st.floats(-12, -2), st.floats(-12, -2))
def test_psi_inverse_monotone(x, y):
    lo, hi = sorted((10.0**x, 10.0**y))
    assert psi_inverse(PHI, 1.0, lo) <= psi_inverse(PHI, 1.0, hi)


def test_rate_ratio_identity():
    assert rate_ratio([(1e-4, PHI(1e-4))], PHI) == [1.0]
