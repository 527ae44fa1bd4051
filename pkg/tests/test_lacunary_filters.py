import math

import numpy as np
import pytest

from holderkit import FilterError
from holderkit.lacunary import (BumpProfile, Grid1D, LacunarySpec, build_band_limited_filter,
                                coefficient_bound_certificate, default_filter, recover_coefficient)


@pytest.fixture(scope="module")
def filt():
    return default_filter()


def _psi_gauss(x, nodes=400):
    """psi(x) by Gauss-Legendre quadrature on each half of the support."""
    prof = BumpProfile()
    t, w = np.polynomial.legendre.leggauss(nodes)
    total = 0j
    for a, b in ((0.5, 1.0), (1.0, 2.0)):
        xi = 0.5 * (b - a) * t + 0.5 * (a + b)
        total += 0.5 * (b - a) * np.sum(w * np.exp(-1j * xi * x) * prof(xi))
    return total / (2 * math.pi)


def test_profile_normalised_and_supported():
    prof = BumpProfile()
    assert prof(np.array([1.0]))[0] == 1.0
    assert np.all(prof(np.array([0.0, 0.5, 2.0, 3.0, -1.0])) == 0.0)
    assert np.all(prof(np.linspace(0.51, 1.99, 50)) > 0)
    narrow = BumpProfile(0.7, 1.5)
    assert narrow(np.array([1.0]))[0] == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(FilterError):
        BumpProfile(0.4, 2.0)


def test_filter_has_zero_mean(filt):
    assert abs(filt.integral()) < 1e-6
    assert filt.tail_estimate < 1e-5


def test_filter_samples_match_independent_quadrature(filt):
    for x0 in (0.0, 0.7, -3.1, 25.0, 200.0):
        k = int(np.argmin(np.abs(filt.x - x0)))
        assert abs(filt.psi[k] - _psi_gauss(filt.x[k])) < 1e-10


def test_dilated_spectrum_vanishes_off_band(filt):
    assert filt.dilated_spectrum(1, 2.0) == pytest.approx(1.0)
    for l in (0, 2, 3):
        assert abs(filt.dilated_spectrum(1, 2.0 ** l)) < 1e-9
    assert abs(filt.dilated_spectrum(0, 1.0) - 1.0) < 1e-15


def test_zero_spec_recovers_zero(filt):
    assert recover_coefficient(LacunarySpec(0.5, np.zeros(4)), 2, filt).estimate == 0


def test_recover_single_coefficient(filt):
    r = recover_coefficient(LacunarySpec(0.5, [0, 1, 0]), 1, filt)
    assert r.error < 1e-3
    assert r.radius == filt.radius


def test_recover_out_of_range(filt):
    with pytest.raises(IndexError):
        recover_coefficient(LacunarySpec(0.5, [1.0]), 1, filt)


def test_alias_guard():
    coarse = build_band_limited_filter(grid=Grid1D(-200.0, 0.5, 801))
    with pytest.raises(FilterError, match="aliases"):
        recover_coefficient(LacunarySpec.constant(10, 0.5), 0, coarse)


def test_coefficient_bound(filt):
    cert = coefficient_bound_certificate(LacunarySpec(0.5, [1.0]), filt)
    assert cert.passed and cert.lhs == 1.0
    double = coefficient_bound_certificate(LacunarySpec(0.5, [2.0]), filt)
    assert double.lhs == 2 * cert.lhs and double.rhs == pytest.approx(2 * cert.rhs)
    zero = coefficient_bound_certificate(LacunarySpec(0.5, [0.0]), filt)
    assert zero.lhs == 0.0 and zero.passed
