from __future__ import annotations

import math

import pytest

from coulomb1d.errors import DomainError
from coulomb1d.extensions import delta_correction, real_extension_params
from coulomb1d.oracle import reference_eval
from coulomb1d.scattering import PhysicalParams, solve_boundary_closed


@pytest.mark.parametrize("alpha,k", [(1.0, 1.0), (-2.0, 0.3), (5.0, 0.1), (-0.5, 10.0)])
def test_real_extension_values(alpha, k):
    t = math.pi * alpha / (2 * k)
    ext = real_extension_params(PhysicalParams.scattering(alpha, k))
    assert abs(ext.v_plus_minus_V - (math.tanh(t) - 1)) <= 1e-15 * max(1, abs(math.tanh(t) - 1)) + 1e-300
    assert abs(ext.v_plus_plus_W - 1 / math.sinh(t) * math.exp(-t)) <= 1e-14 * abs(ext.v_plus_plus_W)
    assert ext.v_minus_minus_V == 0 and ext.v_minus_plus_W == 0


def test_real_extension_is_stable_for_large_t():
    # tanh t - 1 underflows to zero in the naive form once t > 19
    ext = real_extension_params(PhysicalParams.scattering(30.0, 1.0))
    t = 15 * math.pi
    assert ext.v_plus_minus_V != 0
    assert abs(ext.v_plus_minus_V / (-2 * math.exp(-2 * t)) - 1) < 1e-12


def test_real_extension_satisfies_left_constraint():
    for alpha, k in ((1.0, 1.0), (-3.0, 0.4), (0.2, 2.0)):
        params = PhysicalParams.scattering(alpha, k)
        ext = real_extension_params(params)
        sol = solve_boundary_closed(ext.v_plus_minus_V, ext.v_plus_plus_W, params)
        assert abs(sol.v_minus_minus_V) < 1e-12


def test_real_extension_bound_axis_is_complex():
    ext = real_extension_params(PhysicalParams.bound_axis(-1.0, 0.3))
    assert abs(ext.v_plus_minus_V.imag) > 0.1


def test_real_extension_needs_coupling():
    with pytest.raises(DomainError):
        real_extension_params(PhysicalParams.scattering(0.0, 1.0))


def test_delta_closed_reference():
    for alpha, k, x in ((1.0, 1.0, 1.0), (-2.0, 0.5, 0.1), (3.0, 7.0, 2.5)):
        got = delta_correction(PhysicalParams.scattering(alpha, k), x).coefficient
        ref = reference_eval("delta_closed", (alpha, k, x), 30).value
        assert abs(got - ref) <= 1e-13 * max(1, abs(ref))


def test_delta_series_matches_closed_within_tail():
    params = PhysicalParams.scattering(1.0, 1.0)
    closed = delta_correction(params, 1.0).coefficient
    for terms in (1000, 100_000):
        series = delta_correction(params, 1.0, "series", terms)
        assert abs(series.coefficient - closed) <= 1.01 * series.tail_bound + 1e-13
        ref = reference_eval("delta_series", (1.0, 1.0, 1.0, terms), 30).value
        assert abs(series.coefficient - ref) < 1e-12 * abs(ref)


@pytest.mark.parametrize("y", [10, 20, 50])
def test_delta_asymptotic_matches_closed(y):
    params = PhysicalParams.scattering(2.0 * y, 1.0)
    closed = delta_correction(params, 0.3).coefficient
    asym = delta_correction(params, 0.3, "asymptotic")
    assert abs(asym.coefficient - closed) < 1e-10 * abs(closed)
    ref = reference_eval("delta_asymptotic", (2.0 * y, 1.0, 0.3, asym.terms), 30).value
    assert abs(asym.coefficient - ref) < 1e-13 * abs(ref)


def test_delta_asymptotic_domain():
    with pytest.raises(DomainError):
        delta_correction(PhysicalParams.scattering(1.0, 1.0), 1.0, "asymptotic")


def test_delta_vanishes_linearly_with_coupling():
    c1 = delta_correction(PhysicalParams.scattering(1e-9, 1.0), 1.0).coefficient
    c2 = delta_correction(PhysicalParams.scattering(1e-7, 1.0), 1.0).coefficient
    assert abs(c1) < 1e-8
    assert abs(c2 / c1 - 100) < 1e-5
    # the slope is -2 (gamma_E + ln 2kx)
    assert abs(c1 / 1e-9 + 2 * (0.5772156649015329 + math.log(2))) < 1e-6


def test_delta_sign_tracks_log():
    # at fixed coupling the ln x term dominates: small x flips the sign
    params = PhysicalParams.scattering(1.0, 1.0)
    assert delta_correction(params, 1e-3).coefficient > 0
    assert delta_correction(params, 10.0).coefficient < 0


def test_delta_argument_validation():
    params = PhysicalParams.scattering(1.0, 1.0)
    with pytest.raises(DomainError):
        delta_correction(params, 0.0)
    with pytest.raises(DomainError):
        delta_correction(params, 1.0, "pade")
    with pytest.raises(DomainError):
        delta_correction(PhysicalParams.bound_axis(-1.0, 1.0), 1.0)
