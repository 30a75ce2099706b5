from __future__ import annotations

import cmath
import math

import mpmath
import pytest

from coulomb1d.errors import DomainError, NonFiniteError, PrecisionExhaustedError
from coulomb1d.oracle import (
    DEFAULT_GRID,
    REFERENCE_EXPRESSIONS,
    continuation_group_error,
    continued_evaluator,
    identity_suite,
    ode_residual,
    reference_eval,
    solution_evaluator,
)
from coulomb1d.scattering import PhysicalParams

SAMPLES = {"plusW": [0.5, 1.0, 5.0], "plusV": [0.5, 1.0, 5.0],
           "minusW": [-0.5, -1.0, -5.0], "minusV": [-0.5, -1.0, -5.0]}


@pytest.fixture(scope="module")
def suite():
    return identity_suite()


@pytest.mark.parametrize("sid", sorted(SAMPLES))
def test_fundamental_residuals(sid):
    params = PhysicalParams.scattering(1.0, 1.0)
    for method in ("fd", "analytic"):
        report = ode_residual(solution_evaluator(sid, params), params, SAMPLES[sid], method=method)
        assert report.max_relative_residual < 1e-6
        assert len(report.sample_points) == 3 and not report.trivial


def test_analytic_derivative_gains_digits():
    params = PhysicalParams.scattering(-2.0, 0.7)
    ev = solution_evaluator("plusV", params)
    fd = ode_residual(ev, params, SAMPLES["plusV"]).max_relative_residual
    an = ode_residual(ev, params, SAMPLES["plusV"], method="analytic").max_relative_residual
    assert an < 1e-2 * fd


def test_residual_detects_wrong_function():
    params = PhysicalParams.scattering(1.0, 1.0)
    report = ode_residual(lambda x: cmath.exp(1j * x), params, [0.5, 1.0])
    assert report.max_relative_residual > 0.1


def test_residual_trivial_and_errors():
    params = PhysicalParams.scattering(1.0, 1.0)
    assert ode_residual(lambda x: 0j, params, [1.0]).trivial
    with pytest.raises(DomainError):
        ode_residual(lambda x: 1.0, params, [0.0])
    with pytest.raises(NonFiniteError):
        ode_residual(lambda x: math.inf, params, [1.0])
    with pytest.raises(DomainError):
        ode_residual(lambda x: 1.0, params, [1.0], method="spline")


def test_residual_of_continued_solution():
    params = PhysicalParams.scattering(0.5, 2.0)
    report = ode_residual(continued_evaluator(params, -1), params, [0.5, 1.0, 5.0])
    assert report.max_relative_residual < 1e-6


def test_identity_suite_coverage(suite):
    assert len(DEFAULT_GRID) == 20
    assert {"W7", "W8", "kummer_MN", "tricomi_UV", "conj_VV", "conj_WW", "conj_VW", "conj_map"} <= set(suite.names())


def test_identity_suite_all_but_minus_side_wronskian(suite):
    summary = suite.summary()
    failing = sorted(name for name, entry in summary.items() if not entry["passed"])
    # the minus-side pair carries e^{-pi alpha/k} in its Wronskian, which the
    # stated identity omits; see the decisions ledger
    assert failing == ["W8"]
    for name, entry in summary.items():
        if name != "W8":
            assert entry["worst_error"] <= entry["tolerance"]


def test_minus_side_wronskian_failure_is_the_exponential_factor(suite):
    for check in suite.by_name("W8"):
        k, alpha = check.k, check.alpha
        predicted = abs(math.exp(-math.pi * alpha / k) - 1)
        assert abs(check.error - predicted) < 1e-6 * max(1, predicted)


def test_group_error_default():
    assert continuation_group_error() < 1e-10


def test_reference_values():
    assert reference_eval("gamma", (1.0,)).value == 1.0
    t2 = reference_eval("transmission_abs2", (1.0, 0.5), 30)
    assert t2.certified_digits >= 30 and t2.working_digits == 70
    assert abs(t2.value - 1 / math.cosh(math.pi) ** 2) < 1e-17
    raw = reference_eval("digamma", (1.0,), 40, raw=True).value
    with mpmath.workdps(50):
        assert abs(raw + mpmath.euler) < mpmath.mpf(10) ** -40


def test_reference_errors(monkeypatch):
    with pytest.raises(DomainError):
        reference_eval("nonexistent", ())
    with pytest.raises(DomainError):
        reference_eval("gamma", (1.0,), 61)
    # an expression whose value drifts with the working precision cannot be certified
    monkeypatch.setitem(REFERENCE_EXPRESSIONS, "drifting",
                        lambda: 1 + mpmath.mpf(10) ** (-(mpmath.mp.dps // 3)))
    with pytest.raises(PrecisionExhaustedError):
        reference_eval("drifting", (), 20)
