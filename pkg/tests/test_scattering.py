from __future__ import annotations

import cmath
import math
import warnings

import mpmath
import pytest

from coulomb1d.continuation import branch_coeffs
from coulomb1d.errors import DegenerateBoundaryError, DomainError
from coulomb1d.extensions import real_extension_params
from coulomb1d.oracle import reference_eval
from coulomb1d.scattering import (
    BranchParams,
    ExtensionParams,
    PhysicalParams,
    complete_transmission_check,
    f2_at_zero,
    f2_right_limit,
    f2_wavefunction,
    fundamental_solution,
    general_solution_coeffs,
    impenetrable_case,
    reflection_dirichlet,
    scattering_report,
    small_x_expansion,
    solve_boundary_closed,
    solve_boundary_numeric,
    variation_constants,
)
from coulomb1d.specfun import gamma_complex, reciprocal_gamma

EULER = 0.57721566490153286


def rel(a, b):
    return abs(a - b) / abs(b)


def mp_fundamental(sid, alpha, k, x):
    """Independent evaluation from mpmath's Whittaker W and Tricomi U."""
    mpmath.mp.dps = 40
    alpha, k, x = mpmath.mpf(alpha), mpmath.mpf(k), mpmath.mpf(x)
    p = -1j * alpha / (2 * k)
    e = mpmath.exp(mpmath.pi * alpha / (4 * k))
    z = -2j * k * x

    def v_half(q, t):
        return mpmath.exp(t / 2) * t * mpmath.hyperu(1 + q, 2, -t)

    if sid == "plusW":
        val = e * mpmath.whitw(p, 0.5, z)
    elif sid == "plusV":
        val = -e * v_half(p, z)
    elif sid == "minusW":
        val = mpmath.whitw(-p, 0.5, z) / e
    else:
        val = -v_half(-p, z) / e
    mpmath.mp.dps = 15
    return complex(val)


@pytest.fixture
def unit():
    return PhysicalParams.scattering(1.0, 1.0)


def test_params_validation():
    with pytest.raises(DomainError):
        PhysicalParams(1.0, 1j, 0.0)
    with pytest.raises(DomainError):
        PhysicalParams(1.0, 1.0, math.pi / 2)
    with pytest.raises(DomainError):
        PhysicalParams(1.0, 0.0)
    with pytest.raises(DomainError):
        PhysicalParams(1.0, 1.0, 0.3)
    p = PhysicalParams.bound_axis(-1.0, 0.5)
    assert p.k == 0.5j and p.arg2k == math.pi / 2


@pytest.mark.parametrize("sid,x", [("plusW", 0.5), ("plusV", 0.5), ("minusW", -0.5), ("minusV", -2.0),
                                   ("plusV", 7.0), ("minusW", -40.0)])
def test_fundamental_against_mpmath(sid, x):
    for alpha, k in ((1.0, 1.0), (-2.0, 0.7), (0.5, 3.0)):
        got = fundamental_solution(sid, PhysicalParams.scattering(alpha, k), x).value
        assert rel(got, mp_fundamental(sid, alpha, k, x)) < 1e-12


def test_fundamental_derivative_is_analytic(unit):
    for sid, x in (("plusW", 0.8), ("minusV", -1.3)):
        d = fundamental_solution(sid, unit, x).derivative
        h = 1e-6
        ref = (mp_fundamental(sid, 1.0, 1.0, x + h) - mp_fundamental(sid, 1.0, 1.0, x - h)) / (2 * h)
        assert rel(d, ref) < 1e-9


def test_wrong_half_axis(unit):
    with pytest.raises(DomainError):
        fundamental_solution("plusW", unit, -1.0)
    with pytest.raises(DomainError):
        fundamental_solution("minusV", unit, 1.0)
    with pytest.raises(DomainError):
        fundamental_solution("plusW", unit, 0.0)
    with pytest.raises(DomainError):
        fundamental_solution("nope", unit, 1.0)


def test_plus_w_asymptotics(unit):
    y = 0.5
    errs = []
    for kx in (50.0, 100.0, 200.0):
        val = fundamental_solution("plusW", unit, kx).value
        errs.append(abs(val / cmath.exp(1j * (kx - y * math.log(2 * kx))) - 1))
    assert errs[1] < 0.02
    assert 1.8 < errs[0] / errs[1] < 2.2 and 1.8 < errs[1] / errs[2] < 2.2


def _wronskian(f, g, conj=False):
    fv, fd = (f.value.conjugate(), f.derivative.conjugate()) if conj else (f.value, f.derivative)
    return fv * g.derivative - fd * g.value


@pytest.mark.parametrize("x", [0.1, 1.0, 10.0])
def test_plus_side_wronskians(x):
    for alpha, k in ((1.0, 1.0), (-0.7, 0.4), (2.0, 3.0)):
        params = PhysicalParams.scattering(alpha, k)
        pw = fundamental_solution("plusW", params, x)
        pv = fundamental_solution("plusV", params, x)
        assert rel(_wronskian(pw, pv), -2j * k) < 1e-8
        assert rel(_wronskian(pv, pv, True), -2j * k) < 1e-8
        assert rel(_wronskian(pw, pw, True), 2j * k) < 1e-8
        assert abs(_wronskian(pv, pw, True)) < 1e-8 * 2 * k
        assert rel(pv.value.conjugate(), pw.value) < 1e-10


def test_minus_side_wronskian_scale():
    # the minus-side pair is normalized with e^{-pi alpha/4k}; its Wronskian
    # carries the factor e^{-pi alpha/k} relative to the plus side
    for alpha, k in ((1.0, 1.0), (-0.7, 0.4)):
        params = PhysicalParams.scattering(alpha, k)
        mw = fundamental_solution("minusW", params, -0.6)
        mv = fundamental_solution("minusV", params, -0.6)
        expected = -2j * k * math.exp(-math.pi * alpha / k)
        assert rel(_wronskian(mw, mv), expected) < 1e-10


# ---------------------------------------------------------------------------
# small-x expansion


def test_small_x_leading_constant(unit):
    x = 1e-12
    expected = 2 / reciprocal_gamma(0.5j) ** -1 * math.exp(math.pi / 4) * (-1j)
    assert rel(small_x_expansion("plusW", unit, x).value, expected) < 1e-9


def test_small_x_derivative_log_term(unit):
    # d/d(ln x) of the derivative is -i alpha times the prefactor
    x1, x2 = 1e-6, 1e-7
    d1 = small_x_expansion("plusW", unit, x1).derivative
    d2 = small_x_expansion("plusW", unit, x2).derivative
    pre = 2 * reciprocal_gamma(0.5j) * math.exp(math.pi / 4)
    slope = (d1 - d2) / math.log(x1 / x2)
    assert rel(slope, -1j * pre) < 1e-5


@pytest.mark.parametrize("sid,sign", [("plusW", 1), ("plusV", 1), ("minusW", -1), ("minusV", -1)])
def test_small_x_error_order(unit, sid, sign):
    def err(x):
        f = fundamental_solution(sid, unit, sign * x)
        e = small_x_expansion(sid, unit, sign * x)
        return abs(f.value - e.value) / abs(f.value)

    # O(x^2 ln x): a decade shrinks the error by about 100 ln x / ln(x/10)
    shrink = err(1e-3) / err(1e-4)
    predicted = 100 * math.log(1e-3) / math.log(1e-4)
    assert 0.9 * predicted < shrink < 1.2 * 100
    # the empirical dyadic order approaches 2 from below, >= 1.9 once ln x dominates
    order = math.log2(err(2e-5) / err(1e-5))
    assert order >= 1.9


def test_small_x_warning(unit):
    with pytest.warns(RuntimeWarning):
        small_x_expansion("plusW", unit, 0.2)


# ---------------------------------------------------------------------------
# general solution bookkeeping


def test_variation_constants():
    assert variation_constants(BranchParams(1, 0, 2.0, 3.0)) == (0.5, 0)
    assert variation_constants(BranchParams(1, 1, 1.0, 1.0)) == (2, -1)
    s, r, q1, q2 = 3, -2, 0.5 + 1j, -2 + 0.1j
    a2, b2 = variation_constants(BranchParams(s, r, q1, q2))
    assert abs(a2 - (r + s) / (s * q1)) < 1e-15 and abs(b2 + r / (s * q2)) < 1e-15
    with pytest.raises(ZeroDivisionError):
        variation_constants(BranchParams(0, 1, 1.0, 1.0))
    with pytest.raises(DomainError):
        BranchParams(1, 1, 0.0, 1.0)


def test_general_solution_coeffs(unit):
    branch = BranchParams(2, 1, 1.5, -0.5j)
    a_pm, a_pp, _, _ = general_solution_coeffs(0.7, 0.0, branch, unit)
    assert (a_pm, a_pp) == (0.7, 0)
    _, a_pp0, _, _ = general_solution_coeffs(0.7, 0.3, BranchParams(0, 1, 1.0, 1.0), unit)
    assert a_pp0 == 0
    alpha2, beta2 = 0.4 - 0.1j, 1.2 + 0.5j
    got = general_solution_coeffs(alpha2, beta2, branch, unit)
    p = unit.p
    bs, br, brs = branch_coeffs(2, p), branch_coeffs(1, -p), branch_coeffs(3, -p)
    expected = (alpha2 + beta2 * bs.b_V, -beta2 * bs.b_W,
                1.5 * alpha2 * br.b_V - 0.5j * beta2 * brs.b_V,
                -(1.5 * alpha2 * br.b_W - 0.5j * beta2 * brs.b_W))
    for g, e in zip(got, expected):
        assert abs(g - e) < 1e-13 * max(1, abs(e))


# ---------------------------------------------------------------------------
# boundary conditions


def test_real_extension_reproduces_closed_amplitudes():
    for alpha, k in ((1.0, 1.0), (-2.0, 0.5), (3.0, 4.0)):
        params = PhysicalParams.scattering(alpha, k)
        ext = real_extension_params(params)
        sol = solve_boundary_closed(ext.v_plus_minus_V, ext.v_plus_plus_W, params)
        t = math.pi * alpha / (2 * k)
        a_expected = -(2 * math.pi * k / alpha) * reciprocal_gamma(1j * alpha / (2 * k)) ** 2 / math.tanh(t)
        assert rel(sol.A_R, a_expected) < 1e-10
        assert rel(sol.B_R, -math.sinh(t)) < 1e-10
        assert abs(sol.v_minus_minus_V) < 1e-12


def test_impenetrable_family_zero_amplitude(unit):
    assert solve_boundary_closed(0.3, -1.0, unit).A_R == 0


def test_generic_closed_vs_numeric(unit):
    closed = solve_boundary_closed(0.2, -0.3, unit)
    numeric = solve_boundary_numeric(0.2, -0.3, unit)
    ref = reference_eval("boundary_closed", (0.2, -0.3, 1.0, 1.0), 20).value
    for c, n, r in zip(closed, numeric[:3], ref):
        assert abs(c - r) <= 1e-13 * abs(r)
        assert abs(n - r) <= 1e-12 * abs(r)


def test_numeric_constants_of_continued_representation(unit):
    n = solve_boundary_numeric(0.2, -0.3, unit, s=1)
    c = branch_coeffs(1, unit.p)
    assert rel(n.A1 + n.B1 * c.b_V, n.A_R) < 1e-13
    assert rel(-n.B1 * c.b_W, n.B_R) < 1e-13
    with pytest.raises(DomainError):
        solve_boundary_numeric(0.2, -0.3, unit, s=0)


def test_numeric_solution_is_continuous_at_origin(unit):
    from coulomb1d.scattering import _origin_structure

    n = solve_boundary_numeric(0.1, 0.4, unit)
    right = n.A_R * _origin_structure("plusV", unit).value + n.B_R * _origin_structure("plusW", unit).value
    left = _origin_structure("minusV", unit).value
    assert rel(right, left) < 1e-12


def test_zero_extension_forces_left_strength():
    # with both right-side strengths zero the left strength is +2, never 0
    for alpha, k in ((1.0, 1.0), (-0.5, 2.0), (2.0, 0.3)):
        params = PhysicalParams.scattering(alpha, k)
        closed = solve_boundary_closed(0, 0, params).v_minus_minus_V
        numeric = solve_boundary_numeric(0, 0, params).v_minus_minus_V
        assert closed == 2
        assert abs(numeric - 2) < 1e-12


def test_degenerate_denominator(unit):
    e = math.exp(math.pi)
    # 2 + v_V (1 + e) + v_W (1 - e) = 0 with v_V = 0
    with pytest.raises(DegenerateBoundaryError):
        solve_boundary_closed(0.0, 2 / (e - 1), unit)


def test_alpha_zero_rejected():
    free = PhysicalParams.scattering(0.0, 1.0)
    with pytest.raises(DomainError):
        solve_boundary_closed(0.1, 0.1, free)
    with pytest.raises(DomainError):
        f2_at_zero(free)


def test_out_of_range_exponent():
    with pytest.raises(DomainError):
        scattering_report("real", PhysicalParams.scattering(5.0, 0.01))


# ---------------------------------------------------------------------------
# reports


def test_free_limit():
    sol = scattering_report("real", PhysicalParams.scattering(0.0, 2.0))
    assert (sol.R, sol.T, sol.unitarity_residual, sol.regime) == (0, 1, 0, "free")


def test_real_case_sech_tanh():
    params = PhysicalParams.scattering(1.0, 0.5)
    sol = scattering_report("real", params)
    t2 = reference_eval("transmission_abs2", (1.0, 0.5), 30).value
    r2 = reference_eval("reflection_abs2", (1.0, 0.5), 30).value
    assert rel(sol.abs2T, t2) < 1e-12
    assert rel(sol.abs2R, r2) < 1e-12
    assert sol.unitarity_residual < 1e-12
    assert sol.R == sol.B_R / sol.A_R and sol.T == 1 / sol.A_R


def test_report_degenerate_family_is_impenetrable(unit):
    e = math.exp(math.pi)
    sol = scattering_report(ExtensionParams(0.0, 2 / (e - 1)), unit)
    assert sol.regime == "impenetrable" and sol.T == 0
    assert abs(sol.abs2R - 1) < 1e-12


def test_report_zero_amplitude_flags_infinite_reflection(unit):
    sol = scattering_report(ExtensionParams(0.3, -1.0), unit)
    assert sol.regime == "impenetrable" and sol.reflection_infinite and sol.T == 0


def test_report_rejects_bound_axis():
    with pytest.raises(DomainError):
        scattering_report("real", PhysicalParams.bound_axis(-1.0, 0.5))
    with pytest.raises(DomainError):
        scattering_report("imaginary", PhysicalParams.scattering(1.0, 1.0))


def test_f2_at_zero():
    params = PhysicalParams.scattering(1.0, 1.0)
    f = f2_at_zero(params)
    assert rel(abs(f.value) ** 2, f.abs2) < 1e-12
    assert rel(f.abs2, reference_eval("f2_abs2", (1.0, 1.0), 30).value) < 1e-14
    g = f2_at_zero(PhysicalParams.scattering(-1.0, 1.0))
    assert rel(g.abs2, f.abs2 * math.exp(math.pi)) < 1e-12


def test_f2_limits_agree():
    for alpha, k in ((1.0, 1.0), (5.0, 0.1), (-2.0, 0.3)):
        params = PhysicalParams.scattering(alpha, k)
        f = f2_at_zero(params).value
        assert rel(f2_right_limit("real", params), f) < 1e-12
        # the left-side solution is minusV alone
        assert rel(f2_wavefunction(0, 0, params, -1e-12).value, f) < 1e-9


def test_complete_transmission():
    assert complete_transmission_check(PhysicalParams.scattering(0.0, 1.0)).unitarity_violation == 0
    c = complete_transmission_check(PhysicalParams.scattering(1.0, 1.0))
    assert rel(c.abs2T, math.exp(math.pi)) < 1e-12
    assert rel(c.unitarity_violation, math.exp(math.pi) - 1) < 1e-12
    # R - T e^{-pi alpha/2k} equals the Dirichlet reflection coefficient
    r_d = reflection_dirichlet(PhysicalParams.scattering(1.0, 1.0))
    assert rel(-c.T * math.exp(-math.pi / 2), r_d) < 1e-14


def test_impenetrable_case():
    params = PhysicalParams.scattering(1.0, 1.0)
    case = impenetrable_case(params, 1.0)
    assert abs(case.abs2R - 1) < 1e-14
    assert rel(case.R, gamma_complex(0.5j) / gamma_complex(-0.5j)) < 1e-14
    expected = mp_fundamental("plusV", 1.0, 1.0, 1.0) + case.R * mp_fundamental("plusW", 1.0, 1.0, 1.0)
    assert abs(case.f2R - expected) < 1e-12
    assert abs(impenetrable_case(params, 0.0).f2R) < 1e-8
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        small = [abs(impenetrable_case(params, x).f2R) / x for x in (1e-3, 1e-4, 1e-5)]
    assert abs(small[1] / small[2] - 1) < 1e-3
    with pytest.raises(DomainError):
        impenetrable_case(params, -1.0)
