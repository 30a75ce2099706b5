"""Scattering on the line with the potential alpha/|x|.

The Schrödinger equation psi'' + (k^2 - eps(x) alpha/x) psi = 0 is solved on
each half-axis by Whittaker functions of index p = -i alpha/2k and argument
z = -2ikx.  The fundamental solutions are

    plusW :  exp(+pi alpha/4k) W_{p,1/2}(z)        x > 0, ~ exp(+ikx)
    plusV : -exp(+pi alpha/4k) V_{p,1/2}(z)        x > 0, ~ exp(-ikx)
    minusW:  exp(-pi alpha/4k) W_{-p,1/2}(z)       x < 0
    minusV: -exp(-pi alpha/4k) V_{-p,1/2}(z)       x < 0

The state incident from the right is

    f2 = A_R plusV + B_R plusW  (x > 0),     f2 = minusV  (x < 0),

and A_R, B_R follow from matching at x = 0 in the presence of point
interactions parametrized by v-values (see :class:`ExtensionParams`).

Logarithm convention on the negative half-axis
---------------------------------------------
The matching conditions compare the coefficients of ln x on both sides.
On x < 0 the formal ln x is taken as ln|x| - i pi (x = |x| e^{-i pi}).  With
this reading the matching system reproduces the closed forms returned by
:func:`solve_boundary_closed`.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import mpmath

from .continuation import branch_coeffs
from .errors import DegenerateBoundaryError, DomainError, SingularSystemError
from .specfun.gamma import DOUBLE, Backend, mp_backend, rgamma_generic
from .specfun import (
    DEFAULT_POLICY,
    EULER_GAMMA,
    EvalPolicy,
    digamma,
    gamma_complex,
    reciprocal_gamma,
    whittaker_half,
    whittaker_w_origin,
)

SOLUTION_IDS = ("plusW", "plusV", "minusW", "minusV")
ARG2K_SCATTERING = 0.0
ARG2K_BOUND = math.pi / 2


@dataclass(frozen=True)
class PhysicalParams:
    """Coupling, momentum and branch of 2k.

    Attributes
    ----------
    alpha : float
        Coupling constant in alpha/|x| (units with hbar^2/2m = 1).
    k : complex
        Momentum. Real and positive for scattering; i*kappa on the bound-state axis.
    arg2k : float
        0 for scattering, pi/2 for the positive imaginary axis.
    """

    alpha: float
    k: complex
    arg2k: float = ARG2K_SCATTERING

    def __post_init__(self):
        alpha = float(self.alpha)
        k = complex(self.k)
        if not (math.isfinite(alpha) and cmath.isfinite(k)):
            raise DomainError("alpha and k must be finite")
        if k == 0:
            raise DomainError("k must be nonzero")
        if self.arg2k == ARG2K_SCATTERING:
            if k.imag != 0 or k.real <= 0:
                raise DomainError("arg2k = 0 requires real k > 0")
        elif self.arg2k == ARG2K_BOUND:
            if k.real != 0 or k.imag <= 0:
                raise DomainError("arg2k = pi/2 requires k = i*kappa with kappa > 0")
        else:
            raise DomainError("arg2k must be 0 or pi/2")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "k", k)

    @classmethod
    def scattering(cls, alpha: float, k: float) -> PhysicalParams:
        return cls(alpha, complex(k), ARG2K_SCATTERING)

    @classmethod
    def bound_axis(cls, alpha: float, kappa: float) -> PhysicalParams:
        return cls(alpha, complex(0.0, kappa), ARG2K_BOUND)

    @property
    def y(self) -> complex:
        """alpha / 2k (real on the scattering axis)."""
        return self.alpha / (2 * self.k)

    @property
    def p(self) -> complex:
        """Whittaker index -i alpha / 2k of the plus-side solutions."""
        return -1j * self.y

    @property
    def exp_quarter(self) -> complex:
        """exp(pi alpha / 4k)."""
        return cmath.exp(math.pi * self.alpha / (4 * self.k))


@dataclass(frozen=True)
class BranchParams:
    """Windings s, r and the left-side normalizations Q1, Q2 of the general solution."""

    s: int
    r: int
    Q1: complex
    Q2: complex

    def __post_init__(self):
        for name in ("s", "r"):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v:
                raise DomainError(f"{name} must be an integer")
        if self.Q1 == 0 or self.Q2 == 0:
            raise DomainError("Q1 and Q2 must be nonzero")


@dataclass(frozen=True)
class ExtensionParams:
    """Strengths of the point interactions attached to each fundamental solution.

    ``v_minus_plus_W`` is carried for completeness; the matching conditions
    do not involve it.
    """

    v_plus_minus_V: complex
    v_plus_plus_W: complex
    v_minus_minus_V: complex = 0j
    v_minus_plus_W: complex = 0j


@dataclass(frozen=True)
class ScatteringSolution:
    """Amplitudes and coefficients of the right-incident state.

    ``regime`` is ``"regular"``, ``"free"`` (alpha = 0) or ``"impenetrable"``.
    In the impenetrable regime R and T describe the renormalized Dirichlet
    state; ``reflection_infinite`` flags A_R = 0.
    """

    A_R: complex
    B_R: complex
    R: complex
    T: complex
    current: float
    unitarity_residual: float
    regime: str = "regular"
    reflection_infinite: bool = False

    @property
    def abs2R(self) -> float:
        return abs(self.R) ** 2

    @property
    def abs2T(self) -> float:
        return abs(self.T) ** 2


class BoundarySolution(NamedTuple):
    A_R: complex
    B_R: complex
    v_minus_minus_V: complex


class NumericBoundarySolution(NamedTuple):
    A_R: complex
    B_R: complex
    v_minus_minus_V: complex
    A1: complex
    B1: complex
    condition_number: float


class ValueAndDerivative(NamedTuple):
    value: complex
    derivative: complex


# ---------------------------------------------------------------------------
# fundamental solutions


def _solution_recipe(sid: str, params: PhysicalParams):
    """(prefactor, Whittaker kind, index) with psi = prefactor * kind_{index,1/2}(-2ikx)."""
    e = params.exp_quarter
    p = params.p
    if sid == "plusW":
        return e, "W", p
    if sid == "plusV":
        return -e, "V", p
    if sid == "minusW":
        return 1 / e, "W", -p
    if sid == "minusV":
        return -1 / e, "V", -p
    raise DomainError(f"unknown solution id {sid!r}; expected one of {SOLUTION_IDS}")


def fundamental_solution(sid: str, params: PhysicalParams, x: float,
                         policy: EvalPolicy = DEFAULT_POLICY, winding: int = 0) -> ValueAndDerivative:
    """Value and x-derivative of a fundamental solution.

    Parameters
    ----------
    sid : {"plusW", "plusV", "minusW", "minusV"}
    params : PhysicalParams
    x : float
        Nonzero abscissa on the half-axis of the solution.
    policy : EvalPolicy
    winding : int, optional
        Evaluate the Whittaker function on the sheet z e^{2 pi i winding}.

    Returns
    -------
    ValueAndDerivative
    """
    x = float(x)
    if x == 0 or not math.isfinite(x):
        raise DomainError("x must be finite and nonzero")
    if sid.startswith("plus") and x < 0 or sid.startswith("minus") and x > 0:
        raise DomainError(f"{sid} lives on the {'positive' if sid.startswith('plus') else 'negative'} half-axis")
    pref, kind, index = _solution_recipe(sid, params)
    zeta = -2j * params.k
    val, dval = whittaker_half(kind, index, zeta * x, policy, winding)
    return ValueAndDerivative(pref * val, pref * zeta * dval)


def continued_solution(params: PhysicalParams, x: float, s: int,
                       policy: EvalPolicy = DEFAULT_POLICY) -> ValueAndDerivative:
    """plusV continued to the sheet k -> e^{2 pi i s} k.

    Uses V(z e^{2 pi i s}) = b_V V(z) + b_W W(z), so the result is
    b_V plusV - b_W plusW.
    """
    c = branch_coeffs(s, params.p)
    v = fundamental_solution("plusV", params, x, policy)
    w = fundamental_solution("plusW", params, x, policy)
    return ValueAndDerivative(c.b_V * v.value - c.b_W * w.value,
                              c.b_V * v.derivative - c.b_W * w.derivative)


# ---------------------------------------------------------------------------
# small-x expansions


def _expansion_w(a: float, k: complex, x: float, lnx: complex):
    """Expansion of the W-type solution for coupling a (value, derivative)."""
    iy = 1j * a / (2 * k)
    pre = 2 * k / a * reciprocal_gamma(iy) * cmath.exp(math.pi * a / (4 * k))
    g = EULER_GAMMA
    l2 = cmath.log(-2j * k)
    d1, d2 = digamma(1 + iy), digamma(2 + iy)
    value = -1j + x * (1j * a - 2j * a * g + k - 1j * a * l2 - 1j * a * d1 - 1j * a * lnx)
    deriv = (-2j * a * g + k - 1j * a * l2 - 1j * a * d1 - 1j * a * lnx
             + x * (2j * a ** 2 - 2j * a ** 2 * g + 3 * a * k + 1j * k ** 2 - 1j * a ** 2 * l2
                    + 2 * a * k * d1 - 1j * a ** 2 * d2 - 2 * a * k * d2 - 1j * a ** 2 * lnx))
    return pre * value, pre * deriv


def _expansion_v(a: float, k: complex, x: float, lnx: complex):
    iy = 1j * a / (2 * k)
    pre = -2 * k / a * reciprocal_gamma(-iy) * cmath.exp(math.pi * a / (4 * k))
    g = EULER_GAMMA
    l2 = cmath.log(2j * k)
    d1, d2 = digamma(1 - iy), digamma(2 - iy)
    value = -1j + x * (1j * a - 2j * a * g - k - 1j * a * l2 - 1j * a * d1 - 1j * a * lnx)
    deriv = (-2j * a * g - k - 1j * a * l2 - 1j * a * d1 - 1j * a * lnx
             + x * (2j * a ** 2 - 2j * a ** 2 * g - 3 * a * k + 1j * k ** 2 - 1j * a ** 2 * l2
                    - 2 * a * k * d1 - 1j * a ** 2 * d2 + 2 * a * k * d2 - 1j * a ** 2 * lnx))
    return pre * value, pre * deriv


def small_x_expansion(sid: str, params: PhysicalParams, x: float) -> ValueAndDerivative:
    """Two-term expansion of a fundamental solution near x = 0.

    The value is kept through O(x ln x) and the derivative through
    O(x ln x); the omitted terms are O(x^2 ln x).  The minus-side solutions
    use the plus-side formulas with alpha -> -alpha, with ln x read as
    ln|x| + i pi for minusW and ln|x| - i pi for minusV (the readings under
    which the formulas match the principal-branch functions).

    Warns
    -----
    RuntimeWarning
        When |2kx| > 0.1, outside the useful range of the expansion.
    """
    x = float(x)
    if x == 0:
        raise DomainError("x must be nonzero")
    if sid not in SOLUTION_IDS:
        raise DomainError(f"unknown solution id {sid!r}")
    if sid.startswith("plus") and x < 0 or sid.startswith("minus") and x > 0:
        raise DomainError(f"{sid} lives on the other half-axis")
    if params.alpha == 0:
        raise DomainError("the expansion is singular at alpha = 0")
    k = params.k
    if abs(2 * k * x) > 0.1:
        warnings.warn(f"|2kx| = {abs(2 * k * x):.3g} > 0.1: small-x expansion out of range",
                      RuntimeWarning, stacklevel=2)
    if sid == "plusW":
        return ValueAndDerivative(*_expansion_w(params.alpha, k, x, math.log(x)))
    if sid == "plusV":
        return ValueAndDerivative(*_expansion_v(params.alpha, k, x, math.log(x)))
    lnabs = math.log(-x)
    if sid == "minusW":
        return ValueAndDerivative(*_expansion_w(-params.alpha, k, x, lnabs + 1j * math.pi))
    return ValueAndDerivative(*_expansion_v(-params.alpha, k, x, lnabs - 1j * math.pi))


# ---------------------------------------------------------------------------
# general solution bookkeeping


def variation_constants(branch: BranchParams) -> tuple[complex, complex]:
    """Left-side constants (A2, B2) = ((r+s)/(s Q1), -r/(s Q2))."""
    if branch.s == 0:
        raise ZeroDivisionError("variation constants require s != 0")
    s, r = branch.s, branch.r
    return (r + s) / (s * complex(branch.Q1)), -r / (s * complex(branch.Q2))


def general_solution_coeffs(alpha2: complex, beta2: complex, branch: BranchParams,
                            params: PhysicalParams) -> tuple[complex, complex, complex, complex]:
    """Coefficients (a_+^-, a_+^+, a_-^-, a_-^+) of the general solution.

    On x > 0 the solution is a_+^- plusV + a_+^+ plusW, on x < 0 it is
    a_-^- minusV + a_-^+ minusW; the continuation coefficients enter with
    index -i alpha/2k (right) and +i alpha/2k (left).
    """
    p = params.p
    bs = branch_coeffs(branch.s, p)
    br = branch_coeffs(branch.r, -p)
    brs = branch_coeffs(branch.r + branch.s, -p)
    q1, q2 = complex(branch.Q1), complex(branch.Q2)
    a_pm = alpha2 + beta2 * bs.b_V
    a_pp = -beta2 * bs.b_W
    a_mm = q1 * alpha2 * br.b_V + q2 * beta2 * brs.b_V
    a_mp = -(q1 * alpha2 * br.b_W + q2 * beta2 * brs.b_W)
    return a_pm, a_pp, a_mm, a_mp


# ---------------------------------------------------------------------------
# matching at x = 0


def _require_nonzero_alpha(params: PhysicalParams) -> None:
    if params.alpha == 0:
        raise DomainError("alpha = 0: use scattering_report for the free-particle limit")


# e^{pi alpha/k} must stay inside the double range
MAX_EXPONENT = 700.0


def _check_exponent(params: PhysicalParams) -> None:
    if abs(math.pi * params.alpha / params.k) > MAX_EXPONENT:
        raise DomainError(f"|pi alpha/k| exceeds {MAX_EXPONENT:g}; e^(pi alpha/k) is out of double range")


def boundary_denominator(v_plus_minus_V: complex, v_plus_plus_W: complex, params: PhysicalParams) -> complex:
    """2 + v_V (1 + e^{pi alpha/k}) + v_W (1 - e^{pi alpha/k})."""
    e = cmath.exp(math.pi * params.alpha / params.k)
    vv, vw = complex(v_plus_minus_V), complex(v_plus_plus_W)
    return 2 + vv + vw + e * (vv - vw)


def solve_boundary_closed(v_plus_minus_V: complex, v_plus_plus_W: complex,
                          params: PhysicalParams) -> BoundarySolution:
    """Closed-form amplitudes A_R, B_R and the left strength v_-^{-V}.

    Raises
    ------
    DegenerateBoundaryError
        When the common denominator vanishes (the impenetrable family).
    DomainError
        For alpha = 0.
    """
    _require_nonzero_alpha(params)
    _check_exponent(params)
    vv, vw = complex(v_plus_minus_V), complex(v_plus_plus_W)
    alpha, k = params.alpha, params.k
    e = cmath.exp(math.pi * alpha / k)
    # grouped so that e multiplies only the difference v_V - v_W
    den = 2 + vv + vw + e * (vv - vw)
    scale = 2 + abs(vv) + abs(vw) + abs(e) * abs(vv - vw)
    if abs(den) <= 1e-13 * scale:
        raise DegenerateBoundaryError(f"boundary denominator vanishes ({abs(den):.3e})")
    rg = reciprocal_gamma(1j * alpha / (2 * k))
    a_r = 4 * math.pi * k * (1 + vw) * rg * rg / (alpha * den)
    b_r = (1 + e) * (1 + vv) / (cmath.exp(math.pi * alpha / (2 * k)) * den)
    v_minus = (4 + 3 * (vv + vw) + 2 * vv * vw + e * (vv - vw)) / den
    return BoundarySolution(a_r, b_r, v_minus)


class _Structure(NamedTuple):
    value: object      # psi(0)
    log_coeff: object  # coefficient of ln x in psi'(x)
    const: object      # constant part of psi'(x)


def _origin_structure(sid: str, params: PhysicalParams, backend: Backend = DOUBLE) -> _Structure:
    """Behaviour of a fundamental solution at x -> 0 from the Whittaker W structure.

    Every fundamental solution equals c * W_{q,1/2}(zeta x) for suitable
    (c, q, zeta); e.g. plusV = e^{pi alpha/4k} W_{-p,1/2}(2ikx).
    """
    bk = backend
    k = bk.convert(params.k)
    alpha = bk.convert(params.alpha)
    e = bk.exp(bk.pi * alpha / (4 * k))
    p = -1j * alpha / (2 * k)
    table = {
        "plusW": (e, p, -2j * k),
        "plusV": (e, -p, 2j * k),
        "minusV": (1 / e, p, 2j * k),
        "minusW": (1 / e, -p, -2j * k),
    }
    c, q, zeta = table[sid]
    o = whittaker_w_origin(q, bk)
    if sid.startswith("plus"):
        ln_zeta = bk.log(zeta)
        shift = 0
    else:
        # zeta x = -zeta |x|; the symbolic ln x is ln|x| - i pi for minusV
        # and ln|x| + i pi for minusW, as in small_x_expansion
        ln_zeta = bk.log(-zeta)
        shift = bk.pi if sid == "minusV" else -bk.pi
    log_coeff = c * zeta * o.log_coeff
    const = c * zeta * (o.log_coeff * ln_zeta + o.const) + 1j * shift * log_coeff
    return _Structure(c * o.value, log_coeff, const)


def _matching_digits(params: PhysicalParams) -> int:
    # the continuity row cancels terms of relative size ~ e^{2 pi |alpha/2k|}
    y = abs(params.y)
    return 30 + int(math.ceil(2 * math.pi * y / math.log(10)))


def solve_boundary_numeric(v_plus_minus_V: complex, v_plus_plus_W: complex, params: PhysicalParams,
                           s: int = 1, digits: int | None = None) -> NumericBoundarySolution:
    """Solve the three matching conditions at x = 0 as a linear system.

    The conditions are continuity of f2, matching of the constant parts of
    the weighted derivatives, and matching of their ln x coefficients.  The
    system is assembled from the origin structure of the Whittaker functions
    and solved for (A_R, B_R, 1 - v_-^{-V}); the constants (A1, B1) of the
    continued representation A_R = A1 + B1 b_V, B_R = -B1 b_W (winding
    ``s``) are recovered afterwards.

    The continuity row cancels terms of size e^{2 pi |alpha/2k|}, so the
    system is assembled and solved in mpmath arithmetic with ``digits``
    decimal digits (default: 30 plus the digits lost to that cancellation).

    Raises
    ------
    SingularSystemError
        If the equilibrated matrix is singular to working precision.
    """
    _require_nonzero_alpha(params)
    if s == 0:
        raise DomainError("winding s = 0 leaves B1 undetermined")
    dps = digits if digits is not None else _matching_digits(params)
    with mpmath.workdps(dps):
        bk = mp_backend()
        vv, vw = mpmath.mpc(complex(v_plus_minus_V)), mpmath.mpc(complex(v_plus_plus_W))
        pv = _origin_structure("plusV", params, bk)
        pw = _origin_structure("plusW", params, bk)
        mv = _origin_structure("minusV", params, bk)
        mat = mpmath.matrix([
            [pv.value, pw.value, 0],
            [(1 + vv) * pv.const, (1 + vw) * pw.const, -mv.const],
            [(1 + vv) * pv.log_coeff, (1 + vw) * pw.log_coeff, -mv.log_coeff],
        ])
        rhs = mpmath.matrix([mv.value, 0, 0])
        # row and column equilibration
        for i in range(3):
            scale = max(abs(mat[i, j]) for j in range(3))
            for j in range(3):
                mat[i, j] /= scale
            rhs[i] /= scale
        cols = []
        for j in range(3):
            scale = max(abs(mat[i, j]) for i in range(3))
            cols.append(scale)
            for i in range(3):
                mat[i, j] /= scale
        try:
            inv = mpmath.inverse(mat)
        except ZeroDivisionError:
            raise SingularSystemError("matching system is singular", math.inf) from None
        cond = float(mpmath.mnorm(mat, 1) * mpmath.mnorm(inv, 1))
        if not math.isfinite(cond) or cond > 10.0 ** (dps - 10):
            raise SingularSystemError("matching system is singular to working precision", cond)
        sol = inv * rhs
        a_r, b_r, u = (complex(sol[j] / cols[j]) for j in range(3))
    c = branch_coeffs(s, params.p)
    b1 = -b_r / c.b_W
    a1 = a_r - b1 * c.b_V
    return NumericBoundarySolution(a_r, b_r, 1 - u, a1, b1, cond)


# ---------------------------------------------------------------------------
# reports


def reflection_dirichlet(params: PhysicalParams) -> complex:
    """Gamma(i alpha/2k) / Gamma(-i alpha/2k)."""
    iy = 1j * params.alpha / (2 * params.k)
    return gamma_complex(iy) * reciprocal_gamma(-iy)


def scattering_report(ext, params: PhysicalParams) -> ScatteringSolution:
    """Scattering coefficients for a given extension.

    Parameters
    ----------
    ext : ExtensionParams or "real"
        Point-interaction strengths, or ``"real"`` for the real extension of
        :func:`coulomb1d.extensions.real_extension_params`.
    params : PhysicalParams
        Must be on the scattering axis.
    """
    if params.arg2k != ARG2K_SCATTERING:
        raise DomainError("scattering_report needs real k > 0")
    k = params.k.real
    if params.alpha == 0:
        return ScatteringSolution(1 + 0j, 0j, 0j, 1 + 0j, -k, 0.0, "free")
    _check_exponent(params)
    if isinstance(ext, str):
        if ext != "real":
            raise DomainError("ext must be ExtensionParams or 'real'")
        from .extensions import real_extension_params

        ext = real_extension_params(params)
    try:
        a_r, b_r, _ = solve_boundary_closed(ext.v_plus_minus_V, ext.v_plus_plus_W, params)
    except DegenerateBoundaryError:
        r = reflection_dirichlet(params)
        return ScatteringSolution(complex(math.inf), complex(math.inf), r, 0j, 0.0,
                                  abs(1 - abs(r) ** 2), "impenetrable")
    # flux of the unnormalized state; it cancels badly once |A_R| is large
    current = k * (-abs(a_r) ** 2 + abs(b_r) ** 2)
    if a_r == 0:
        return ScatteringSolution(a_r, b_r, complex(math.inf), 0j, current, math.inf,
                                  "impenetrable", reflection_infinite=True)
    r, t = b_r / a_r, 1 / a_r
    residual = abs(abs(r) ** 2 + abs(t) ** 2 - 1)
    return ScatteringSolution(a_r, b_r, r, t, current, residual)


class F2AtZero(NamedTuple):
    value: complex
    abs2: float


def f2_at_zero(params: PhysicalParams) -> F2AtZero:
    """Value of the right-incident state at the origin and its closed-form modulus squared."""
    _require_nonzero_alpha(params)
    if params.arg2k != ARG2K_SCATTERING:
        raise DomainError("f2_at_zero needs real k > 0")
    alpha, k = params.alpha, params.k.real
    t = math.pi * alpha / (2 * k)
    value = -2j * k * cmath.exp(-t / 2) * reciprocal_gamma(1j * alpha / (2 * k)) / alpha
    abs2 = 2 * k / (math.pi * alpha) * math.exp(-t) * math.sinh(t)
    return F2AtZero(value, abs2)


def f2_right_limit(ext, params: PhysicalParams, digits: int | None = None) -> complex:
    """lim_{x -> 0+} of A_R plusV + B_R plusW, evaluated in extended precision.

    Both terms grow like e^{pi |alpha|/2k} while their sum stays O(1), so
    the amplitudes and the origin values are formed with mpmath at
    ``digits`` decimal digits (default: 30 plus the digits lost to that
    cancellation).  For ``ext="real"`` the v-values are built in the same
    precision.
    """
    _require_nonzero_alpha(params)
    if params.arg2k != ARG2K_SCATTERING:
        raise DomainError("f2_right_limit needs real k > 0")
    _check_exponent(params)
    dps = digits if digits is not None else _matching_digits(params)
    with mpmath.workdps(dps):
        bk = mp_backend()
        alpha, k = mpmath.mpf(params.alpha), mpmath.mpf(params.k.real)
        e = mpmath.exp(mpmath.pi * alpha / k)
        if isinstance(ext, str):
            if ext != "real":
                raise DomainError("ext must be ExtensionParams or 'real'")
            vv, vw = -2 / (e + 1), 2 / (e - 1)
        else:
            vv, vw = mpmath.mpc(complex(ext.v_plus_minus_V)), mpmath.mpc(complex(ext.v_plus_plus_W))
        den = 2 + vv + vw + e * (vv - vw)
        if den == 0:
            raise DegenerateBoundaryError("boundary denominator vanishes")
        rg = rgamma_generic(1j * alpha / (2 * k), bk)
        a_r = 4 * mpmath.pi * k * (1 + vw) * rg * rg / (alpha * den)
        b_r = (1 + e) * (1 + vv) / (mpmath.exp(mpmath.pi * alpha / (2 * k)) * den)
        pv = _origin_structure("plusV", params, bk)
        pw = _origin_structure("plusW", params, bk)
        return complex(a_r * pv.value + b_r * pw.value)


def f2_wavefunction(a_r: complex, b_r: complex, params: PhysicalParams, x: float,
                    policy: EvalPolicy = DEFAULT_POLICY) -> ValueAndDerivative:
    """The assembled state A_R plusV + B_R plusW (x > 0) or minusV (x < 0)."""
    if x > 0:
        v = fundamental_solution("plusV", params, x, policy)
        w = fundamental_solution("plusW", params, x, policy)
        return ValueAndDerivative(a_r * v.value + b_r * w.value, a_r * v.derivative + b_r * w.derivative)
    return fundamental_solution("minusV", params, x, policy)


class CompleteTransmission(NamedTuple):
    T: complex
    abs2T: float
    unitarity_violation: float


def complete_transmission_check(params: PhysicalParams) -> CompleteTransmission:
    """Transmission amplitude forced by continuity when R = 0 is imposed.

    Continuity at the origin reads R - T e^{-pi alpha/2k} = Gamma(iy)/Gamma(-iy),
    so R = 0 gives T = -e^{pi alpha/2k} Gamma(iy)/Gamma(-iy) and
    |T|^2 = e^{pi alpha/k}.
    """
    if params.arg2k != ARG2K_SCATTERING:
        raise DomainError("complete_transmission_check needs real k > 0")
    if params.alpha == 0:
        return CompleteTransmission(1 + 0j, 1.0, 0.0)
    t = math.pi * params.alpha / (2 * params.k.real)
    T = -math.exp(t) * reflection_dirichlet(params)
    abs2 = abs(T) ** 2
    return CompleteTransmission(T, abs2, abs(abs2 - 1))


class ImpenetrableCase(NamedTuple):
    R: complex
    abs2R: float
    f2R: complex


def impenetrable_case(params: PhysicalParams, x: float, policy: EvalPolicy = DEFAULT_POLICY) -> ImpenetrableCase:
    """Dirichlet state plusV + R plusW with R = Gamma(iy)/Gamma(-iy).

    ``f2R`` is evaluated at ``x >= 0``; at x = 0 it is the exact limit 0.
    """
    if params.arg2k != ARG2K_SCATTERING:
        raise DomainError("impenetrable_case needs real k > 0")
    _require_nonzero_alpha(params)
    if x < 0:
        raise DomainError("the Dirichlet state lives on x >= 0")
    r = reflection_dirichlet(params)
    if x == 0:
        pv = _origin_structure("plusV", params)
        pw = _origin_structure("plusW", params)
        return ImpenetrableCase(r, abs(r) ** 2, pv.value + r * pw.value)
    v = fundamental_solution("plusV", params, x, policy)
    w = fundamental_solution("plusW", params, x, policy)
    return ImpenetrableCase(r, abs(r) ** 2, v.value + r * w.value)
