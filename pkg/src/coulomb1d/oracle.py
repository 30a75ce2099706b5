"""Independent checks: ODE residuals, Wronskian and asymptotic identities,
and an arbitrary-precision reference evaluator built on mpmath.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import mpmath

from .continuation import continuation_matrix
from .errors import DomainError, NonFiniteError, PrecisionExhaustedError
from .scattering import PhysicalParams, ValueAndDerivative, continued_solution, fundamental_solution
from .specfun import kummer_m, kummer_n, numeric_wronskian, tricomi_u, tricomi_u_prime, vee, vee_prime
from .specfun.confluent import principal_power

EPS = 2.0 ** -52
# step for five-point second differences: balances eps/h^2 rounding against h^4 truncation
DEFAULT_STEP_FACTOR = EPS ** (1 / 6)


# ---------------------------------------------------------------------------
# ODE residual


@dataclass(frozen=True)
class ResidualReport:
    """Normalized residual of psi'' + (k^2 - alpha/|x|) psi at each sample point."""

    max_relative_residual: float
    sample_points: tuple[tuple[float, float], ...]
    step: float
    method: str
    trivial: bool = False


def _value(res) -> complex:
    return res.value if isinstance(res, tuple) else complex(res)


def _five_point_second(f, x, h):
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h)


def _five_point_first(f, x, h):
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)


def ode_residual(solution: Callable, params: PhysicalParams, xs: Iterable[float],
                 h: float | None = None, method: str = "fd") -> ResidualReport:
    """Check that ``solution`` satisfies psi'' + (k^2 - alpha/|x|) psi = 0.

    Parameters
    ----------
    solution : callable
        x -> complex, or x -> (value, derivative).
    params : PhysicalParams
    xs : iterable of float
        Nonzero sample points.
    h : float, optional
        Relative step; the absolute step at x is h |x|.  Defaults to
        eps^(1/6) ~ 2.5e-3.
    method : {"fd", "analytic"}
        ``fd`` takes five-point second differences of the values;
        ``analytic`` differences the returned first derivative instead.
        Both apply one Richardson level (steps h and h/2).

    Returns
    -------
    ResidualReport
        Residuals normalized by |k^2 psi| + |alpha psi / x| + |psi''|.
        Points where that scale vanishes count as trivially satisfied.
    """
    if method not in ("fd", "analytic"):
        raise DomainError("method must be 'fd' or 'analytic'")
    rel = DEFAULT_STEP_FACTOR if h is None else float(h)
    if not rel > 0:
        raise DomainError("h must be positive")
    k2 = params.k * params.k
    alpha = params.alpha

    def evaluate(t):
        res = solution(t)
        v = _value(res)
        if not cmath.isfinite(v):
            raise NonFiniteError(f"non-finite solution value at x = {t!r}")
        return res

    def second(x, step):
        if method == "fd":
            return _five_point_second(lambda t: _value(evaluate(t)), x, step)
        return _five_point_first(lambda t: evaluate(t).derivative, x, step)

    points = []
    worst = 0.0
    all_trivial = True
    for x in xs:
        x = float(x)
        if x == 0:
            raise DomainError("sample points must avoid x = 0")
        step = rel * abs(x)
        psi = _value(evaluate(x))
        d1, d2 = second(x, step), second(x, step / 2)
        psi2 = d2 + (d2 - d1) / 15
        scale = abs(k2 * psi) + abs(alpha * psi / x) + abs(psi2)
        num = abs(psi2 + (k2 - alpha / abs(x)) * psi)
        if scale == 0:
            r = 0.0
        else:
            all_trivial = False
            r = num / scale
        points.append((x, r))
        worst = max(worst, r)
    return ResidualReport(worst, tuple(points), rel, method, all_trivial)


def solution_evaluator(sid: str, params: PhysicalParams) -> Callable[[float], ValueAndDerivative]:
    """x -> (value, derivative) of a fundamental solution."""
    return lambda x: fundamental_solution(sid, params, x)


def continued_evaluator(params: PhysicalParams, s: int = 1) -> Callable[[float], ValueAndDerivative]:
    """x -> (value, derivative) of plusV continued to winding ``s``."""
    return lambda x: continued_solution(params, x, s)


# ---------------------------------------------------------------------------
# identity suite


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    alpha: float
    k: float
    x: float
    error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.error <= self.tolerance


@dataclass(frozen=True)
class IdentityReport:
    checks: tuple[IdentityCheck, ...]
    failures: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def by_name(self, name: str) -> list[IdentityCheck]:
        return [c for c in self.checks if c.name == name]

    def worst(self, name: str | None = None) -> IdentityCheck:
        pool = self.checks if name is None else self.by_name(name)
        return max(pool, key=lambda c: c.error / c.tolerance)

    def names(self) -> list[str]:
        seen = []
        for c in self.checks:
            if c.name not in seen:
                seen.append(c.name)
        return seen

    def summary(self) -> dict:
        out = {}
        for name in self.names():
            w = self.worst(name)
            out[name] = {"passed": all(c.passed for c in self.by_name(name)),
                         "worst_error": w.error, "tolerance": w.tolerance,
                         "worst_point": {"alpha": w.alpha, "k": w.k, "x": w.x}}
        return out


# 4 couplings x 5 (k, x) pairs; |alpha/2k| <= 1.5 keeps |psi|^2 / |2k| moderate,
# which bounds the digits a double-precision Wronskian can resolve
DEFAULT_GRID: tuple[tuple[float, float, float], ...] = tuple(
    (a, k, x)
    for a in (-1.5, -0.5, 0.5, 1.5)
    for k, x in ((0.5, 1.0), (1.0, 0.5), (1.0, 2.0), (2.0, 1.0), (3.0, 0.3))
)

WRONSKIAN_TOL = 1e-8
ASYMPTOTIC_TOL = 0.02
ASYMPTOTIC_KX = (30.0, 100.0)


def _wronskian(f: ValueAndDerivative, g: ValueAndDerivative, conj_first: bool = False) -> complex:
    fv, fd = (f.value.conjugate(), f.derivative.conjugate()) if conj_first else (f.value, f.derivative)
    return fv * g.derivative - fd * g.value


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / abs(b)


def _asymptotic_ratio(sid: str, params: PhysicalParams, kx: float) -> complex:
    """psi / (leading asymptotic form) at |kx| = kx on the solution's half-axis.

    On x < 0 the logarithm ln(2kx) is read as ln(2k|x|) + i pi for the
    W-type and ln(2k|x|) - i pi for the V-type solution.
    """
    k = params.k.real
    y = params.alpha / (2 * k)
    x = kx / k
    if sid.startswith("minus"):
        x = -x
        ln = math.log(2 * kx) + (1j if sid == "minusW" else -1j) * math.pi
        phase = k * x + y * ln
    else:
        phase = k * x - y * math.log(2 * kx)
    sign = 1 if sid.endswith("W") else -1
    return fundamental_solution(sid, params, x).value / cmath.exp(sign * 1j * phase)


def identity_suite(grid: Sequence[tuple[float, float, float]] | None = None) -> IdentityReport:
    """Wronskian, conjugation and asymptotic identities on a grid of (alpha, k, x).

    Checked at every grid point (x > 0; the minus side uses -x):

    - ``W7``: W{plusW, plusV} = -2ik
    - ``W8``: W{minusW, minusV} = -2ik
    - ``kummer_MN``: W{M, N}(z) = (1-c) e^z z^-c with a = 1-p, c = 3/2, z = -2ikx
    - ``tricomi_UV``: W{U, V}(z) = e^{i pi eps(Im z)(c-a)} e^z z^-c with a = 1-p, c = 2
    - ``conj_VV``: W{plusV*, plusV} = -2ik
    - ``conj_WW``: W{plusW*, plusW} = 2ik
    - ``conj_VW``: W{plusV*, plusW} = 0, absolute tolerance 1e-8 |2k|
    - ``conj_map``: plusV* = plusW
    - ``asym_plusW`` ... ``asym_minusV``: the leading asymptotic ratio at
      kx = 100 is within 0.02 of 1, and its deviation scales like 1/x
      between kx = 30 and kx = 100 (within 25 %).

    Relative tolerance is 1e-8 for the identities.
    """
    grid = DEFAULT_GRID if grid is None else tuple(grid)
    checks: list[IdentityCheck] = []
    for alpha, k, x in grid:
        if alpha == 0 or not k > 0 or not x > 0:
            raise DomainError("grid points need alpha != 0, k > 0, x > 0")
        params = PhysicalParams.scattering(alpha, k)
        two_ik = 2j * k

        def add(name, err, tol=WRONSKIAN_TOL):
            checks.append(IdentityCheck(name, alpha, k, x, float(err), tol))

        pw = fundamental_solution("plusW", params, x)
        pv = fundamental_solution("plusV", params, x)
        mw = fundamental_solution("minusW", params, -x)
        mv = fundamental_solution("minusV", params, -x)
        add("W7", _rel(_wronskian(pw, pv), -two_ik))
        add("W8", _rel(_wronskian(mw, mv), -two_ik))

        a = 1 - params.p
        z = -two_ik * x
        mn = numeric_wronskian(lambda t: kummer_m(a, 1.5, t), lambda t: kummer_n(a, 1.5, t), z)
        add("kummer_MN", _rel(mn.value, (1 - 1.5) * cmath.exp(z) * principal_power(z, -1.5)))
        uv = tricomi_u(a, 2, z) * vee_prime(a, 2, z) - tricomi_u_prime(a, 2, z) * vee(a, 2, z)
        eps = 1 if z.imag > 0 else -1
        add("tricomi_UV", _rel(uv, cmath.exp(eps * 1j * math.pi * (2 - a)) * cmath.exp(z) / (z * z)))

        add("conj_VV", _rel(_wronskian(pv, pv, True), -two_ik))
        add("conj_WW", _rel(_wronskian(pw, pw, True), two_ik))
        add("conj_VW", abs(_wronskian(pv, pw, True)), WRONSKIAN_TOL * abs(2 * k))
        add("conj_map", _rel(pv.value.conjugate(), pw.value))

        for sid in ("plusW", "plusV", "minusW", "minusV"):
            lo, hi = (abs(_asymptotic_ratio(sid, params, kx) - 1) for kx in ASYMPTOTIC_KX)
            add(f"asym_{sid}", hi, ASYMPTOTIC_TOL)
            expected = ASYMPTOTIC_KX[1] / ASYMPTOTIC_KX[0]
            add(f"asym_{sid}_decay", abs((lo / hi) / expected - 1), 0.25)
    return IdentityReport(tuple(checks))


def continuation_group_error(s_values: Iterable[int] = range(-2, 3), p: complex = -0.4j) -> float:
    """max || M_s M_t - M_{s+t} || over pairs from ``s_values`` (max-entry norm)."""
    s_values = list(s_values)
    worst = 0.0
    for s in s_values:
        for t in s_values:
            ms = continuation_matrix(s, p).as_array()
            mt = continuation_matrix(t, p).as_array()
            mst = continuation_matrix(s + t, p).as_array()
            worst = max(worst, float(abs(ms @ mt - mst).max()))
    return worst


# ---------------------------------------------------------------------------
# reference evaluator


MAX_REFERENCE_DIGITS = 60


@dataclass(frozen=True)
class ReferenceValue:
    """Reference result; ``value`` is a complex/float or a tuple of them."""

    value: object
    certified_digits: int
    working_digits: int


def _mp_boundary_closed(vv, vw, alpha, k):
    vv, vw, alpha, k = mpmath.mpc(vv), mpmath.mpc(vw), mpmath.mpf(alpha), mpmath.mpf(k)
    e = mpmath.exp(mpmath.pi * alpha / k)
    den = 2 + vv * (1 + e) + vw * (1 - e)
    rg = mpmath.rgamma(1j * alpha / (2 * k))
    a_r = 4 * mpmath.pi * k * (1 + vw) * rg ** 2 / (alpha * den)
    b_r = (1 + e) * (1 + vv) / (mpmath.exp(mpmath.pi * alpha / (2 * k)) * den)
    v_minus = (4 + 3 * vv + 3 * vw + 2 * vv * vw + e * (vv - vw)) / den
    return a_r, b_r, v_minus


def _mp_branch_coeffs(s, p):
    p = mpmath.mpc(p)
    b_v = (s + 1) - s * mpmath.exp(2j * mpmath.pi * p)
    b_w = -2j * mpmath.pi * s * mpmath.exp(1j * mpmath.pi * p) * mpmath.rgamma(p) * mpmath.rgamma(1 + p)
    return b_v, b_w


def _mp_f2_abs2(alpha, k):
    alpha, k = mpmath.mpf(alpha), mpmath.mpf(k)
    t = mpmath.pi * alpha / (2 * k)
    return 2 * k / (mpmath.pi * alpha) * mpmath.exp(-t) * mpmath.sinh(t)


def _mp_delta_closed(alpha, k, x):
    alpha, k, x = mpmath.mpf(alpha), mpmath.mpf(k), mpmath.mpf(x)
    y = alpha / (2 * k)
    return -2 * alpha * (2 * mpmath.euler + mpmath.log(2 * k * x) + mpmath.re(mpmath.digamma(1j * y)))


def _mp_delta_series(alpha, k, x, terms):
    alpha, k, x = mpmath.mpf(alpha), mpmath.mpf(k), mpmath.mpf(x)
    y = alpha / (2 * k)
    # partial sum of y^2 / (n (n^2 + y^2)), n = 1..terms, via digamma differences
    # of the partial fractions 1/n - n/(n^2 + y^2)
    n1 = mpmath.mpf(terms) + 1
    part = (mpmath.digamma(n1) - mpmath.digamma(1)
            - mpmath.re(mpmath.digamma(n1 + 1j * y) - mpmath.digamma(1 + 1j * y)))
    return -2 * alpha * (mpmath.euler + mpmath.log(2 * k * x) + part)


def _mp_delta_asymptotic(alpha, k, x, terms):
    alpha, k, x = mpmath.mpf(alpha), mpmath.mpf(k), mpmath.mpf(x)
    y = alpha / (2 * k)
    s = mpmath.fsum((-1) ** (n - 1) * mpmath.bernoulli(2 * n) / (2 * n * y ** (2 * n))
                    for n in range(1, int(terms) + 1))
    return -2 * alpha * (2 * mpmath.euler + mpmath.log(alpha * x) + s)


def _mp_a_r_bound(alpha, kappa):
    alpha, kappa = mpmath.mpf(alpha), mpmath.mpf(kappa)
    k = 1j * kappa
    t = mpmath.pi * alpha / (2 * k)
    return 2 * mpmath.pi * k / alpha * mpmath.rgamma(1j * alpha / (2 * k)) ** 2 * mpmath.exp(t) / mpmath.sinh(t)


def _mp_whittaker(kind, p, m, z):
    if kind == "M":
        return mpmath.whitm(p, m, z)
    if kind == "W":
        return mpmath.whitw(p, m, z)
    raise DomainError("reference whittaker supports kinds 'M' and 'W'")


REFERENCE_EXPRESSIONS: dict[str, Callable] = {
    "gamma": lambda z: mpmath.gamma(z),
    "rgamma": lambda z: mpmath.rgamma(z),
    "digamma": lambda z: mpmath.digamma(z),
    "kummer_m": lambda a, c, z: mpmath.hyp1f1(a, c, z),
    "tricomi_u": lambda a, c, z: mpmath.hyperu(a, c, z),
    "whittaker": _mp_whittaker,
    "branch_coeffs": _mp_branch_coeffs,
    "boundary_closed": _mp_boundary_closed,
    "f2_abs2": _mp_f2_abs2,
    "delta_closed": _mp_delta_closed,
    "delta_series": _mp_delta_series,
    "delta_asymptotic": _mp_delta_asymptotic,
    "transmission_abs2": lambda alpha, k: mpmath.sech(mpmath.pi * mpmath.mpf(alpha) / (2 * mpmath.mpf(k))) ** 2,
    "reflection_abs2": lambda alpha, k: mpmath.tanh(mpmath.pi * mpmath.mpf(alpha) / (2 * mpmath.mpf(k))) ** 2,
    "a_r_bound": _mp_a_r_bound,
}


def _flatten(v) -> list:
    return list(v) if isinstance(v, tuple) else [v]


def _to_python(v):
    if isinstance(v, tuple):
        return tuple(_to_python(u) for u in v)
    if isinstance(v, mpmath.mpc):
        return complex(v)
    if isinstance(v, mpmath.mpf):
        return float(v)
    return v


def reference_eval(expr_id: str, inputs: Sequence, digits: int = 30, raw: bool = False) -> ReferenceValue:
    """Evaluate a registered expression with certified digits.

    The expression is evaluated at 2*digits and 2*digits + 10 working
    digits; the number of agreeing digits is certified.

    Parameters
    ----------
    expr_id : str
        A key of ``REFERENCE_EXPRESSIONS``.
    inputs : sequence
        Positional arguments of the expression.
    digits : int
        Requested digits, at most 60.
    raw : bool
        Return mpmath numbers (at the higher precision) instead of Python floats.

    Raises
    ------
    PrecisionExhaustedError
        If fewer than ``digits`` digits agree between the two precisions.
    """
    if expr_id not in REFERENCE_EXPRESSIONS:
        raise DomainError(f"unknown expression {expr_id!r}; known: {sorted(REFERENCE_EXPRESSIONS)}")
    if not 1 <= digits <= MAX_REFERENCE_DIGITS:
        raise DomainError(f"digits must be in [1, {MAX_REFERENCE_DIGITS}]")
    fn = REFERENCE_EXPRESSIONS[expr_id]
    low, high = 2 * digits, 2 * digits + 10
    with mpmath.workdps(low):
        v1 = fn(*inputs)
    with mpmath.workdps(high):
        v2 = fn(*inputs)
        certified = high
        for a, b in zip(_flatten(v1), _flatten(v2)):
            diff = abs(a - b)
            if diff == 0:
                continue
            scale = abs(b)
            if scale == 0:
                certified = min(certified, int(-mpmath.log10(diff)))
            else:
                certified = min(certified, int(-mpmath.log10(diff / scale)))
    if certified < digits:
        raise PrecisionExhaustedError(
            f"{expr_id}: only {certified} of {digits} digits agree between {low} and {high} working digits")
    value = v2 if raw else _to_python(v2)
    return ReferenceValue(value, min(certified, high), high)
