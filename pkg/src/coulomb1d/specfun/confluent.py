"""Confluent hypergeometric functions M, N, U and V.

U(a, c, z) for integer c is evaluated in three regions of |z|:

* ``|z| < log_expansion_threshold``: the logarithmic series in double precision;
* ``|z| >= asymptotic_threshold``: the divergent asymptotic series in 1/z with
  optimal truncation, falling back to the next option when its error estimate
  misses ``accuracy_goal``;
* otherwise: the same logarithmic series summed in mpmath arithmetic at a
  working precision chosen from the observed cancellation.

The logarithmic series also accepts a winding number ``s``, i.e. it evaluates
U on the sheet reached from the principal one by ``z -> z exp(2 pi i s)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import mpmath

from ..errors import (
    BranchError,
    DomainError,
    NonConvergenceError,
    NonFiniteError,
    PoleError,
    UnreachableAccuracyError,
)
from .gamma import DOUBLE, Backend, digamma_generic, is_nonpositive_integer, mp_backend, rgamma_generic

MAX_WINDING = 8


@dataclass(frozen=True)
class EvalPolicy:
    """Region thresholds and tolerances for confluent-function evaluation.

    Attributes
    ----------
    series_max_terms : int
        Hard cap on the number of series terms.
    series_rel_tol : float
        Stop once three consecutive terms are below this fraction of the sum.
    asymptotic_threshold : float
        |z| at and above which the asymptotic series is tried.
    log_expansion_threshold : float
        |z| below which the double-precision logarithmic series is used.
    extended_digits : int
        Starting decimal precision of the gap-region series.
    max_extended_digits : int
        Precision cap; beyond it the gap region raises
        :class:`UnreachableAccuracyError`.
    accuracy_goal : float
        Relative accuracy demanded from asymptotic and extended evaluations.
    """

    series_max_terms: int = 500
    series_rel_tol: float = 1e-16
    asymptotic_threshold: float = 30.0
    log_expansion_threshold: float = 8.0
    extended_digits: int = 32
    max_extended_digits: int = 120
    accuracy_goal: float = 1e-13

    def __post_init__(self):
        if not self.series_rel_tol > 0:
            raise DomainError("series_rel_tol must be positive")
        if not self.log_expansion_threshold < self.asymptotic_threshold:
            raise DomainError("log_expansion_threshold must be below asymptotic_threshold")
        if self.series_max_terms < 1:
            raise DomainError("series_max_terms must be >= 1")
        if self.extended_digits < 32:
            raise DomainError("extended_digits must be at least twice double precision (32)")
        if self.max_extended_digits < self.extended_digits:
            raise DomainError("max_extended_digits must be >= extended_digits")


DEFAULT_POLICY = EvalPolicy()


@dataclass(frozen=True)
class UReport:
    """Value of U together with how it was obtained."""

    value: complex
    region: str  # "log-series", "extended-series", "asymptotic", "polynomial"
    rel_error_estimate: float
    digits: int
    terms: int


def principal(z) -> complex:
    """Coerce to complex with signed zeros removed, so arg z lies in (-pi, pi]."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise NonFiniteError(f"non-finite argument {z}")
    return complex(z.real + 0.0, z.imag + 0.0)


def negate(z: complex) -> complex:
    """-z on the principal branch (a positive real z maps to arg pi, not -pi)."""
    return complex(-z.real + 0.0, -z.imag + 0.0)


def principal_power(z: complex, w: complex, winding: int = 0) -> complex:
    """z**w = exp(w (ln|z| + i arg z + 2 pi i winding))."""
    if z == 0:
        if w.real > 0:
            return 0j
        raise DomainError("0 raised to a power with non-positive real part")
    return cmath.exp(w * (cmath.log(z) + 2j * math.pi * winding))


def _is_integer(x: complex) -> bool:
    return x.imag == 0.0 and x.real == math.floor(x.real)


def _check_winding(winding: int) -> None:
    if int(winding) != winding:
        raise BranchError("winding must be an integer")
    if abs(winding) > MAX_WINDING:
        raise BranchError(f"|winding| must not exceed {MAX_WINDING}")


def kummer_m(a: complex, c: complex, z: complex, policy: EvalPolicy = DEFAULT_POLICY) -> complex:
    """Kummer function M(a, c, z) = sum (a)_s z^s / ((c)_s s!).

    For Re z < 0 the series is summed for e^z M(c-a, c, -z), which has no
    alternating cancellation.

    Raises
    ------
    PoleError
        If c is a non-positive integer.
    NonConvergenceError
        If ``policy.series_max_terms`` terms do not reach the tolerance.
    """
    a, c, z = complex(a), complex(c), principal(z)
    if is_nonpositive_integer(c):
        raise PoleError(f"M(a, c, z) undefined for c = {c}")
    if z.real < 0:
        return cmath.exp(z) * _m_series(c - a, c, -z, policy)
    return _m_series(a, c, z, policy)


def _m_series(a: complex, c: complex, z: complex, policy: EvalPolicy) -> complex:
    total = 1 + 0j
    term = 1 + 0j
    small = 0
    for s in range(policy.series_max_terms):
        term *= (a + s) / ((c + s) * (s + 1)) * z
        total += term
        if abs(term) < policy.series_rel_tol * abs(total) or term == 0:
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
    raise NonConvergenceError(f"M({a}, {c}, {z}) needs more than {policy.series_max_terms} terms")


def kummer_n(a: complex, c: complex, z: complex, policy: EvalPolicy = DEFAULT_POLICY) -> complex:
    """Second Kummer solution N(a, c, z) = z^(1-c) M(1+a-c, 2-c, z)."""
    a, c, z = complex(a), complex(c), principal(z)
    if _is_integer(c) and c.real >= 2:
        raise DomainError(f"N(a, c, z) undefined for c = {c.real:g} (2 - c is a pole of M)")
    if z == 0 and (1 - c).real < 0:
        raise DomainError("N(a, c, 0) diverges for Re(1 - c) < 0")
    return principal_power(z, 1 - c) * kummer_m(1 + a - c, 2 - c, z, policy)


# ---------------------------------------------------------------------------
# Tricomi U


def _poch(x, n: int, one):
    out = one
    for j in range(n):
        out = out * (x + j)
    return out


def _u_log_series(a, r: int, z, winding: int, bk: Backend, tol: float, max_terms: int):
    """Logarithmic expansion of U(a, r, z) for integer r >= 1.

    Returns (value, largest term magnitude, terms used).
    """
    one = bk.one
    lnz = bk.log(z) + 2j * bk.pi * winding
    biggest = 0.0

    pole = 0 * one
    if r >= 2:
        inv_z = one / z
        zpow = one
        acc = 0 * one
        for s in range(1, r):
            zpow = zpow * inv_z
            coef = math.factorial(s - 1) * _poch(1 - a + s, r - 1 - s, one) / math.factorial(r - 1 - s)
            acc = acc + coef * zpow
        pole = rgamma_generic(a, bk) * acc
        biggest = abs(complex(pole))

    lam0 = (-1) ** r * rgamma_generic(1 + a - r, bk) / math.factorial(r - 1)
    if complex(lam0) == 0:
        return pole, biggest, 0

    harmonic = sum((one / j for j in range(1, r)), 0 * one)
    mu = digamma_generic(a, bk) + 2 * bk.euler - harmonic
    term = one
    total = lnz + mu
    biggest = max(biggest, abs(complex(lam0 * total)))
    small = 0
    for s in range(max_terms):
        mu = mu + one / (a + s) - one / (s + 1) - one / (r + s)
        term = term * (a + s) / ((r + s) * (s + 1)) * z
        piece = term * (lnz + mu)
        total = total + piece
        mag = abs(complex(piece))
        biggest = max(biggest, abs(complex(lam0)) * mag)
        if mag < tol * abs(complex(total)) or mag == 0:
            small += 1
            if small >= 3:
                return lam0 * total + pole, biggest, s + 2
        else:
            small = 0
    raise NonConvergenceError(f"U log series at |z| = {abs(complex(z)):.3g} exceeded {max_terms} terms")


def _u_polynomial(n: int, c: int, z: complex) -> complex:
    """U(-n, c, z), a polynomial of degree n."""
    total = 0j
    term = 1 + 0j
    for s in range(n + 1):
        total += term
        term *= -(-n + s) * (1 - n - c + s) / ((s + 1) * z)
    return z ** n * total


def _u_asymptotic(a: complex, c: int, z: complex, policy: EvalPolicy):
    """Optimally truncated asymptotic series; returns (value, rel error, terms)."""
    total = 1 + 0j
    term = 1 + 0j
    prev = math.inf
    small = 0
    used = 0
    for s in range(policy.series_max_terms):
        nxt = term * -(a + s) * (1 + a - c + s) / ((s + 1) * z)
        mag = abs(nxt)
        if mag > prev or mag > abs(term):
            err = abs(term)
            return principal_power(z, -a) * total, err / max(abs(total), 1e-300), used
        total += nxt
        term = nxt
        prev = mag
        used = s + 1
        if mag <= policy.series_rel_tol * abs(total):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    return principal_power(z, -a) * total, abs(term) / max(abs(total), 1e-300), used


def _u_extended(a: complex, r: int, z: complex, winding: int, policy: EvalPolicy) -> UReport:
    dps = policy.extended_digits
    goal = policy.accuracy_goal
    for _ in range(4):
        with mpmath.workdps(dps):
            bk = mp_backend()
            tol = mpmath.mpf(10) ** (-dps)
            value, biggest, used = _u_log_series(
                mpmath.mpc(a), r, mpmath.mpc(z), winding, bk, float(tol),
                max(policy.series_max_terms, int(6 * abs(z)) + 200))
            mag = abs(value)
            rel = float(10 * biggest * tol / mag) if mag else math.inf
            result = complex(value)
        if rel <= goal:
            return UReport(result, "extended-series", rel, dps, used)
        lost = math.log10(max(biggest, 1e-300)) - math.log10(max(float(mag), 1e-300)) if mag else 20.0
        need = int(math.ceil(lost - math.log10(goal))) + 6
        if dps >= policy.max_extended_digits:
            break
        dps = min(max(need, dps + 10), policy.max_extended_digits)
    raise UnreachableAccuracyError(
        f"U({a}, {r}, {z}): estimated relative error {rel:.2e} at {dps} digits exceeds {goal:.1e}")


def tricomi_u_report(a: complex, c: int, z: complex, policy: EvalPolicy = DEFAULT_POLICY,
                     winding: int = 0) -> UReport:
    """Tricomi U(a, c, z) for integer c, with a description of the evaluation.

    Parameters
    ----------
    a : complex
    c : int
        Integer second parameter.
    z : complex
        Nonzero argument on the principal branch.
    policy : EvalPolicy
    winding : int
        Sheet index s; the value returned is U(a, c, z exp(2 pi i s)).

    Returns
    -------
    UReport
    """
    a, z = complex(a), principal(z)
    if int(c) != c:
        raise DomainError("tricomi_u supports integer c only")
    c = int(c)
    _check_winding(winding)
    if z == 0:
        raise DomainError("U(a, c, z) is singular at z = 0")

    if is_nonpositive_integer(a):
        return UReport(_u_polynomial(int(-a.real), c, z), "polynomial", 0.0, 16, int(-a.real) + 1)

    if c <= 0:
        # Kummer transformation to a positive second parameter; integer power is single valued
        inner = tricomi_u_report(a - c + 1, 2 - c, z, policy, winding)
        return UReport(z ** (1 - c) * inner.value, inner.region, inner.rel_error_estimate,
                       inner.digits, inner.terms)

    size = abs(z)
    if size >= policy.asymptotic_threshold and winding == 0:
        value, rel, used = _u_asymptotic(a, c, z, policy)
        if rel <= policy.accuracy_goal:
            return UReport(value, "asymptotic", rel, 16, used)
    if size < policy.log_expansion_threshold:
        value, biggest, used = _u_log_series(a, c, z, winding, DOUBLE, policy.series_rel_tol,
                                             policy.series_max_terms)
        # rounding grows roughly linearly along the term recurrence
        rel = 1.1e-16 * biggest * max(used, 1) / abs(value) if value != 0 else math.inf
        if rel <= policy.accuracy_goal:
            return UReport(value, "log-series", rel, 16, used)
    return _u_extended(a, c, z, winding, policy)


def tricomi_u(a: complex, c: int, z: complex, policy: EvalPolicy = DEFAULT_POLICY,
              winding: int = 0) -> complex:
    """Tricomi confluent hypergeometric function U(a, c, z) for integer c.

    See :func:`tricomi_u_report` for parameters and the region policy.
    """
    return tricomi_u_report(a, c, z, policy, winding).value


def tricomi_u_prime(a: complex, c: int, z: complex, policy: EvalPolicy = DEFAULT_POLICY,
                    winding: int = 0) -> complex:
    """dU/dz = -a U(a+1, c+1, z)."""
    return -complex(a) * tricomi_u(complex(a) + 1, c + 1, z, policy, winding)


def vee(a: complex, c: int, z: complex, policy: EvalPolicy = DEFAULT_POLICY, winding: int = 0) -> complex:
    """V(a, c, z) = e^z U(c - a, c, -z), with -z on the principal branch.

    ``winding`` continues the argument of U, i.e. the result corresponds to
    z exp(2 pi i s).
    """
    z = principal(z)
    return cmath.exp(z) * tricomi_u(c - complex(a), c, negate(z), policy, winding)


def vee_prime(a: complex, c: int, z: complex, policy: EvalPolicy = DEFAULT_POLICY,
              winding: int = 0) -> complex:
    """dV/dz = e^z [U(c-a, c, -z) + (c-a) U(c-a+1, c+1, -z)]."""
    z = principal(z)
    b = c - complex(a)
    w = negate(z)
    return cmath.exp(z) * (tricomi_u(b, c, w, policy, winding) + b * tricomi_u(b + 1, c + 1, w, policy, winding))
