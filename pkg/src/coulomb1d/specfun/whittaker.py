"""Whittaker functions M, W, V and the numeric Wronskian.

All three share the prefactor e^{-z/2} z^{m+1/2}:

    M_{p,m}(z) = e^{-z/2} z^{m+1/2} M(m-p+1/2, 2m+1, z)
    W_{p,m}(z) = e^{-z/2} z^{m+1/2} U(m-p+1/2, 2m+1, z)
    V_{p,m}(z) = e^{-z/2} z^{m+1/2} V(m-p+1/2, 2m+1, z)

When 2m+1 is an integer, W and V go through the integer-parameter U kernel.
Otherwise they are assembled from M_{p,m} and M_{p,-m}.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

from ..errors import DomainError, NonFiniteError, PoleError
from .confluent import (
    DEFAULT_POLICY,
    EvalPolicy,
    _check_winding,
    kummer_m,
    negate,
    principal,
    principal_power,
    tricomi_u,
    vee,
)
from .gamma import (
    DOUBLE,
    Backend,
    digamma_generic,
    gamma_complex,
    is_nonpositive_integer,
    reciprocal_gamma,
    rgamma_generic,
)

KINDS = ("M", "W", "V")


def _prefactor(p, m, z, winding):
    return cmath.exp(-z / 2) * principal_power(z, m + 0.5, winding)


def _half_integer_order(m: complex) -> bool:
    c = 2 * m + 1
    return c.imag == 0.0 and c.real == math.floor(c.real)


def whittaker(kind: str, p: complex, m: complex, z: complex,
              policy: EvalPolicy = DEFAULT_POLICY, winding: int = 0) -> complex:
    """Whittaker function of the given kind.

    Parameters
    ----------
    kind : {"M", "W", "V"}
    p, m : complex
        First and second indices.
    z : complex
        Argument on the principal branch, arg z in (-pi, pi].
    policy : EvalPolicy
    winding : int, optional
        Evaluate on the sheet z exp(2 pi i winding).

    Returns
    -------
    complex
    """
    if kind not in KINDS:
        raise DomainError(f"kind must be one of {KINDS}")
    p, m, z = complex(p), complex(m), principal(z)
    _check_winding(winding)
    if z == 0:
        raise DomainError("Whittaker functions are evaluated at z != 0")
    if kind == "M":
        if is_nonpositive_integer(2 * m + 1):
            raise PoleError("M_{p,m} requires 2m != -1, -2, ...")
        return _prefactor(p, m, z, winding) * kummer_m(m - p + 0.5, 2 * m + 1, z, policy)
    if _half_integer_order(m):
        c = int(round((2 * m + 1).real))
        a = m - p + 0.5
        pre = _prefactor(p, m, z, winding)
        if kind == "W":
            return pre * tricomi_u(a, c, z, policy, winding)
        return pre * vee(a, c, z, policy, winding)
    return _from_m_pair(kind, p, m, z, policy, winding)


def _from_m_pair(kind, p, m, z, policy, winding):
    """W or V from M_{p,m} and M_{p,-m} (2m not an integer)."""
    mp_ = whittaker("M", p, m, z, policy)
    mm_ = whittaker("M", p, -m, z, policy)
    if winding:
        mp_ *= cmath.exp(2j * math.pi * winding * (m + 0.5))
        mm_ *= cmath.exp(2j * math.pi * winding * (0.5 - m))
    if kind == "W":
        return (gamma_complex(-2 * m) * reciprocal_gamma(0.5 - m - p) * mp_
                + gamma_complex(2 * m) * reciprocal_gamma(0.5 + m - p) * mm_)
    # the phase of the second term depends on the half-plane of z, because
    # V is defined through the principal branch of -z
    upper = z.imag > 0 or (z.imag == 0 and z.real < 0)
    phase = cmath.exp((2j if upper else -2j) * math.pi * m)
    return (gamma_complex(-2 * m) * reciprocal_gamma(0.5 - m + p) * mp_
            + gamma_complex(2 * m) * phase * reciprocal_gamma(0.5 + m + p) * mm_)


def whittaker_half(kind: str, p: complex, z: complex, policy: EvalPolicy = DEFAULT_POLICY,
                   winding: int = 0) -> tuple[complex, complex]:
    """Value and z-derivative of W_{p,1/2} or V_{p,1/2}.

    The derivative is obtained from dU/dz = -a U(a+1, c+1, z), not by
    differencing.
    """
    p, z = complex(p), principal(z)
    _check_winding(winding)
    if z == 0:
        raise DomainError("z must be nonzero")
    if kind == "W":
        a = 1 - p
        u2 = tricomi_u(a, 2, z, policy, winding)
        u3 = tricomi_u(a + 1, 3, z, policy, winding)
        e = cmath.exp(-z / 2)
        return e * z * u2, e * ((1 - z / 2) * u2 - a * z * u3)
    if kind == "V":
        b = 1 + p
        w = negate(z)
        u2 = tricomi_u(b, 2, w, policy, winding)
        u3 = tricomi_u(b + 1, 3, w, policy, winding)
        e = cmath.exp(z / 2)
        return e * z * u2, e * ((1 + z / 2) * u2 + b * z * u3)
    raise DomainError("whittaker_half supports kinds 'W' and 'V'")


@dataclass(frozen=True)
class OriginStructure:
    """Behaviour of W_{q,1/2}(z) at z -> 0 on the principal branch.

    W(z) = value + O(z ln z) and dW/dz = log_coeff * ln z + const + O(z ln z).
    """

    value: complex
    log_coeff: complex
    const: complex


def whittaker_w_origin(q: complex, backend: Backend = DOUBLE) -> OriginStructure:
    """Constant and logarithmic parts of W_{q,1/2} at the origin.

    Read off from the logarithmic expansion of U(1-q, 2, z):
    value 1/Gamma(1-q); derivative coefficients 1/Gamma(-q) for ln z and
    [1 + psi(1-q) + 2 gamma_E - 1] / Gamma(-q) - 1/(2 Gamma(1-q)).

    With ``backend=mp_backend()`` the fields are mpmath numbers at the
    current working precision.
    """
    a = 1 - q
    w0 = rgamma_generic(a, backend)
    lam0 = rgamma_generic(a - 1, backend)
    if complex(lam0) == 0:
        return OriginStructure(w0, 0 * backend.one, -w0 / 2)
    mu0 = digamma_generic(a, backend) + 2 * backend.euler - 1
    return OriginStructure(w0, lam0, lam0 * (1 + mu0) - w0 / 2)


@dataclass(frozen=True)
class WronskianEstimate:
    value: complex
    error_estimate: float


def _derivative(f: Callable, z: complex, h: float) -> tuple[complex, float]:
    def central(step):
        fp, fm = f(z + step), f(z - step)
        for v in (fp, fm):
            if not cmath.isfinite(v):
                raise NonFiniteError(f"non-finite sample near z = {z}")
        return (fp - fm) / (2 * step)

    d1 = central(h)
    d2 = central(h / 2)
    rich = (4 * d2 - d1) / 3
    return rich, abs(rich - d2)


def numeric_wronskian(f: Callable, g: Callable, z: complex, h: float | None = None) -> WronskianEstimate:
    """Wronskian f g' - f' g by central differences with one Richardson step.

    Parameters
    ----------
    f, g : callable
        Functions of one (complex) variable.
    z : complex
        Evaluation point.
    h : float, optional
        Step along the real direction; default 1e-3 max(|z|, 1e-3).

    Returns
    -------
    WronskianEstimate
        The value and a crude error estimate from the Richardson correction.
    """
    z = complex(z)
    if h is None:
        h = 1e-3 * max(abs(z), 1e-3)
    if not h > 0:
        raise DomainError("h must be positive")
    fz, gz = f(z), g(z)
    if not (cmath.isfinite(fz) and cmath.isfinite(gz)):
        raise NonFiniteError(f"non-finite sample at z = {z}")
    df, ef = _derivative(f, z, h)
    dg, eg = _derivative(g, z, h)
    return WronskianEstimate(fz * dg - df * gz, abs(fz) * eg + abs(gz) * ef)
