"""Bound states as zeros of the incoming amplitude on the imaginary momentum axis.

With k = i kappa and z = alpha / 2 kappa the amplitude of the real extension is

    A(kappa) = (2 pi k / alpha) Gamma(z)^-2 e^{pi alpha/2k} cosech(pi alpha/2k)
             = -(2 kappa / alpha) e^{-i pi z} Gamma(1 - z) / Gamma(z).

The second form is pole-free for z < 1 and vanishes exactly where
1/Gamma(z) does, at z = -n, i.e. kappa_n = |alpha| / 2n for alpha < 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .errors import DomainError, PoleError, VerificationError
from .scattering import ARG2K_BOUND, PhysicalParams
from .specfun import gamma_complex, reciprocal_gamma


@dataclass(frozen=True)
class BoundState:
    """Level n with k = i kappa and energy E = -kappa^2.

    ``residual`` is the size of one Newton step at the root relative to
    kappa, which is scale-free unlike the raw amplitude.
    """

    n: int
    kappa: float
    E: float
    residual: float


def _axis_variable(params: PhysicalParams) -> float:
    if params.arg2k != ARG2K_BOUND:
        raise DomainError("a_r_bound lives on the positive imaginary k axis (arg2k = pi/2)")
    if params.alpha == 0:
        raise DomainError("alpha must be nonzero")
    return params.alpha / (2 * params.k.imag)


def _real_amplitude(alpha: float, kappa: float) -> float:
    """A(kappa) e^{i pi z}, real on the axis."""
    z = alpha / (2 * kappa)
    if z >= 1 and z == math.floor(z):
        raise PoleError(f"amplitude has a pole at alpha/2kappa = {z:g}")
    g = gamma_complex(1 - z).real
    return -(2 * kappa / alpha) * g * reciprocal_gamma(z).real


def a_r_bound(params: PhysicalParams) -> complex:
    """Incoming amplitude of the real extension at k = i kappa.

    Raises
    ------
    PoleError
        Where the cosech factor is singular without a compensating zero
        (alpha/2kappa a positive integer, only for alpha > 0).
    """
    z = _axis_variable(params)
    return cmath.exp(-1j * math.pi * z) * _real_amplitude(params.alpha, params.k.imag)


def _newton_step(alpha: float, kappa: float) -> float:
    h = 1e-7 * kappa
    slope = (_real_amplitude(alpha, kappa + h) - _real_amplitude(alpha, kappa - h)) / (2 * h)
    return abs(_real_amplitude(alpha, kappa) / slope) / kappa


def bound_spectrum(alpha: float, n_max: int, xtol: float = 1e-15) -> list[BoundState]:
    """Bound states n = 1..n_max, each confirmed by a bracketed zero search.

    Returns an empty list for alpha >= 0 (no zeros on the axis).

    Raises
    ------
    VerificationError
        If the amplitude does not change sign across the bracket
        [kappa_n (1 - 0.3/n), kappa_n (1 + 0.3/n)].
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    alpha = float(alpha)
    if alpha >= 0:
        return []
    states = []
    for n in range(1, n_max + 1):
        kappa_n = abs(alpha) / (2 * n)
        lo, hi = kappa_n * (1 - 0.3 / n), kappa_n * (1 + 0.3 / n)
        f_lo, f_hi = _real_amplitude(alpha, lo), _real_amplitude(alpha, hi)
        if f_lo * f_hi >= 0:
            raise VerificationError(f"no sign change around kappa_{n} = {kappa_n:g}")
        kappa = brentq(lambda q: _real_amplitude(alpha, q), lo, hi, xtol=xtol * kappa_n, rtol=1e-15)
        residual = _newton_step(alpha, kappa)
        states.append(BoundState(n, kappa, -kappa * kappa, residual))
    return states


def scan_sign_changes(alpha: float, kappa_min: float, kappa_max: float, samples: int = 2000) -> list[float]:
    """Midpoints of sign changes of the amplitude on a logarithmic kappa grid.

    A diagnostic for zeros away from kappa_n; it makes no completeness claim.
    """
    if not 0 < kappa_min < kappa_max:
        raise DomainError("need 0 < kappa_min < kappa_max")
    grid = [kappa_min * (kappa_max / kappa_min) ** (i / (samples - 1)) for i in range(samples)]
    out = []
    prev = None
    for q in grid:
        try:
            val = _real_amplitude(alpha, q)
        except PoleError:
            prev = None
            continue
        if prev is not None and prev[1] * val < 0:
            out.append(0.5 * (prev[0] + q))
        prev = (q, val)
    return out
