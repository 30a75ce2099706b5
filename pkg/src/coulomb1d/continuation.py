"""Analytic continuation of the Whittaker pair (V, W) around z = 0.

Going once around the branch point (z -> z e^{2 pi i s}) mixes V and W:

    [V(z e^{2 pi i s})]   [VV  VW] [V(z)]
    [W(z e^{2 pi i s})] = [WV  WW] [W(z)]

For half-integer order m = 1/2 the entries are polynomial in s and are
written with reciprocal Gamma functions, so they are entire in p.  The
identities assume z in the lower half-plane, where V is continuous with
its principal-branch definition through -z.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import BranchError, DomainError
from .specfun import gamma_complex, reciprocal_gamma
from .specfun.confluent import MAX_WINDING

NEAR_HALF = 1e-6


@dataclass(frozen=True)
class ContinuationCoeffs:
    """V_{p,1/2}(z e^{2 pi i s}) = b_V V_{p,1/2}(z) + b_W W_{p,1/2}(z)."""

    b_V: complex
    b_W: complex
    s: int
    p: complex


@dataclass(frozen=True)
class ContinuationMatrix:
    """2x2 map acting on the column (V, W); rows are (V, W) on the new sheet."""

    entries: tuple[tuple[complex, complex], tuple[complex, complex]]
    s: int
    p: complex
    m: complex

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=complex)

    def apply(self, v: complex, w: complex) -> tuple[complex, complex]:
        (a, b), (c, d) = self.entries
        return a * v + b * w, c * v + d * w


def _check_s(s) -> int:
    if isinstance(s, bool) or int(s) != s:
        raise BranchError("winding s must be an integer")
    s = int(s)
    if abs(s) > MAX_WINDING:
        raise BranchError(f"|s| must not exceed {MAX_WINDING}")
    return s


def branch_coeffs(s: int, p: complex) -> ContinuationCoeffs:
    """Continuation coefficients of V_{p,1/2} for winding s.

    b_V = (s + 1) - s e^{2 i pi p},
    b_W = -2 i pi s e^{i pi p} / (Gamma(p) Gamma(1 + p)).
    """
    s = _check_s(s)
    p = complex(p)
    if s == 0:
        return ContinuationCoeffs(1 + 0j, 0j, 0, p)
    b_v = (s + 1) - s * cmath.exp(2j * math.pi * p)
    b_w = -s * 2j * math.pi * cmath.exp(1j * math.pi * p) * reciprocal_gamma(p) * reciprocal_gamma(1 + p)
    return ContinuationCoeffs(b_v, b_w, s, p)


def _half_matrix(s: int, p: complex):
    e1 = cmath.exp(1j * math.pi * p)
    e2 = e1 * e1
    vv = (s + 1) - s * e2
    vw = -s * 2j * math.pi * e1 * reciprocal_gamma(p) * reciprocal_gamma(1 + p)
    wv = -s * 2j * math.pi * e1 * reciprocal_gamma(1 - p) * reciprocal_gamma(-p)
    ww = 1 - s * (1 - e2)
    return (vv, vw), (wv, ww)


def _generic_matrix(s: int, p: complex, m: complex):
    def sin_ratio(t):
        return cmath.sin(2 * math.pi * t * m) / cmath.sin(2 * math.pi * m)

    sign = (-1) ** s
    e2p = cmath.exp(2j * math.pi * p)
    vv = sign * (e2p * sin_ratio(s) + sin_ratio(s + 1))
    vw = -sign * sin_ratio(s) * 2 * math.pi * cmath.exp(1j * math.pi * (p - m)) / (
        gamma_complex(0.5 - m + p) * gamma_complex(0.5 + m + p))
    ww = -sign * (e2p * sin_ratio(s) + sin_ratio(s - 1))
    wv = sign * sin_ratio(s) * 2 * math.pi * cmath.exp(1j * math.pi * (p + m)) / (
        gamma_complex(0.5 + m - p) * gamma_complex(0.5 - m - p))
    return (vv, vw), (wv, ww)


def continuation_matrix(s: int, p: complex, m: complex = 0.5) -> ContinuationMatrix:
    """Continuation matrix for the pair (V_{p,m}, W_{p,m}).

    Parameters
    ----------
    s : int
        Winding number, |s| <= 8.
    p, m : complex
        Whittaker indices.  m = 1/2 uses the exact limit; other m with
        2m not an integer use the general trigonometric form.

    Warns
    -----
    RuntimeWarning
        If m is within 1e-6 of 1/2 but not equal; the limit form is used.
    """
    s = _check_s(s)
    p, m = complex(p), complex(m)
    if s == 0:
        return ContinuationMatrix(((1 + 0j, 0j), (0j, 1 + 0j)), 0, p, m)
    if m == 0.5:
        return ContinuationMatrix(_half_matrix(s, p), s, p, m)
    if abs(m - 0.5) < NEAR_HALF:
        warnings.warn(f"m = {m} is within {NEAR_HALF:g} of 1/2; using the m = 1/2 limit",
                      RuntimeWarning, stacklevel=2)
        return ContinuationMatrix(_half_matrix(s, p), s, p, m)
    two_m = 2 * m
    if two_m.imag == 0 and two_m.real == math.floor(two_m.real):
        raise DomainError("only m = 1/2 is supported among integer values of 2m")
    return ContinuationMatrix(_generic_matrix(s, p, m), s, p, m)
