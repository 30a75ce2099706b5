"""Gamma, reciprocal Gamma and digamma for complex arguments.

Both functions use the Stirling series after an upward shift of the argument,
plus reflection for Re z < 1/2.  The same code runs on two numeric backends:
Python complex for the public double-precision API, and ``mpmath.mpc`` for the
extended-precision series used by :mod:`coulomb1d.specfun.confluent`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath
import numpy as np

from ..errors import DomainError, GammaOverflowError, PoleError

EULER_GAMMA = 0.57721566490153286060651209008240243

#: Exact Bernoulli numbers B_2 ... B_30 (odd ones beyond B_1 vanish).
BERNOULLI: dict[int, Fraction] = {
    2: Fraction(1, 6),
    4: Fraction(-1, 30),
    6: Fraction(1, 42),
    8: Fraction(-1, 30),
    10: Fraction(5, 66),
    12: Fraction(-691, 2730),
    14: Fraction(7, 6),
    16: Fraction(-3617, 510),
    18: Fraction(43867, 798),
    20: Fraction(-174611, 330),
    22: Fraction(854513, 138),
    24: Fraction(-236364091, 2730),
    26: Fraction(8553103, 6),
    28: Fraction(-23749461029, 870),
    30: Fraction(8615841276005, 14322),
}


@dataclass(frozen=True)
class Backend:
    """Elementary operations and constants for one working precision."""

    name: str
    exp: Callable
    expm1: Callable
    log: Callable
    sin: Callable
    cos: Callable
    pi: object
    one: object
    digits: float
    euler: object
    convert: Callable  # Fraction or number -> backend scalar

    def stirling_radius(self) -> float:
        """|w| beyond which 15 Stirling terms reach the backend precision."""
        return max(20.0, 10.0 ** ((self.digits + 6.0) / 29.0))


def _cexpm1(w: complex) -> complex:
    """e^w - 1 without cancellation for small |w|."""
    a, b = w.real, w.imag
    half = math.sin(b / 2)
    return complex(math.expm1(a) * math.cos(b) - 2 * half * half, math.exp(a) * math.sin(b))


DOUBLE = Backend(
    name="double",
    exp=cmath.exp,
    expm1=_cexpm1,
    log=cmath.log,
    sin=cmath.sin,
    cos=cmath.cos,
    pi=math.pi,
    one=1.0,
    digits=16.0,
    euler=EULER_GAMMA,
    convert=lambda q: complex(float(q)) if isinstance(q, Fraction) else complex(q),
)


def mp_backend() -> Backend:
    """Backend bound to the *current* ``mpmath.mp`` precision."""
    return Backend(
        name="mpmath",
        exp=mpmath.exp,
        expm1=mpmath.expm1,
        log=mpmath.log,
        sin=mpmath.sin,
        cos=mpmath.cos,
        pi=+mpmath.pi,
        one=mpmath.mpf(1),
        digits=float(mpmath.mp.dps),
        euler=+mpmath.euler,
        convert=lambda q: (mpmath.mpf(q.numerator) / q.denominator
                           if isinstance(q, Fraction) else mpmath.mpmathify(q)),
    )


def _real_imag(z) -> tuple[float, float]:
    return float(z.real), float(z.imag)


def is_nonpositive_integer(z) -> bool:
    re, im = _real_imag(z)
    return im == 0.0 and re <= 0.0 and re == math.floor(re)


def _reduce(z):
    """Split z = n + d with n the nearest integer; d is exact."""
    n = round(float(z.real))
    return n, z - n


def _log_sin_pi(z, bk: Backend):
    """log(sin(pi z)) on any branch, stable for large |Im z| and near integers."""
    n, d = _reduce(z)
    shift = 1j * bk.pi * n  # sin(pi (n + d)) = (-1)^n sin(pi d)
    im = float(d.imag)
    if im > 0.0:
        return -1j * bk.pi * d + bk.log(-bk.expm1(2j * bk.pi * d)) + bk.log(0.5j) + shift
    if im < 0.0:
        return 1j * bk.pi * d + bk.log(-bk.expm1(-2j * bk.pi * d)) + bk.log(-0.5j) + shift
    return bk.log(bk.sin(bk.pi * d) + 0j) + shift


def _cot_pi(z, bk: Backend):
    _, d = _reduce(z)
    im = float(d.imag)
    if im > 0.0:
        m1 = bk.expm1(2j * bk.pi * d)
        return -1j * (2 + m1) / (-m1)
    if im < 0.0:
        m1 = bk.expm1(-2j * bk.pi * d)
        return 1j * (2 + m1) / (-m1)
    return bk.cos(bk.pi * d) / bk.sin(bk.pi * d)


def _shift_count(z, radius: float) -> int:
    re, im = _real_imag(z)
    if abs(complex(re, im)) >= radius:
        return 0
    return max(0, math.ceil(radius - re))


def _loggamma_right(z, bk: Backend):
    """log Gamma(z) for Re z >= 1/2 (branch irrelevant: only exp() is used)."""
    n = _shift_count(z, bk.stirling_radius())
    prod = bk.one
    for j in range(n):
        prod = prod * (z + j)
    w = z + n
    half_log_2pi = bk.log(2 * bk.pi) / 2
    acc = (w - bk.one / 2) * bk.log(w) - w + half_log_2pi
    inv = 1 / w
    inv2 = inv * inv
    power = inv
    for k in range(2, 31, 2):
        acc = acc + bk.convert(BERNOULLI[k]) / (k * (k - 1)) * power
        power = power * inv2
    return acc - bk.log(prod)


def loggamma(z, bk: Backend = DOUBLE):
    """A logarithm of Gamma(z); only its exponential is meaningful."""
    if is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at z = {complex(z)}")
    if float(z.real) < 0.5:
        return bk.log(bk.pi) - _log_sin_pi(z, bk) - _loggamma_right(1 - z, bk)
    return _loggamma_right(z, bk)


def _check_overflow(lg) -> None:
    if float(lg.real) > 709.0:
        raise GammaOverflowError("|Gamma(z)| exceeds the double range")


def gamma_complex(z: complex) -> complex:
    """Gamma function of a complex argument.

    Parameters
    ----------
    z : complex
        Argument; must not be a non-positive integer.

    Returns
    -------
    complex
        Gamma(z), accurate to about 13 significant digits for
        ``|Re z|, |Im z| <= 50``.

    Raises
    ------
    PoleError
        At z = 0, -1, -2, ...
    GammaOverflowError
        If |Gamma(z)| is not representable.
    """
    z = complex(z)
    _check_finite(z)
    re = z.real
    if z.imag == 0.0 and re == math.floor(re) and 0 < re <= 171:
        return complex(math.factorial(int(re) - 1))
    lg = loggamma(z)
    _check_overflow(lg)
    return cmath.exp(lg)


def reciprocal_gamma(z: complex) -> complex:
    """1/Gamma(z), an entire function; exactly 0 at z = 0, -1, -2, ..."""
    z = complex(z)
    _check_finite(z)
    if is_nonpositive_integer(z):
        return 0j
    re = z.real
    if z.imag == 0.0 and re == math.floor(re) and 0 < re <= 171:
        return complex(1.0 / math.factorial(int(re) - 1))
    lg = loggamma(z)
    if -lg.real > 709.0:
        raise GammaOverflowError("|1/Gamma(z)| exceeds the double range")
    return cmath.exp(-lg)


def _digamma_right(z, bk: Backend):
    n = _shift_count(z, bk.stirling_radius())
    acc = 0 * bk.one
    for j in range(n):
        acc = acc - 1 / (z + j)
    w = z + n
    inv2 = 1 / (w * w)
    power = inv2
    tail = 0 * bk.one
    for k in range(2, 31, 2):
        tail = tail + bk.convert(BERNOULLI[k]) / k * power
        power = power * inv2
    return acc + bk.log(w) - 1 / (2 * w) - tail


def digamma_generic(z, bk: Backend):
    if is_nonpositive_integer(z):
        raise PoleError(f"digamma has a pole at z = {complex(z)}")
    if float(z.real) < 0.5:
        return _digamma_right(1 - z, bk) - bk.pi * _cot_pi(z, bk)
    return _digamma_right(z, bk)


def rgamma_generic(z, bk: Backend):
    if is_nonpositive_integer(z):
        return 0 * bk.one
    return bk.exp(-loggamma(z, bk))


def digamma(z: complex) -> complex:
    """Digamma function psi(z) = Gamma'(z)/Gamma(z).

    Raises
    ------
    PoleError
        At non-positive integers.
    """
    z = complex(z)
    _check_finite(z)
    return complex(digamma_generic(z, DOUBLE))


@dataclass(frozen=True)
class SeriesValue:
    """A truncated sum together with a bound on the omitted part."""

    value: float
    tail_bound: float
    terms: int


def _bernoulli_abs_bound(n2: int) -> float:
    # |B_2n| = 2 (2n)! zeta(2n) / (2 pi)^2n and zeta(2n) <= 1/(1 - 2^(1-2n))
    zeta_bound = 1.0 / (1.0 - 2.0 ** (1 - n2))
    return 2.0 * math.factorial(n2) * zeta_bound / (2 * math.pi) ** n2


def re_digamma_imag(y: float, mode: str = "series", terms: int = 100_000) -> SeriesValue:
    """Real part of psi(i y) for real y.

    Parameters
    ----------
    y : float
        Real argument scale.
    mode : {"series", "asymptotic"}
        ``series`` sums -gamma + y^2 sum 1/(n(n^2+y^2)) over ``terms`` terms;
        ``asymptotic`` sums ln|y| + sum (-1)^(n-1) B_2n / (2n y^2n) with
        ``terms`` <= 15 Bernoulli corrections.
    terms : int
        Number of terms, at least 1.

    Returns
    -------
    SeriesValue
        Value, bound on the truncation error, and number of terms used.
    """
    y = float(y)
    if not math.isfinite(y):
        raise DomainError("y must be finite")
    if terms < 1:
        raise DomainError("terms must be >= 1")
    if mode == "series":
        n = np.arange(1, terms + 1, dtype=float)
        y2 = y * y
        # sum the small terms first
        total = float(np.sum((1.0 / (n * (n * n + y2)))[::-1]))
        tail = y2 / (2.0 * terms * terms)
        return SeriesValue(-EULER_GAMMA + y2 * total, tail, terms)
    if mode == "asymptotic":
        if abs(y) < 1.0:
            raise DomainError("asymptotic mode requires |y| >= 1")
        if terms > 15:
            raise DomainError("asymptotic mode supports at most 15 terms (B_2..B_30)")
        y2 = y * y
        acc = math.log(abs(y))
        for n in range(1, terms + 1):
            acc += (-1) ** (n - 1) * float(BERNOULLI[2 * n]) / (2 * n * y2 ** n)
        n2 = 2 * (terms + 1)
        if n2 <= 30:
            nxt = abs(float(BERNOULLI[n2]))
        else:
            nxt = _bernoulli_abs_bound(n2)
        return SeriesValue(acc, nxt / (n2 * y2 ** (terms + 1)), terms)
    raise DomainError(f"unknown mode {mode!r}")


def _check_finite(z: complex) -> None:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {z}")
