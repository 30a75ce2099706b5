"""The real point-interaction family and the delta-shaped correction it induces.

Requiring the point interactions to be real fixes v_-^{-V} = 0 and

    v_+^{-V} = (-pi + 2 arg2k + pi coth t) / (-2 arg2k - pi coth t)
    v_+^{+W} = 2 (pi + arg2k - e^{2t} arg2k) / ((e^{2t} - 1)(pi + 2 arg2k))

with t = pi alpha / 2k.  On the scattering axis (arg2k = 0) these reduce to
tanh t - 1 and 2 / (e^{2t} - 1).  The induced correction to the potential is
a multiple of theta(x) delta(x) whose coefficient is

    -2 alpha [2 gamma_E + ln(2 sqrt(k^2) x) + Re psi(i alpha / 2k)].
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError
from .scattering import ARG2K_SCATTERING, ExtensionParams, PhysicalParams
from .specfun import EULER_GAMMA, digamma, re_digamma_imag

FORMS = ("closed", "series", "asymptotic")


def real_extension_params(params: PhysicalParams) -> ExtensionParams:
    """v-values of the real extension for the branch ``params.arg2k``.

    On the bound-state axis coth(pi alpha/2k) and e^{pi alpha/k} have
    complex arguments and the formulas are evaluated literally, so the
    outputs are complex there.
    """
    if params.alpha == 0:
        raise DomainError("the real extension is defined for alpha != 0")
    t = math.pi * params.alpha / (2 * params.k)
    arg = params.arg2k
    pi = math.pi
    if arg == ARG2K_SCATTERING:
        tt = t.real
        # tanh t - 1 = -2 / (e^{2t} + 1), written without cancellation
        if tt > 0:
            e = math.exp(-2 * tt)
            v_v = -2.0 * e / (1.0 + e)
        else:
            v_v = -2.0 / (1.0 + math.exp(2 * tt))
        v_w = 2.0 / math.expm1(2 * tt)
        return ExtensionParams(complex(v_v), complex(v_w), 0j, 0j)
    coth = cmath.cosh(t) / cmath.sinh(t)
    e = cmath.exp(2 * t)
    v_v = (-pi + 2 * arg + pi * coth) / (-2 * arg - pi * coth)
    v_w = 2 * (pi + arg - e * arg) / ((e - 1) * (pi + 2 * arg))
    return ExtensionParams(v_v, v_w, 0j, 0j)


@dataclass(frozen=True)
class DeltaCorrection:
    """Coefficient of theta(x) delta(x) in the corrected potential.

    ``x`` is the abscissa inside the logarithm; ``tail_bound`` bounds the
    truncation error of the coefficient for the series and asymptotic forms.
    """

    coefficient: float
    x: float
    form: str
    terms: int
    tail_bound: float = 0.0


def _sqrt_k2(params: PhysicalParams) -> complex:
    k = params.k
    if params.arg2k == ARG2K_SCATTERING:
        return abs(k)
    return cmath.sqrt(k * k)


def delta_correction(params: PhysicalParams, x: float, form: str = "closed",
                     terms: int = 10_000) -> DeltaCorrection:
    """Strength of the delta-shaped correction in one of three equivalent forms.

    Parameters
    ----------
    params : PhysicalParams
        Real k > 0 (the correction is real only on the scattering axis).
    x : float
        Positive abscissa entering ln(2 |k| x).
    form : {"closed", "series", "asymptotic"}
        ``closed`` uses Re psi(i alpha/2k) directly, ``series`` its
        expansion in 1/(n(n^2 + y^2)) and ``asymptotic`` the Bernoulli
        expansion, which needs alpha/2k >= 5.
    terms : int
        Number of series terms, or of Bernoulli corrections (at most 15).

    Returns
    -------
    DeltaCorrection
    """
    if form not in FORMS:
        raise DomainError(f"form must be one of {FORMS}")
    if not x > 0:
        raise DomainError("x must be positive")
    if params.alpha == 0:
        raise DomainError("alpha must be nonzero")
    if params.arg2k != ARG2K_SCATTERING:
        raise DomainError("the correction is evaluated for real k > 0")
    alpha = params.alpha
    k = params.k.real
    y = alpha / (2 * k)
    log_term = math.log(2 * _sqrt_k2(params) * x)
    if form == "closed":
        re_psi = digamma(1j * y).real
        return DeltaCorrection(-2 * alpha * (2 * EULER_GAMMA + log_term + re_psi), x, form, 0)
    if form == "series":
        sv = re_digamma_imag(y, "series", terms)
        # re_digamma_imag already contains the -gamma_E of the series
        coef = -2 * alpha * (2 * EULER_GAMMA + log_term + sv.value)
        return DeltaCorrection(coef, x, form, terms, 2 * abs(alpha) * sv.tail_bound)
    if y < 5:
        raise DomainError("the asymptotic form requires alpha/2k >= 5")
    sv = re_digamma_imag(y, "asymptotic", min(terms, 15))
    bern = sv.value - math.log(y)
    coef = -2 * alpha * (2 * EULER_GAMMA + math.log(alpha * x) + bern)
    return DeltaCorrection(coef, x, form, sv.terms, 2 * abs(alpha) * sv.tail_bound)

