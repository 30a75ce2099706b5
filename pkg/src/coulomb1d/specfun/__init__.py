"""Complex special functions: Gamma, digamma, confluent and Whittaker families."""

from __future__ import annotations

from .confluent import (
    DEFAULT_POLICY,
    EvalPolicy,
    UReport,
    kummer_m,
    kummer_n,
    tricomi_u,
    tricomi_u_prime,
    tricomi_u_report,
    vee,
    vee_prime,
)
from .gamma import (
    BERNOULLI,
    EULER_GAMMA,
    SeriesValue,
    digamma,
    gamma_complex,
    re_digamma_imag,
    reciprocal_gamma,
)
from .whittaker import (
    OriginStructure,
    WronskianEstimate,
    numeric_wronskian,
    whittaker,
    whittaker_half,
    whittaker_w_origin,
)

__all__ = [
    "BERNOULLI", "DEFAULT_POLICY", "EULER_GAMMA", "EvalPolicy", "OriginStructure",
    "SeriesValue", "UReport", "WronskianEstimate", "digamma", "gamma_complex",
    "kummer_m", "kummer_n", "numeric_wronskian", "re_digamma_imag", "reciprocal_gamma",
    "tricomi_u", "tricomi_u_prime", "tricomi_u_report", "vee", "vee_prime", "whittaker",
    "whittaker_half", "whittaker_w_origin",
]
