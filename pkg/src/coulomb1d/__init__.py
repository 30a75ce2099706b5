"""Exact scattering on the one-dimensional potential alpha/|x|.

Submodules
----------
specfun
    Gamma, digamma, Kummer/Tricomi and Whittaker functions of complex argument.
continuation
    Continuation of the Whittaker pair around the branch point.
scattering
    Fundamental solutions, matching at the origin, scattering amplitudes.
extensions
    The real point-interaction family and the induced delta correction.
spectrum
    Bound states from zeros of the incoming amplitude.
oracle
    ODE residuals, identity checks and an mpmath reference evaluator.
cli
    Command-line entry point.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .continuation import branch_coeffs, continuation_matrix
from .errors import (
    BranchError,
    Coulomb1DError,
    DegenerateBoundaryError,
    DomainError,
    PoleError,
    PrecisionExhaustedError,
    SingularSystemError,
    VerificationError,
)
from .extensions import delta_correction, real_extension_params
from .scattering import (
    BranchParams,
    ExtensionParams,
    PhysicalParams,
    ScatteringSolution,
    complete_transmission_check,
    f2_at_zero,
    fundamental_solution,
    impenetrable_case,
    scattering_report,
    small_x_expansion,
    solve_boundary_closed,
    solve_boundary_numeric,
)
from .spectrum import BoundState, a_r_bound, bound_spectrum

__all__ = [
    "BoundState", "BranchError", "BranchParams", "Coulomb1DError", "DegenerateBoundaryError",
    "DomainError", "ExtensionParams", "PhysicalParams", "PoleError", "PrecisionExhaustedError",
    "ScatteringSolution", "SingularSystemError", "VerificationError", "__version__", "a_r_bound",
    "bound_spectrum", "branch_coeffs", "complete_transmission_check", "continuation_matrix",
    "delta_correction", "f2_at_zero", "fundamental_solution", "impenetrable_case",
    "real_extension_params", "scattering_report", "small_x_expansion", "solve_boundary_closed",
    "solve_boundary_numeric",
]
