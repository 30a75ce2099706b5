"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class Coulomb1DError(Exception):
    """Base class for all errors raised by coulomb1d."""


class DomainError(Coulomb1DError, ValueError):
    """An argument lies outside the domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested at a pole (e.g. Gamma at a non-positive integer)."""


class GammaOverflowError(Coulomb1DError, OverflowError):
    """|Gamma(z)| exceeds the representable double range."""


class NonFiniteError(Coulomb1DError, ArithmeticError):
    """A computation produced NaN or infinity where a finite value is required."""


class NonConvergenceError(Coulomb1DError, ArithmeticError):
    """A series did not reach its tolerance within the configured term cap."""


class UnreachableAccuracyError(Coulomb1DError, ArithmeticError):
    """The configured working precision cannot deliver the requested accuracy."""


class BranchError(DomainError):
    """Argument lies outside the principal branch or a winding is out of range."""


class DegenerateBoundaryError(Coulomb1DError, ZeroDivisionError):
    """The boundary-condition denominator vanishes (impenetrable family)."""


class SingularSystemError(Coulomb1DError, ArithmeticError):
    """A linear system is numerically singular."""

    def __init__(self, message: str, condition_number: float):
        super().__init__(f"{message} (condition number {condition_number:.3e})")
        self.condition_number = condition_number


class PrecisionExhaustedError(Coulomb1DError, ArithmeticError):
    """The reference evaluator could not certify the requested digits."""


class VerificationError(Coulomb1DError, AssertionError):
    """A numerical verification (e.g. zero bracketing) failed."""
