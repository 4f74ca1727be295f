"""Exceptions raised by the Coulomb T-matrix evaluators.
All of them derive from TmatrixError so that the batch scripts can catch a
single type and turn the failure into a row flag.
"""


class TmatrixError(Exception):
    """Base class for all errors raised by coulomb_tmatrix."""
    # flag written into a grid row when this error is caught
    flag = "ERROR"


class NonNegativeEnergyError(TmatrixError):
    """Energy must be strictly negative for the bound-state momentum."""
    flag = "NON_NEGATIVE_ENERGY"


class OutOfRangeError(TmatrixError):
    """An input is outside its documented domain."""
    flag = "OUT_OF_RANGE"


class ForwardSingularityError(TmatrixError):
    """omega = 0: k = k' and cos_theta = 1, the Born term diverges."""
    flag = "FORWARD_SINGULAR"


class BackwardIndeterminateError(TmatrixError):
    """omega = pi with limit evaluation switched off."""
    flag = "BACKWARD_INDETERMINATE"


class BoundStatePoleError(TmatrixError):
    """gamma is a negative integer, the series term n = -gamma diverges."""
    flag = "BOUND_STATE_POLE"


class ConvergenceError(TmatrixError):
    """A series did not reach its tolerance within max_terms.
    The best value and its error estimate are kept on the exception.
    """
    flag = "CONVERGENCE_FAILURE"

    def __init__(self, message, value=None, abs_err_est=None, terms_used=None):
        super().__init__(message)
        self.value = value
        self.abs_err_est = abs_err_est
        self.terms_used = terms_used


class NonIntegrableError(TmatrixError):
    """rho**gamma is not integrable at rho = 0 for gamma <= -1."""
    flag = "NON_INTEGRABLE"


class QuadratureFailureError(TmatrixError):
    """Adaptive quadrature missed its tolerance."""
    flag = "QUADRATURE_FAILURE"


class AttractiveOutOfRangeError(NonIntegrableError):
    """The Schwinger representation needs gamma > -1, use the series path."""
    flag = "ATTRACTIVE_OUT_OF_RANGE"


class DegenerateGammaError(TmatrixError):
    """cot(gamma*pi) is singular and no finite limit is implemented."""
    flag = "DEGENERATE_GAMMA"


class OnShellDiagonalError(TmatrixError):
    """Partial-wave projection with k = k' diverges at the forward point."""
    flag = "ON_SHELL_DIAGONAL"


class UnsupportedClosedFormError(TmatrixError):
    """No explicit closed form exists for this gamma."""
    flag = "NOT_APPLICABLE"


class InternalConsistencyError(TmatrixError):
    """A computed quantity violated an invariant beyond rounding slack."""
    flag = "INTERNAL_INCONSISTENCY"


class InternalFailureError(TmatrixError):
    """The numerical oracles disagree with each other: a bug, not a finding."""
    flag = "INTERNAL_FAILURE"


class IoFailureError(TmatrixError):
    """Writing an export file failed."""
    flag = "IO_FAILURE"
