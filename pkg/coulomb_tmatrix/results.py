"""Result records shared by all representations."""

from dataclasses import dataclass, field, replace

# validation status of a printed or corrected formula
CONFIRMED = 0
DISCREPANT = 1
UNVALIDATED = 2

STATUS_LIST = ["CONFIRMED", "DISCREPANT", "UNVALIDATED"]

# diagnostic flags that are not errors
BACKWARD_LIMIT = "BACKWARD_LIMIT"
NEAR_BOUND_STATE_POLE = "NEAR_BOUND_STATE_POLE"
NON_FINITE = "NON_FINITE"
FREE_LIMIT = "FREE_LIMIT"
PRINTED_FORM = "PRINTED_FORM"
# a row whose evaluation failed for a reason other than a TmatrixError
ROW_ERROR = "ERROR"

# distance to a negative integer below which a pole warning is attached
POLE_PROXIMITY = 1e-3


@dataclass(frozen=True)
class EvalResult:
    """A T-matrix (or sum) value tagged with the representation that
    produced it.
    :var float value: the value
    :var str representation: id of the representation, e.g. "series"
    :var float abs_err_est: estimated absolute error
    :var int terms_used: series terms or quadrature nodes used
    :var tuple flags: diagnostic flags
    :var int status: CONFIRMED, DISCREPANT or UNVALIDATED
    """
    value: float
    representation: str
    abs_err_est: float = 0.0
    terms_used: int = 0
    flags: tuple = field(default_factory=tuple)
    status: int = UNVALIDATED

    def status_name(self):
        return STATUS_LIST[self.status]

    def with_flags(self, *flags):
        new_flags = tuple(self.flags) + tuple(f for f in flags
                                              if f not in self.flags)
        return replace(self, flags=new_flags)


def deviation(value, reference, scale=1.0):
    """Relative deviation of value from reference, measured against
    max(|reference|, scale) so that zero crossings stay well defined."""
    return abs(value - reference) / max(abs(reference), scale)


def near_bound_state_pole(gamma):
    """True if gamma is within POLE_PROXIMITY of a negative integer."""
    if gamma > -1.0 + POLE_PROXIMITY:
        return False
    return abs(gamma - round(gamma)) < POLE_PROXIMITY
