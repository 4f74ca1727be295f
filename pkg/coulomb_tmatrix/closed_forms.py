"""Explicit elementary T-matrices for gamma = +-1/2, +-3/2, +-5/2, +-7/2,
+-1/3, +-1/4 and the singularity-separated representation.

Every form is written as
    bracket(omega) = 1/sin^2(omega/2) + even(omega) + sign * odd(omega)
with the T-matrix equal to (2 pi q1 q2 eta / (k k')) * bracket.  The even
group is the same for gamma and -gamma, the odd group changes sign.

The forms exist in two versions.  PRINTED reproduces the published
expressions term by term, CORRECTED holds the expressions regenerated
from the finite rational sums.  Neither is trusted: both carry a status
obtained by comparing against the decomposed series on a fixed omega grid.
"""

import functools
import logging
import math
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from coulomb_tmatrix.errors import (
    DegenerateGammaError,
    OutOfRangeError,
    UnsupportedClosedFormError,
)
from coulomb_tmatrix.kinematics import check_forward, tmatrix_prefactor
from coulomb_tmatrix.quadrature import (
    DEFAULT_QUADRATURE_SPEC,
    X_GAMMA,
    Y_GAMMA,
    integrate_aux,
)
from coulomb_tmatrix.results import (
    CONFIRMED,
    DISCREPANT,
    EvalResult,
    BACKWARD_LIMIT,
    FREE_LIMIT,
    PRINTED_FORM,
    deviation,
)
from coulomb_tmatrix.series import (
    RationalGamma,
    SeriesOptions,
    BACKWARD_WINDOW,
    fock_sum,
)

PRINTED = "printed"
CORRECTED = "corrected"
FORMS = [PRINTED, CORRECTED]

# y_gamma integrand variants
Y_PHI = "phi"
Y_PRINTED = "printed"
Y_VARIANTS = [Y_PHI, Y_PRINTED]

# largest |gamma| handled by the separated representation
MAX_SEPARATED_GAMMA = 4.0
# step of the even-function extrapolation to omega = pi
RICHARDSON_STEP = 1e-3

VALIDATION_THRESHOLD = 1e-8
VALIDATION_GRID = np.linspace(0.05, math.pi - 0.05, 50)
ORACLE_OPTIONS = SeriesOptions(target_rel_tol=1e-12)

SQRT3 = math.sqrt(3.0)

SingularitySeparatedAux = namedtuple('SingularitySeparatedAux',
                                     ['x_gamma', 'y_gamma', 'c_gamma'])

FormValidation = namedtuple('FormValidation',
                            ['name', 'status', 'max_deviation',
                             'omega_at_max'])


def _log_abs_tan(x):
    return math.log(abs(math.tan(x)))


# term groups, each returns (even, odd)
def _half_printed(omega):
    h = 0.5 * omega
    return (-math.pi / (2.0 * math.sin(h)),
            -_log_abs_tan(0.5 * h) / math.cos(h))


def _half_corrected(omega):
    h = 0.5 * omega
    return (-_log_abs_tan(0.5 * h) / math.cos(h),
            -math.pi / (2.0 * math.sin(h)))


def _three_halves(omega, log_angle):
    s = math.sin(omega)
    h3 = 1.5 * omega
    return (-6.0 * math.sin(h3) * _log_abs_tan(log_angle) / s - 12.0,
            -3.0 * math.pi * math.cos(h3) / s)


def _three_halves_printed(omega):
    return _three_halves(omega, 0.5 * omega)


def _three_halves_corrected(omega):
    return _three_halves(omega, 0.25 * omega)


def _five_halves(omega):
    s = math.sin(omega)
    h5 = 2.5 * omega
    c = math.cos(omega)
    return (-10.0 * math.sin(h5) * _log_abs_tan(0.25 * omega) / s -
            40.0 * c - 20.0 / 3.0,
            -5.0 * math.pi * math.cos(h5) / s)


def _seven_halves(omega):
    s = math.sin(omega)
    h7 = 3.5 * omega
    c = math.cos(omega)
    return (-14.0 * math.sin(h7) * _log_abs_tan(0.25 * omega) / s -
            112.0 * c * c - 56.0 / 3.0 * c + 112.0 / 5.0,
            -7.0 * math.pi * math.cos(h7) / s)


def _third_odd(omega):
    third = omega / 3.0
    return (-2.0 * math.pi / 3.0 *
            (math.cos(third) - math.sin(third) / SQRT3) / math.sin(omega))


def _third_arctan_log(omega):
    t = math.tan(omega / 6.0)
    return math.log(abs((t + SQRT3) / (t - SQRT3)))


def _third_printed(omega):
    s = math.sin(omega)
    third = omega / 3.0
    sixth = omega / 6.0
    s6 = math.sin(sixth)
    first = math.log(abs((s6 - 3.0 * math.cos(sixth)) / (4.0 * s6 * s6)))
    even = (2.0 * math.sin(third) / (3.0 * s) * first -
            2.0 * math.cos(third) / (3.0 * SQRT3 * s) *
            _third_arctan_log(omega))
    return even, _third_odd(omega)


def _third_corrected(omega):
    s = math.sin(omega)
    third = omega / 3.0
    s6sq = math.sin(omega / 6.0) ** 2
    first = math.log(abs((3.0 - 4.0 * s6sq) / (4.0 * s6sq)))
    even = (2.0 * math.sin(third) / (3.0 * s) * first -
            2.0 * math.cos(third) / (SQRT3 * s) * _third_arctan_log(omega))
    return even, _third_odd(omega)


def _quarter(omega):
    s = math.sin(omega)
    q = 0.25 * omega
    t8 = math.tan(0.125 * omega)
    even = (-math.sin(q) / s * math.log(abs(t8)) -
            math.cos(q) / s * math.log(abs((1.0 + t8) / (1.0 - t8))))
    odd = -0.5 * math.pi * (math.cos(q) - math.sin(q)) / s
    return even, odd


# (|gamma|, form) -> term groups
TERM_GROUPS = {
    (Fraction(1, 2), PRINTED): _half_printed,
    (Fraction(1, 2), CORRECTED): _half_corrected,
    (Fraction(3, 2), PRINTED): _three_halves_printed,
    (Fraction(3, 2), CORRECTED): _three_halves_corrected,
    (Fraction(5, 2), PRINTED): _five_halves,
    (Fraction(5, 2), CORRECTED): _five_halves,
    (Fraction(7, 2), PRINTED): _seven_halves,
    (Fraction(7, 2), CORRECTED): _seven_halves,
    (Fraction(1, 3), PRINTED): _third_printed,
    (Fraction(1, 3), CORRECTED): _third_corrected,
    (Fraction(1, 4), PRINTED): _quarter,
    (Fraction(1, 4), CORRECTED): _quarter,
}

CLOSED_FORM_MAGNITUDES = [Fraction(1, 2), Fraction(3, 2), Fraction(5, 2),
                          Fraction(7, 2), Fraction(1, 3), Fraction(1, 4)]


@dataclass(frozen=True)
class ClosedFormId:
    """gamma restricted to the values that have an explicit form."""
    gamma: RationalGamma

    def __post_init__(self):
        if self.magnitude not in CLOSED_FORM_MAGNITUDES:
            raise UnsupportedClosedFormError(
                "No explicit form for gamma = {}; use rational_sum".format(
                    self.gamma)
            )

    @classmethod
    def from_gamma(cls, gamma):
        """Accepts a RationalGamma, a Fraction, a string or a float."""
        try:
            rational = RationalGamma.coerce(gamma)
        except OutOfRangeError:
            raise UnsupportedClosedFormError(
                "No explicit form for gamma = {}".format(gamma)
            )
        return cls(rational)

    @property
    def magnitude(self):
        return Fraction(self.gamma.numerator, self.gamma.denominator)

    @property
    def sign(self):
        return self.gamma.sign

    @property
    def value(self):
        return self.gamma.value

    @property
    def name(self):
        return "explicit:{}".format(self.gamma)


def closed_form_ids():
    """Every explicit form, + before - for each magnitude."""
    ids = []
    for magnitude in CLOSED_FORM_MAGNITUDES:
        for sign in (1, -1):
            ids.append(ClosedFormId(RationalGamma(
                magnitude.numerator, magnitude.denominator, sign)))
    return ids


def term_groups(form_id, omega, form=CORRECTED):
    """(even, odd) groups of the bracket at omega."""
    if form not in FORMS:
        raise OutOfRangeError("Form {} not recognised".format(form))
    return TERM_GROUPS[(form_id.magnitude, form)](omega)


def explicit_bracket(form_id, omega, form=CORRECTED):
    """Bracket of the explicit form, omega in (0, pi)."""
    even, odd = term_groups(form_id, omega, form)
    return 1.0 / math.sin(0.5 * omega) ** 2 + even + form_id.sign * odd


def even_limit_at_pi(func, step=RICHARDSON_STEP):
    """Value at omega = pi of a function even about pi, extrapolated from
    pi - step and pi - step/2."""
    return (4.0 * func(math.pi - 0.5 * step) - func(math.pi - step)) / 3.0


@functools.lru_cache(maxsize=4096)
def series_bracket(gamma, omega, opts=ORACLE_OPTIONS):
    """1/sin^2(omega/2) - (4 gamma / sin omega) S(gamma, omega), the oracle
    every closed form is measured against."""
    summed = fock_sum(gamma, omega, opts)
    return (1.0 / math.sin(0.5 * omega) ** 2 -
            4.0 * gamma * summed.value / math.sin(omega))


def _validate(name, bracket, gamma):
    worst = 0.0
    worst_omega = float(VALIDATION_GRID[0])
    for omega in VALIDATION_GRID:
        omega = float(omega)
        reference = series_bracket(gamma, omega)
        value = bracket(omega)
        dev = deviation(value, reference) if math.isfinite(value) else math.inf
        if dev > worst:
            worst, worst_omega = dev, omega
    status = CONFIRMED if worst <= VALIDATION_THRESHOLD else DISCREPANT
    if status == DISCREPANT:
        logging.warning(
            "{} is DISCREPANT: max. relative deviation {:.3e} at omega = "
            "{:.6f}".format(name, worst, worst_omega)
        )
    return FormValidation(name, status, worst, worst_omega)


@functools.lru_cache(maxsize=None)
def validate_explicit(form_id, form=CORRECTED):
    """Compare an explicit form with the series on VALIDATION_GRID."""
    return _validate(
        "{}:{}".format(form_id.name, form),
        functools.partial(explicit_bracket, form_id, form=form),
        form_id.value,
    )


def _near_backward(omega):
    return math.pi - omega < BACKWARD_WINDOW


def _match_state(form_id, state):
    if abs(state.gamma - form_id.value) > 1e-12 * max(1.0, abs(form_id.value)):
        raise OutOfRangeError(
            "State gamma = {} does not match the explicit form for {}".format(
                state.gamma, form_id.gamma)
        )


def tmatrix_explicit(form_id, state, point, form=CORRECTED):
    """T-matrix from an explicit elementary form, with its validation
    status.  Near omega = pi, where single terms divide by sin(omega), the
    bracket is extrapolated from the left."""
    check_forward(point)
    _match_state(form_id, state)
    flags = [PRINTED_FORM] if form == PRINTED else []
    if _near_backward(point.omega):
        bracket = even_limit_at_pi(
            functools.partial(explicit_bracket, form_id, form=form))
        flags.append(BACKWARD_LIMIT)
    else:
        bracket = explicit_bracket(form_id, point.omega, form)
    validation = validate_explicit(form_id, form)
    return EvalResult(tmatrix_prefactor(state, point) * bracket, "closed",
                      flags=tuple(flags), status=validation.status)


def tmatrix_half(state, point, form=CORRECTED):
    """Explicit form for gamma = +-1/2."""
    if abs(abs(state.gamma) - 0.5) > 1e-12:
        raise OutOfRangeError(
            "tmatrix_half needs gamma = +-1/2, got {}".format(state.gamma)
        )
    form_id = ClosedFormId(RationalGamma(1, 2, 1 if state.gamma > 0 else -1))
    return tmatrix_explicit(form_id, state, point, form)


def half_integer_aux(sign, omega):
    """Elementary x, y and c at gamma = +-1/2."""
    h = 0.5 * omega
    x = sign * 2.0 * math.sin(h)
    if omega == math.pi:
        y = 0.0
    else:
        y = sign * (2.0 * math.cos(h) * (math.log(abs(math.sin(h))) - 1.0) +
                    2.0 * math.log(abs(1.0 / math.tan(0.5 * h))))
    c = 0.5 - sign / math.pi
    return SingularitySeparatedAux(x, y, c)


@functools.lru_cache(maxsize=256)
def c_gamma(gamma, spec=DEFAULT_QUADRATURE_SPEC):
    """c(gamma) = (1/2)(1 - x_gamma(pi)/pi)"""
    return 0.5 * (1.0 - integrate_aux(X_GAMMA, gamma, math.pi, spec) /
                  math.pi)


def _check_separated_gamma(gamma):
    if abs(gamma) > MAX_SEPARATED_GAMMA:
        raise OutOfRangeError(
            "|gamma| = {} is beyond the supported {} of the separated "
            "representation".format(abs(gamma), MAX_SEPARATED_GAMMA)
        )


def aux_integrals(gamma, omega, y_variant=Y_PHI,
                  spec=DEFAULT_QUADRATURE_SPEC):
    """x_gamma(omega), y_gamma(omega) and c(gamma).
    y_variant Y_PRINTED takes ln|sin(omega/2)| out of the y integral."""
    _check_separated_gamma(gamma)
    if not 0.0 <= omega <= math.pi:
        raise OutOfRangeError(
            "omega must lie in [0, pi], got {}".format(omega)
        )
    x = integrate_aux(X_GAMMA, gamma, omega, spec)
    if y_variant == Y_PHI:
        y = integrate_aux(Y_GAMMA, gamma, omega, spec)
    elif y_variant == Y_PRINTED:
        if gamma == 0 or omega == math.pi:
            y = 0.0
        else:
            y = (math.log(abs(math.sin(0.5 * omega))) *
                 (math.cos(gamma * omega) - math.cos(gamma * math.pi)) /
                 gamma)
    else:
        raise OutOfRangeError("y variant {} not recognised".format(y_variant))
    return SingularitySeparatedAux(x, y, c_gamma(gamma, spec))


def separated_combination(gamma, omega, aux):
    """pi g cos(g w) + g sin(2 g w) ln|sin(w/2)| - 2 pi g c cot(g pi) sin(g w)
    - g cos(g w) x - 2 g^2 sin(g w) y, which equals 2 gamma S(gamma, omega)."""
    gw = gamma * omega
    return (math.pi * gamma * math.cos(gw) +
            gamma * math.sin(2.0 * gw) * math.log(abs(math.sin(0.5 * omega))) -
            2.0 * math.pi * gamma * aux.c_gamma * math.sin(gw) /
            math.tan(gamma * math.pi) -
            gamma * math.cos(gw) * aux.x_gamma -
            2.0 * gamma * gamma * math.sin(gw) * aux.y_gamma)


def separated_bracket(gamma, omega, form=CORRECTED, y_variant=Y_PHI,
                      spec=DEFAULT_QUADRATURE_SPEC):
    aux = aux_integrals(gamma, omega, y_variant, spec)
    combination = separated_combination(gamma, omega, aux)
    sin2 = math.sin(0.5 * omega) ** 2
    if form == PRINTED:
        return combination / sin2
    return 1.0 / sin2 - 2.0 * combination / math.sin(omega)


@functools.lru_cache(maxsize=256)
def validate_separated(gamma, form=CORRECTED, y_variant=Y_PHI):
    """Compare the separated representation with the series on
    VALIDATION_GRID."""
    return _validate(
        "separated:{}:{}:{}".format(gamma, form, y_variant),
        functools.partial(separated_bracket, gamma, form=form,
                          y_variant=y_variant),
        gamma,
    )


def _check_degenerate(gamma):
    if gamma != 0 and gamma == math.floor(gamma):
        raise DegenerateGammaError(
            "cot(gamma pi) is singular at integer gamma = {}".format(gamma)
        )


def tmatrix_separated(state, point, form=CORRECTED, y_variant=Y_PHI,
                      spec=DEFAULT_QUADRATURE_SPEC, validate=True):
    """T-matrix from the singularity-separated representation.
    validate=False skips the cached comparison with the series."""
    check_forward(point)
    gamma = state.gamma
    prefactor = tmatrix_prefactor(state, point)
    if gamma == 0:
        return EvalResult(prefactor / point.sin2_half, "separated",
                          flags=(FREE_LIMIT,))
    _check_degenerate(gamma)
    _check_separated_gamma(gamma)
    flags = [PRINTED_FORM] if form == PRINTED else []
    bracket_at = functools.partial(separated_bracket, gamma, form=form,
                                   y_variant=y_variant, spec=spec)
    if _near_backward(point.omega):
        bracket = even_limit_at_pi(bracket_at)
        flags.append(BACKWARD_LIMIT)
    else:
        bracket = bracket_at(point.omega)
    kwargs = {"flags": tuple(flags)}
    if validate:
        kwargs["status"] = validate_separated(gamma, form, y_variant).status
    return EvalResult(prefactor * bracket, "separated", **kwargs)
