"""Finite closed form of the series for rational gamma = +-n/m.

A float gamma is accepted when it is exactly a fraction with denominator
at most MAX_DENOMINATOR, otherwise the representation does not apply.
"""

import functools
import math

from coulomb_tmatrix.representations.Representation import Representation
from coulomb_tmatrix.closed_forms import even_limit_at_pi
from coulomb_tmatrix.errors import UnsupportedClosedFormError
from coulomb_tmatrix.kinematics import tmatrix_prefactor
from coulomb_tmatrix.results import EvalResult, BACKWARD_LIMIT
from coulomb_tmatrix.series import RationalGamma, BACKWARD_WINDOW, rational_sum

MAX_DENOMINATOR = 64


def rational_bracket(gamma, omega):
    return (1.0 / math.sin(0.5 * omega) ** 2 -
            4.0 * gamma.value * rational_sum(gamma, omega) / math.sin(omega))


class RationalRepresentation(Representation):

    def get_id(self):
        return "rational"

    def get_name(self):
        return "Rational finite sum"

    def _rational(self, state):
        gamma = RationalGamma.from_value(state.gamma, MAX_DENOMINATOR)
        if gamma is None:
            raise UnsupportedClosedFormError(
                "gamma = {} is not a fraction with denominator <= {}".format(
                    state.gamma, MAX_DENOMINATOR)
            )
        return gamma

    def applicable(self, state):
        try:
            self._rational(state)
        except UnsupportedClosedFormError:
            return False
        return True

    def _evaluate(self, state, point):
        gamma = self._rational(state)
        flags = ()
        if math.pi - point.omega < BACKWARD_WINDOW:
            bracket = even_limit_at_pi(
                functools.partial(rational_bracket, gamma))
            flags = (BACKWARD_LIMIT,)
        else:
            bracket = rational_bracket(gamma, point.omega)
        return EvalResult(tmatrix_prefactor(state, point) * bracket,
                          self.get_id(), terms_used=gamma.denominator,
                          flags=flags)
