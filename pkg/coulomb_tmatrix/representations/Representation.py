"""Generic class for a representation of the off-shell Coulomb T-matrix.
All other representations should inherit from this class and overload
get_id, get_name and _evaluate.
"""

from coulomb_tmatrix.kinematics import check_forward, born_term
from coulomb_tmatrix.quadrature import DEFAULT_QUADRATURE_SPEC
from coulomb_tmatrix.results import (
    EvalResult,
    FREE_LIMIT,
    NEAR_BOUND_STATE_POLE,
    near_bound_state_pole,
)
from coulomb_tmatrix.series import DEFAULT_SERIES_OPTIONS
from coulomb_tmatrix.closed_forms import CORRECTED


class Representation(object):
    """Super class for all T-matrix representations.  The numerical
    functions should be overloaded, i.e. the class is pure virtual.
    :var SeriesOptions series_options: controls of the series summation
    :var QuadratureSpec quadrature_spec: tolerances of adaptive quadrature
    :var str form: PRINTED or CORRECTED for the explicit forms
    """

    def __init__(self, series_options=None, quadrature_spec=None,
                 form=CORRECTED):
        if series_options is None:
            series_options = DEFAULT_SERIES_OPTIONS
        if quadrature_spec is None:
            quadrature_spec = DEFAULT_QUADRATURE_SPEC
        self.series_options = series_options
        self.quadrature_spec = quadrature_spec
        self.form = form

    def get_id(self):
        """Return the short id used by --reps and the grid rows"""
        raise NotImplementedError

    def get_name(self):
        """Return a human readable name"""
        raise NotImplementedError

    def applicable(self, state):
        """Can the representation be evaluated for this EnergyState?"""
        return True

    def evaluate(self, state, point):
        """<k|t^C(E)|k'> at the FockPoint as an EvalResult.
        At gamma = 0 every representation reduces to the Born term."""
        check_forward(point)
        if state.gamma == 0:
            return EvalResult(born_term(state, point), self.get_id(),
                              flags=(FREE_LIMIT,))
        result = self._evaluate(state, point)
        if near_bound_state_pole(state.gamma):
            result = result.with_flags(NEAR_BOUND_STATE_POLE)
        return result

    def _evaluate(self, state, point):
        raise NotImplementedError
