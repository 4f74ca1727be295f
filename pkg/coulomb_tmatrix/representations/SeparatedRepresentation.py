"""Singularity-separated representation built on the x_gamma, y_gamma
integrals, non-integer gamma with |gamma| <= 4."""

from coulomb_tmatrix.representations.Representation import Representation
from coulomb_tmatrix.closed_forms import (
    tmatrix_separated,
    MAX_SEPARATED_GAMMA,
)


class SeparatedRepresentation(Representation):

    def get_id(self):
        return "separated"

    def get_name(self):
        return "Singularity-separated"

    def applicable(self, state):
        gamma = state.gamma
        if gamma == 0:
            return True
        return gamma != int(gamma) and abs(gamma) <= MAX_SEPARATED_GAMMA

    def _evaluate(self, state, point):
        return tmatrix_separated(state, point, self.form,
                                 spec=self.quadrature_spec)
