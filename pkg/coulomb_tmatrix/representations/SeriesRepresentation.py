"""Series representation, valid for every gamma except the bound-state
poles gamma = -1, -2, ..."""

from coulomb_tmatrix.representations.Representation import Representation
from coulomb_tmatrix.series import tmatrix_series


class SeriesRepresentation(Representation):

    def get_id(self):
        return "series"

    def get_name(self):
        return "Series"

    def applicable(self, state):
        gamma = state.gamma
        return not (gamma <= -1 and gamma == int(gamma))

    def _evaluate(self, state, point):
        return tmatrix_series(state, point, self.series_options)
