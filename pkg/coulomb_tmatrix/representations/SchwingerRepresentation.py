"""Schwinger integral representation, gamma > -1."""

from coulomb_tmatrix.representations.Representation import Representation
from coulomb_tmatrix.quadrature import tmatrix_schwinger


class SchwingerRepresentation(Representation):

    def get_id(self):
        return "schwinger"

    def get_name(self):
        return "Schwinger integral"

    def applicable(self, state):
        return state.gamma > -1

    def _evaluate(self, state, point):
        return tmatrix_schwinger(state, point, self.quadrature_spec)
