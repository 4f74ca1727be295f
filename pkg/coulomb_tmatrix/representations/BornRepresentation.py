"""The first-order (Born) term, the potential matrix element."""

from coulomb_tmatrix.representations.Representation import Representation
from coulomb_tmatrix.kinematics import born_term
from coulomb_tmatrix.results import EvalResult


class BornRepresentation(Representation):

    def get_id(self):
        return "born"

    def get_name(self):
        return "Born term"

    def _evaluate(self, state, point):
        return EvalResult(born_term(state, point), self.get_id())
