"""Explicit elementary forms for gamma in +-{1/2, 3/2, 5/2, 7/2, 1/3, 1/4}.
Any other gamma raises UnsupportedClosedFormError."""

from coulomb_tmatrix.representations.Representation import Representation
from coulomb_tmatrix.closed_forms import ClosedFormId, tmatrix_explicit
from coulomb_tmatrix.errors import UnsupportedClosedFormError


class ClosedFormRepresentation(Representation):

    def get_id(self):
        return "closed"

    def get_name(self):
        return "Explicit closed form"

    def applicable(self, state):
        try:
            ClosedFormId.from_gamma(state.gamma)
        except UnsupportedClosedFormError:
            return False
        return True

    def _evaluate(self, state, point):
        form_id = ClosedFormId.from_gamma(state.gamma)
        return tmatrix_explicit(form_id, state, point, self.form)
