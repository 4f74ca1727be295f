"""Function to get the representations"""
from coulomb_tmatrix.representations import BornRepresentation
from coulomb_tmatrix.representations import SeriesRepresentation
from coulomb_tmatrix.representations import SchwingerRepresentation
from coulomb_tmatrix.representations import ClosedFormRepresentation
from coulomb_tmatrix.representations import SeparatedRepresentation
from coulomb_tmatrix.representations import RationalRepresentation
from coulomb_tmatrix.errors import OutOfRangeError


def get_representations():
    return [BornRepresentation.BornRepresentation,
            SeriesRepresentation.SeriesRepresentation,
            SchwingerRepresentation.SchwingerRepresentation,
            ClosedFormRepresentation.ClosedFormRepresentation,
            SeparatedRepresentation.SeparatedRepresentation,
            RationalRepresentation.RationalRepresentation]


def get_representation_ids():
    return [x.get_id(None) for x in get_representations()]


def get_representation_from_id(id):
    try:
        index = get_representation_ids().index(id)
    except ValueError:
        raise OutOfRangeError(
            "Representation {} not recognised, use one of {}".format(
                id, ",".join(get_representation_ids()))
        )
    return get_representations()[index]
