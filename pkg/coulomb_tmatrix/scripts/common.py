import math
from collections import namedtuple

from coulomb_tmatrix.errors import OutOfRangeError

# one row of an evaluated grid, the field order is the CSV column order
GridRow = namedtuple('GridRow',
                     ['k', 'k_prime', 'cos_theta', 'omega', 'eta', 'gamma',
                      'representation', 'value', 'abs_err_est', 'flags'])

GRID_HEADER = list(GridRow._fields)

FLAG_SEPARATOR = "|"

# exit codes of the batch commands
EXIT_ALL_CONFIRMED = 0
EXIT_DISCREPANCIES = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def split_args(args):
    # split args that are in the form somekey=somevalue into a dictionary
    arg_dict = {}
    for a in args:
        split_arg = a.split("=", 1)
        if len(split_arg) != 2:
            raise OutOfRangeError(
                "Argument {} is not of the form key=value".format(a)
            )
        arg_dict[split_arg[0].strip().replace("-", "_")] = split_arg[1]
    return arg_dict


def parse_float_list(text, name="list"):
    """"1, 2.5,3" -> [1.0, 2.5, 3.0]; empty entries are an error."""
    if isinstance(text, (list, tuple)):
        return [float(x) for x in text]
    values = []
    for item in str(text).split(","):
        item = item.strip()
        try:
            values.append(float(item))
        except ValueError:
            raise OutOfRangeError(
                "Cannot read a number from '{}' in {}".format(item, name)
            )
    return values


def parse_id_list(text):
    if isinstance(text, (list, tuple)):
        return [str(x) for x in text]
    return [item.strip() for item in str(text).split(",") if item.strip()]


def format_float(value):
    """17 significant digits, exact on re-reading; None and non-finite
    values are written as an empty field."""
    if value is None or not math.isfinite(value):
        return ""
    return format(float(value), ".17g")


def join_flags(flags):
    return FLAG_SEPARATOR.join(flags)
