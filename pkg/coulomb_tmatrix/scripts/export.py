"""Canonical writers for grid results and validation reports.

JSON output is produced by walking the record: keys sorted, floats with
17 significant digits, no insignificant whitespace.  Parsing an export
and writing it again gives the same bytes.  CSV output follows RFC 4180
quoting with a fixed header.
"""

import csv
import io
import json
import logging
import math

from coulomb_tmatrix.errors import IoFailureError, OutOfRangeError
from coulomb_tmatrix.scripts.common import format_float

SCHEMA_VERSION = 1

CSV_FORMAT = "csv"
JSON_FORMAT = "json"
FORMATS = [CSV_FORMAT, JSON_FORMAT]


def canonical_json(obj):
    """Serialise dicts, lists, strings, numbers, bools and None."""
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "null"
        if obj == 0.0:
            return "0"
        return format(obj, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=True)
    if isinstance(obj, dict):
        items = sorted((str(k), v) for k, v in obj.items())
        return "{" + ",".join(
            "{}:{}".format(json.dumps(k, ensure_ascii=True),
                           canonical_json(v))
            for k, v in items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(canonical_json(v) for v in obj) + "]"
    # numpy scalars
    if hasattr(obj, "item"):
        return canonical_json(obj.item())
    raise OutOfRangeError(
        "Cannot serialise object of type {}".format(type(obj).__name__)
    )


def to_json(result):
    record = dict(result.to_dict())
    record["schema_version"] = SCHEMA_VERSION
    return canonical_json(record) + "\n"


def to_csv(result):
    """result.to_table() gives (header, rows of cells)"""
    header, rows = result.to_table()
    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(c) if isinstance(c, float) or c is None
                         else c for c in row])
    return buf.getvalue()


def render(result, fmt):
    if fmt == CSV_FORMAT:
        return to_csv(result)
    elif fmt == JSON_FORMAT:
        return to_json(result)
    raise OutOfRangeError(
        "Format {} not recognised, use one of {}".format(
            fmt, ", ".join(FORMATS))
    )


def export(result, fmt, destination):
    """Write a GridResult or ValidationReport to destination.
    A destination of None or "-" returns the text without writing."""
    text = render(result, fmt)
    if destination is None or destination == "-":
        return text
    try:
        with open(destination, "w", newline="") as fh:
            fh.write(text)
    except OSError as e:
        raise IoFailureError(
            "Could not write {} export to {}: {}".format(
                fmt, destination, str(e))
        )
    logging.info("Wrote {} export to {}".format(fmt, destination))
    return text
