import json
import os
import tempfile

import numpy as np
from django.test import SimpleTestCase

from coulomb_tmatrix.errors import IoFailureError, OutOfRangeError
from coulomb_tmatrix.kinematics import TwoBodySystem
from coulomb_tmatrix.scripts.common import (
    GRID_HEADER,
    format_float,
    parse_float_list,
    split_args,
)
from coulomb_tmatrix.scripts.export import (
    canonical_json,
    export,
    render,
    to_csv,
    to_json,
)
from coulomb_tmatrix.scripts.tmatrix_grid import GridSpec, run_grid


def three_row_grid():
    spec = GridSpec(k_values=(3.0,), k_prime_values=(3.0,),
                    cos_theta_values=(-0.5, 0.0, 1.0), energy=-2.0,
                    representations=("series",),
                    system=TwoBodySystem.natural(1.0))
    return run_grid(spec)


class CanonicalJsonTests(SimpleTestCase):

    def test_floats_and_keys(self):
        text = canonical_json({"b": 1.0, "a": [0.1, None, float("nan")],
                               "c": -0.0, "d": np.float64(2.5), "e": True})
        self.assertEqual(
            text,
            '{"a":[0.10000000000000001,null,null],"b":1,"c":0,"d":2.5,'
            '"e":true}')

    def test_unknown_type(self):
        with self.assertRaises(OutOfRangeError):
            canonical_json({"a": object()})

    def test_format_float(self):
        self.assertEqual(format_float(1.0 / 3.0), "0.33333333333333331")
        self.assertEqual(format_float(None), "")
        self.assertEqual(format_float(float("inf")), "")


class ExportTests(SimpleTestCase):

    def test_csv_lines(self):
        text = to_csv(three_row_grid())
        lines = text.split("\r\n")
        self.assertEqual(lines[-1], "")
        self.assertEqual(len(lines) - 1, 4)
        self.assertEqual(lines[0], ",".join(GRID_HEADER))
        # the forward point is a flagged row without value
        self.assertTrue(lines[3].endswith(",series,,,FORWARD_SINGULAR"))

    def test_json_is_canonical(self):
        text = to_json(three_row_grid())
        record = json.loads(text)
        self.assertEqual(record["schema_version"], 1)
        self.assertEqual(record["kind"], "grid")
        self.assertEqual(canonical_json(record) + "\n", text)

    def test_repeated_runs_are_identical(self):
        self.assertEqual(to_json(three_row_grid()), to_json(three_row_grid()))
        self.assertEqual(to_csv(three_row_grid()), to_csv(three_row_grid()))

    def test_write_file(self):
        result = three_row_grid()
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "grid.csv")
            text = export(result, "csv", path)
            with open(path, newline="") as fh:
                self.assertEqual(fh.read(), text)

    def test_errors(self):
        result = three_row_grid()
        with self.assertRaises(OutOfRangeError):
            render(result, "xml")
        with self.assertRaises(IoFailureError):
            export(result, "json", "/nonexistent/dir/grid.json")


class ArgumentTests(SimpleTestCase):

    def test_split_args(self):
        self.assertEqual(split_args(["k-list=1,2", "energy=-2"]),
                         {"k_list": "1,2", "energy": "-2"})
        with self.assertRaises(OutOfRangeError):
            split_args(["energy"])

    def test_parse_float_list(self):
        self.assertEqual(parse_float_list("1, 2.5,3"), [1.0, 2.5, 3.0])
        with self.assertRaises(OutOfRangeError):
            parse_float_list("1,,2")
