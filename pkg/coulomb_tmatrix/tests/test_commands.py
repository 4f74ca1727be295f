import logging
import os
import tempfile
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from coulomb_tmatrix.scripts import tmatrix_grid, tmatrix_validate
from coulomb_tmatrix.scripts.config import (
    get_logging_level,
    quadrature_spec_from_config,
    read_numerics_config,
    read_process_config,
    series_options_from_config,
)


class ConfigTests(SimpleTestCase):

    def test_process_sections(self):
        self.assertIn("THREADS", read_process_config("tmatrix_grid"))
        self.assertIn("LOG_LEVEL", read_process_config("tmatrix_validate"))
        with self.assertRaises(KeyError):
            read_process_config("tmatrix_plot")

    def test_numerics_sections(self):
        self.assertEqual(series_options_from_config().target_rel_tol, 1e-10)
        self.assertEqual(series_options_from_config(1e-6).target_rel_tol,
                         1e-6)
        self.assertEqual(quadrature_spec_from_config().rel_tol, 1e-11)
        self.assertEqual(read_numerics_config("validation")["TOLERANCE"],
                         1e-8)

    def test_logging_level(self):
        self.assertEqual(get_logging_level("DEBUG"), logging.DEBUG)
        self.assertEqual(get_logging_level("LOUD"), logging.INFO)


class GridCommandTests(SimpleTestCase):

    def test_csv_to_stdout(self):
        out = StringIO()
        call_command("tmatrix_grid", energy=-2.0, k_list="1", kp_list="3",
                     cos_list="0,0.5", reps="series,closed", threads=1,
                     stdout=out)
        lines = out.getvalue().split("\r\n")
        self.assertEqual(len(lines), 6)
        self.assertTrue(lines[0].startswith("k,k_prime,cos_theta,omega"))

    def test_json_to_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "grid.json")
            out = StringIO()
            call_command("tmatrix_grid", kappa=1.0, gamma=-0.3, k_list="1",
                         kp_list="2", cos_list="0", reps="series,separated",
                         format="json", out=path, threads=1, stdout=out)
            self.assertEqual(out.getvalue(), "")
            with open(path) as fh:
                self.assertIn('"schema_version":1', fh.read())

    def test_usage_error(self):
        with self.assertRaises(CommandError) as cm:
            call_command("tmatrix_grid", k_list="1", kp_list="3",
                         cos_list="0", stdout=StringIO())
        self.assertEqual(cm.exception.returncode, 2)
        with self.assertRaises(CommandError) as cm:
            call_command("tmatrix_grid", energy=1.0, k_list="1", kp_list="3",
                         cos_list="0", threads=1, stdout=StringIO())
        self.assertEqual(cm.exception.returncode, 2)


class ValidateCommandTests(SimpleTestCase):

    def test_tolerance_too_small(self):
        with self.assertRaises(CommandError) as cm:
            call_command("tmatrix_validate", tol=1e-13, stdout=StringIO())
        self.assertEqual(cm.exception.returncode, 2)


class RunscriptTests(SimpleTestCase):

    def test_grid_script(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "grid.csv")
            tmatrix_grid.run("energy=-2", "k-list=1,2", "kp-list=3",
                             "cos-list=0", "threads=1", "out=" + path)
            with open(path, newline="") as fh:
                self.assertEqual(len(fh.read().split("\r\n")), 4)

    def test_grid_script_usage(self):
        with self.assertRaises(SystemExit) as cm:
            tmatrix_grid.run("k-list=1")
        self.assertEqual(cm.exception.code, 2)

    def test_validate_script_usage(self):
        with self.assertRaises(SystemExit) as cm:
            tmatrix_validate.run("tol=0")
        self.assertEqual(cm.exception.code, 2)
