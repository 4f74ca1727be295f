"""./manage.py tmatrix_validate: run the cross-representation checks.

Exits 0 if every check is CONFIRMED, 1 if discrepancies were found, 2 on a
usage error and 3 when the numerical oracles disagree with each other.
"""

import logging

from django.core.management.base import BaseCommand, CommandError

from coulomb_tmatrix.errors import TmatrixError, OutOfRangeError
from coulomb_tmatrix.scripts.common import (
    EXIT_ALL_CONFIRMED,
    EXIT_USAGE,
    EXIT_INTERNAL,
)
from coulomb_tmatrix.scripts.export import FORMATS, JSON_FORMAT, export
from coulomb_tmatrix.scripts.tmatrix_validate import validate_from_options


class Command(BaseCommand):
    help = ("Validate every T-matrix representation against the series and "
            "quadrature oracles and report CONFIRMED / DISCREPANT per check.")

    def add_arguments(self, parser):
        parser.add_argument("--tol", type=float,
                            help="agreement tolerance, at least 1e-12; "
                                 "default from the config")
        parser.add_argument("--format", default=JSON_FORMAT, choices=FORMATS)
        parser.add_argument("--out", default="-",
                            help="output file, - for stdout")

    def handle(self, *args, **options):
        try:
            report = validate_from_options(options)
            text = export(report, options["format"], options["out"])
        except OutOfRangeError as e:
            raise CommandError(str(e), returncode=EXIT_USAGE)
        except TmatrixError as e:
            logging.error(str(e))
            raise CommandError(str(e), returncode=EXIT_INTERNAL)
        if options["out"] == "-":
            self.stdout.write(text, ending="")
        status = report.exit_status()
        if status != EXIT_ALL_CONFIRMED:
            raise CommandError(
                "{} check(s) DISCREPANT: {}".format(
                    len(report.discrepancies()),
                    ", ".join(c.name for c in report.discrepancies())),
                returncode=status,
            )
