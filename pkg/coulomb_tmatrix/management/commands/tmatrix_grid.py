"""./manage.py tmatrix_grid: tabulate the T-matrix over a momentum grid."""

import logging

from django.core.management.base import BaseCommand, CommandError

from coulomb_tmatrix.errors import (
    TmatrixError,
    OutOfRangeError,
    NonNegativeEnergyError,
)
from coulomb_tmatrix.scripts.common import EXIT_USAGE, EXIT_INTERNAL
from coulomb_tmatrix.scripts.export import FORMATS, export
from coulomb_tmatrix.scripts.tmatrix_grid import grid_from_options


def add_system_arguments(parser):
    parser.add_argument("--energy", type=float,
                        help="negative energy E (physical mode)")
    parser.add_argument("--kappa", type=float,
                        help="bound-state momentum (dimensionless mode)")
    parser.add_argument("--mu", type=float, help="reduced mass, default 1")
    parser.add_argument("--hbar", type=float, help="default 1")
    parser.add_argument("--q1q2", type=float,
                        help="charge product, default 1; 0 gives the "
                             "free-particle system")
    parser.add_argument("--gamma", type=float,
                        help="override the Sommerfeld parameter")


class Command(BaseCommand):
    help = ("Evaluate the off-shell Coulomb T-matrix at every "
            "(k, k', cos_theta) and representation and write one row each.")

    def add_arguments(self, parser):
        add_system_arguments(parser)
        parser.add_argument("--k-list", dest="k_list",
                            help="comma separated momenta k")
        parser.add_argument("--kp-list", dest="kp_list",
                            help="comma separated momenta k'")
        parser.add_argument("--cos-list", dest="cos_list",
                            help="comma separated cos_theta values")
        parser.add_argument("--reps", default="series",
                            help="comma separated representations: born, "
                                 "series, schwinger, closed, separated, "
                                 "rational")
        parser.add_argument("--tol", type=float,
                            help="series target relative tolerance")
        parser.add_argument("--format", default="csv", choices=FORMATS)
        parser.add_argument("--out", default="-",
                            help="output file, - for stdout")
        parser.add_argument("--threads", type=int,
                            help="worker processes, default from the config")

    def handle(self, *args, **options):
        try:
            result = grid_from_options(options)
            text = export(result, options["format"], options["out"])
        except (OutOfRangeError, NonNegativeEnergyError) as e:
            raise CommandError(str(e), returncode=EXIT_USAGE)
        except TmatrixError as e:
            logging.error(str(e))
            raise CommandError(str(e), returncode=EXIT_INTERNAL)
        if options["out"] == "-":
            self.stdout.write(text, ending="")
