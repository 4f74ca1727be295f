"""Cross-validate every representation of the Coulomb T-matrix.

Each check compares two independent evaluations and records CONFIRMED or
DISCREPANT with the largest deviation found.  Published formulas that
disagree with the series are findings and end as DISCREPANT entries.  A
disagreement between the two numerical oracles (series and Schwinger
quadrature), or a published formula whose regenerated form is also
DISCREPANT, is a defect of this package and raises InternalFailureError.

Run through the management command ``./manage.py tmatrix_validate`` or
``./manage.py runscript tmatrix_validate``.
"""

import itertools
import logging
import math
import sys
from collections import namedtuple
from dataclasses import dataclass, field

import mpmath
import numpy as np
import scipy

from coulomb_tmatrix.closed_forms import (
    CORRECTED,
    PRINTED,
    VALIDATION_GRID,
    VALIDATION_THRESHOLD,
    ORACLE_OPTIONS,
    Y_PHI,
    Y_PRINTED,
    ClosedFormId,
    aux_integrals,
    closed_form_ids,
    half_integer_aux,
    tmatrix_explicit,
    tmatrix_half,
    tmatrix_separated,
    validate_explicit,
    validate_separated,
)
from coulomb_tmatrix.errors import (
    BoundStatePoleError,
    InternalFailureError,
    NonNegativeEnergyError,
    OnShellDiagonalError,
    OutOfRangeError,
    TmatrixError,
)
from coulomb_tmatrix.kinematics import (
    TwoBodySystem,
    born_term,
    energy_state_from_kappa,
    make_energy_state,
    make_fock_point,
    potential_matrix_element,
)
from coulomb_tmatrix.quadrature import (
    L_MAX,
    X_GAMMA,
    integrate_aux,
    legendre_values,
    project_partial_wave,
    project_partial_waves,
    schwinger_sum,
    tmatrix_schwinger,
)
from coulomb_tmatrix.representations import get_representations
from coulomb_tmatrix.results import (
    CONFIRMED,
    DISCREPANT,
    STATUS_LIST,
    deviation,
)
from coulomb_tmatrix.scripts.common import (
    EXIT_ALL_CONFIRMED,
    EXIT_DISCREPANCIES,
    EXIT_INTERNAL,
    EXIT_USAGE,
    split_args,
)
from coulomb_tmatrix.scripts.config import (
    read_numerics_config,
    setup_logging,
)
from coulomb_tmatrix.series import (
    PRINTED as PRINTED_LOG,
    RationalGamma,
    fock_sum,
    half_integer_sum,
    rational_sum,
    tmatrix_series,
)

IDENTITY = "identity"
FORM = "form"
COVERAGE = "coverage"

HALF_INTEGER_THRESHOLD = 1e-10
AUX_THRESHOLD = 1e-10
RATIONAL_THRESHOLD = 1e-9
BORN_LIMIT_THRESHOLD = 1e-6
BORN_IDENTITY_THRESHOLD = 1e-12
PARTIAL_WAVE_THRESHOLD = 1e-8
RECONSTRUCTION_THRESHOLD = 1e-4

AUX_OMEGAS = (0.1, 0.5, 1.0, 2.0, 3.0)
# forward region of the half-integer identity
SMALL_OMEGAS = (1e-3, 1e-4, 1e-5)
RATIONAL_GAMMAS = ("1/3", "-1/3", "1/4", "-1/4", "2/3", "-2/3",
                   "3/2", "-3/2", "5/2", "-5/2", "7/2", "-7/2")
SEPARATED_GAMMAS = (0.3, -0.3, 0.5, -0.5)
POLE_EPSILONS = (1e-3, 1e-5)
POLE_OMEGAS = (1.0, 2.0)
# (k, k', cos_theta) in units of kappa
AGREEMENT_POINTS = ((1.0, 3.0, 0.3), (2.0, 0.5, -0.7), (0.4, 2.5, 0.9))

REQUIRED_OPERATIONS = [
    "make_energy_state", "make_fock_point", "born_term",
    "fock_sum", "half_integer_sum", "rational_sum", "tmatrix_series",
    "tmatrix_half", "tmatrix_explicit", "aux_integrals", "tmatrix_separated",
    "schwinger_integral", "schwinger_sum", "tmatrix_schwinger",
    "integrate_aux", "project_partial_wave",
]

CHECK_HEADER = ["name", "kind", "status", "max_deviation", "omega_at_max",
                "details"]

CheckResult = namedtuple('CheckResult', CHECK_HEADER)


@dataclass
class ValidationReport:
    """Outcome of run_validation.
    :var float tolerance: agreement tolerance between representations
    :var list checks: CheckResults, each check appears once
    :var set exercised: operations called by the checks
    :var dict environment: tolerances, grids and library versions
    """
    tolerance: float
    checks: list = field(default_factory=list)
    exercised: set = field(default_factory=set)
    environment: dict = field(default_factory=dict)

    def add(self, check, *operations):
        if check.name in [c.name for c in self.checks]:
            raise InternalFailureError(
                "Check {} recorded twice".format(check.name)
            )
        self.checks.append(check)
        self.exercised.update(operations)
        logging.info("{:<40} {}".format(check.name, STATUS_LIST[check.status]))
        return check

    def get(self, name):
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def coverage(self):
        return {op: op in self.exercised for op in REQUIRED_OPERATIONS}

    def discrepancies(self):
        return [c for c in self.checks if c.status == DISCREPANT]

    def exit_status(self):
        if self.discrepancies():
            return EXIT_DISCREPANCIES
        return EXIT_ALL_CONFIRMED

    def summary(self):
        return {name: sum(1 for c in self.checks if c.status == status)
                for status, name in enumerate(STATUS_LIST)}

    def to_dict(self):
        checks = []
        for c in self.checks:
            record = c._asdict()
            record["status"] = STATUS_LIST[c.status]
            checks.append(record)
        return {
            "kind": "validation",
            "checks": checks,
            "coverage": self.coverage(),
            "environment": self.environment,
            "exit_status": self.exit_status(),
            "summary": self.summary(),
        }

    def to_table(self):
        rows = []
        for c in self.checks:
            rows.append([c.name, c.kind, STATUS_LIST[c.status],
                         c.max_deviation, c.omega_at_max, c.details])
        return CHECK_HEADER, rows


class _Worst(object):
    """Tracks the largest deviation of a check and where it occurs."""

    def __init__(self):
        self.deviation = 0.0
        self.omega = None

    def update(self, dev, omega=None):
        if not math.isfinite(dev):
            dev = math.inf
        if dev >= self.deviation:
            self.deviation, self.omega = dev, omega

    def result(self, name, kind, threshold, details=""):
        status = CONFIRMED if self.deviation <= threshold else DISCREPANT
        return CheckResult(name, kind, status, self.deviation, self.omega,
                           details)


def _relative(value, reference):
    return abs(value - reference) / max(abs(reference), 1e-300)


def check_half_integer_sum(report, identity_points):
    worst = _Worst()
    grid = np.linspace(0.05, math.pi - 0.05, identity_points)
    for sign in (1, -1):
        for omega in itertools.chain(SMALL_OMEGAS, grid):
            omega = float(omega)
            summed = fock_sum(0.5 * sign, omega, ORACLE_OPTIONS).value
            worst.update(_relative(summed, half_integer_sum(sign, omega)),
                         omega)
    report.add(worst.result(
        "half_integer_sum_identity", IDENTITY, HALF_INTEGER_THRESHOLD,
        "series against the closed form at gamma = +-1/2, {} points "
        "and omega = {}".format(
            identity_points, ", ".join(str(w) for w in SMALL_OMEGAS))),
        "fock_sum", "half_integer_sum")


def check_aux_closed_forms(report):
    worst = {"x": _Worst(), "y": _Worst(), "c": _Worst(), "y_printed": _Worst()}
    for sign in (1, -1):
        for omega in AUX_OMEGAS:
            exact = half_integer_aux(sign, omega)
            aux = aux_integrals(0.5 * sign, omega)
            printed = aux_integrals(0.5 * sign, omega, y_variant=Y_PRINTED)
            worst["x"].update(deviation(aux.x_gamma, exact.x_gamma), omega)
            worst["y"].update(deviation(aux.y_gamma, exact.y_gamma), omega)
            worst["c"].update(deviation(aux.c_gamma, exact.c_gamma), omega)
            worst["y_printed"].update(
                deviation(printed.y_gamma, exact.y_gamma), omega)
        x_pi = integrate_aux(X_GAMMA, 0.5 * sign, math.pi)
        worst["x"].update(deviation(x_pi, 2.0 * sign), math.pi)
    report.add(worst["x"].result(
        "aux_x_half_integer", IDENTITY, AUX_THRESHOLD,
        "x_gamma = +-2 sin(omega/2)"), "aux_integrals", "integrate_aux")
    report.add(worst["y"].result(
        "aux_y_half_integer", IDENTITY, AUX_THRESHOLD,
        "y_gamma with ln|sin(phi/2)| in the integrand"), "aux_integrals")
    report.add(worst["c"].result(
        "aux_c_half_integer", IDENTITY, AUX_THRESHOLD,
        "c = 1/2 -+ 1/pi"), "aux_integrals")

    phi_ok = worst["y"].deviation <= AUX_THRESHOLD
    printed_ok = worst["y_printed"].deviation <= AUX_THRESHOLD
    details = ("phi variant max. deviation {:.3e}; printed variant "
               "ln|sin(omega/2)| max. deviation {:.3e}; selected: {}".format(
                   worst["y"].deviation, worst["y_printed"].deviation,
                   Y_PHI if phi_ok else "none"))
    status = CONFIRMED if phi_ok and not printed_ok else DISCREPANT
    report.add(CheckResult("y_integrand_selection", IDENTITY, status,
                           worst["y_printed"].deviation,
                           worst["y_printed"].omega, details),
               "aux_integrals")


def check_schwinger_bridge(report, samples, seed):
    rng = np.random.default_rng(seed)
    gammas = rng.uniform(-0.9, 3.0, samples)
    omegas = rng.uniform(0.1, math.pi - 0.1, samples)
    worst = _Worst()
    worst_gamma = None
    for gamma, omega in zip(gammas, omegas):
        gamma, omega = float(gamma), float(omega)
        summed = fock_sum(gamma, omega, ORACLE_OPTIONS).value
        bridged = schwinger_sum(gamma, omega)
        dev = _relative(bridged, summed)
        if dev > worst.deviation:
            worst_gamma = gamma
        worst.update(dev, omega)
    check = report.add(worst.result(
        "schwinger_series_bridge", IDENTITY, report.tolerance,
        "I(gamma, omega) sin(omega) = S(gamma, omega), {} samples, "
        "worst gamma {}".format(samples, worst_gamma)),
        "fock_sum", "schwinger_integral", "schwinger_sum")
    if check.status != CONFIRMED:
        logging.error(
            "Series and Schwinger quadrature disagree: {:.3e} at gamma = {}, "
            "omega = {}".format(worst.deviation, worst_gamma, worst.omega)
        )
        raise InternalFailureError(
            "Series and Schwinger quadrature disagree by {:.3e}".format(
                worst.deviation)
        )


def check_rational_generator(report):
    worst = _Worst()
    printed = _Worst()
    for text in RATIONAL_GAMMAS:
        gamma = RationalGamma.parse(text)
        for omega in VALIDATION_GRID:
            omega = float(omega)
            reference = fock_sum(gamma.value, omega, ORACLE_OPTIONS).value
            worst.update(deviation(rational_sum(gamma, omega), reference),
                         omega)
            if gamma.numerator > gamma.denominator:
                printed.update(deviation(
                    rational_sum(gamma, omega, log_variant=PRINTED_LOG),
                    reference), omega)
    report.add(worst.result(
        "rational_generator", IDENTITY, RATIONAL_THRESHOLD,
        "log argument (x + 2 k pi)/(2m), gamma in {}".format(
            ",".join(RATIONAL_GAMMAS))),
        "rational_sum", "fock_sum")
    report.add(printed.result(
        "rational_generator_printed_log", IDENTITY, RATIONAL_THRESHOLD,
        "log argument (x + 2 k pi)/m on the n/m > 1 branch"),
        "rational_sum")


def _add_form_pair(report, printed, corrected):
    for v in (printed, corrected):
        report.add(CheckResult(v.name, FORM, v.status, v.max_deviation,
                               v.omega_at_max, ""))
    if printed.status == DISCREPANT and corrected.status == DISCREPANT:
        logging.error(
            "{} has no validated correction".format(printed.name)
        )
        raise InternalFailureError(
            "{} and its corrected form are both DISCREPANT".format(
                printed.name)
        )


def check_explicit_forms(report):
    for form_id in closed_form_ids():
        _add_form_pair(report,
                       validate_explicit(form_id, PRINTED),
                       validate_explicit(form_id, CORRECTED))


def check_separated_forms(report):
    for gamma in SEPARATED_GAMMAS:
        _add_form_pair(report,
                       validate_separated(gamma, PRINTED, Y_PHI),
                       validate_separated(gamma, CORRECTED, Y_PHI))
    report.exercised.add("aux_integrals")


def check_representation_agreement(report):
    """Series, Schwinger, explicit and separated forms at gamma = 1/2."""
    state = make_energy_state(TwoBodySystem.natural(1.0), -2.0)
    worst = _Worst()
    for k, kp, c in AGREEMENT_POINTS:
        point = make_fock_point(state, k * state.kappa, kp * state.kappa, c)
        series = tmatrix_series(state, point).value
        schwinger = tmatrix_schwinger(state, point).value
        oracle_dev = _relative(schwinger, series)
        if oracle_dev > report.tolerance:
            logging.error(
                "Series and Schwinger T-matrices disagree by {:.3e} at "
                "omega = {}".format(oracle_dev, point.omega)
            )
            raise InternalFailureError(
                "Series and Schwinger T-matrices disagree by {:.3e}".format(
                    oracle_dev)
            )
        worst.update(oracle_dev, point.omega)
        worst.update(_relative(tmatrix_half(state, point).value, series),
                     point.omega)
        worst.update(_relative(
            tmatrix_separated(state, point, validate=False).value, series),
            point.omega)
    attractive = make_energy_state(TwoBodySystem.natural(-1.0), -2.0)
    for k, kp, c in AGREEMENT_POINTS:
        point = make_fock_point(attractive, k * attractive.kappa,
                                kp * attractive.kappa, c)
        worst.update(_relative(tmatrix_half(attractive, point).value,
                               tmatrix_series(attractive, point).value),
                     point.omega)
    report.add(worst.result(
        "representation_agreement", IDENTITY, report.tolerance,
        "series, Schwinger, explicit and separated at gamma = 1/2; "
        "series and explicit at gamma = -1/2"),
        "make_energy_state", "make_fock_point", "tmatrix_series",
        "tmatrix_schwinger", "tmatrix_half", "tmatrix_separated")


def check_backward_limit(report):
    """omega = pi: series limit against the explicit form at gamma = 1/4."""
    system = TwoBodySystem.natural(1.0)
    state = energy_state_from_kappa(system, 4.0)
    point = make_fock_point(state, state.kappa, state.kappa, -1.0)
    series = tmatrix_series(state, point).value
    explicit = tmatrix_explicit(ClosedFormId.from_gamma("1/4"), state,
                                point).value
    worst = _Worst()
    worst.update(_relative(explicit, series), point.omega)
    report.add(worst.result(
        "backward_limit", IDENTITY, report.tolerance,
        "omega = pi at gamma = 1/4"),
        "tmatrix_series", "tmatrix_explicit")


def check_born_limit(report):
    system = TwoBodySystem.natural(1.0)
    state = make_energy_state(system, -0.5, gamma_override=1e-8)
    worst = _Worst()
    identity = _Worst()
    for k, kp, c in AGREEMENT_POINTS:
        point = make_fock_point(state, k, kp, c)
        born = born_term(state, point)
        identity.update(_relative(
            born, potential_matrix_element(state, k, kp, c)), point.omega)
        for rep_class in get_representations():
            rep = rep_class()
            if not rep.applicable(state):
                continue
            worst.update(_relative(rep.evaluate(state, point).value, born),
                         point.omega)
    report.add(worst.result(
        "born_limit", IDENTITY, BORN_LIMIT_THRESHOLD,
        "every applicable representation at gamma = 1e-8"),
        "born_term", "tmatrix_series", "tmatrix_schwinger",
        "tmatrix_separated")
    report.add(identity.result(
        "born_potential_identity", IDENTITY, BORN_IDENTITY_THRESHOLD,
        "Fock-variable Born term against 4 pi q1 q2 / |k - k'|^2"),
        "born_term", "make_fock_point")


def check_pole_behaviour(report):
    worst = _Worst()
    for eps in POLE_EPSILONS:
        for omega in POLE_OMEGAS:
            summed = fock_sum(-1.0 + eps, omega).value
            # measured in units of the allowed 10 eps
            worst.update(_relative(eps * summed, math.sin(omega)) /
                         (10.0 * eps), omega)
    try:
        fock_sum(-1.0, 1.0)
        raised = False
    except BoundStatePoleError:
        raised = True
    if not raised:
        worst.update(math.inf)
    report.add(worst.result(
        "bound_state_pole", IDENTITY, 1.0,
        "(1 + gamma) S -> sin(omega) within 10 eps; pole raised at "
        "gamma = -1"),
        "fock_sum")


def check_partial_wave(report):
    system = TwoBodySystem.natural(1.0)
    state = make_energy_state(system, -0.5, gamma_override=0.0)
    k, kp = 2.0, 0.5
    exact = (math.pi * system.charge_product / (k * kp) *
             math.log((k + kp) ** 2 / (k - kp) ** 2))
    worst = _Worst()
    worst.update(_relative(
        project_partial_wave(0, state, k, kp, "born").value, exact))
    try:
        project_partial_wave(0, state, k, k, "born")
        worst.update(math.inf)
    except OnShellDiagonalError:
        pass
    report.add(worst.result(
        "partial_wave_born", IDENTITY, PARTIAL_WAVE_THRESHOLD,
        "l = 0 Born projection against its logarithm; k = k' rejected"),
        "project_partial_wave")

    coulomb = make_energy_state(system, -2.0)
    k, kp = 2.0 * coulomb.kappa, 0.5 * coulomb.kappa
    values, _, _ = project_partial_waves(L_MAX, coulomb, k, kp, "series")
    summed = float(np.dot((2.0 * np.arange(L_MAX + 1) + 1.0) * values,
                          legendre_values(L_MAX, 0.0)))
    direct = tmatrix_series(coulomb, make_fock_point(coulomb, k, kp, 0.0))
    worst = _Worst()
    worst.update(_relative(summed, direct.value))
    report.add(worst.result(
        "partial_wave_reconstruction", IDENTITY, RECONSTRUCTION_THRESHOLD,
        "sum over l <= {} of (2l + 1) t_l P_l(0) at gamma = 1/2, k = 2 kappa, "
        "k' = kappa/2".format(L_MAX)),
        "project_partial_wave", "tmatrix_series")


def check_coverage(report):
    missing = [op for op, done in report.coverage().items() if not done]
    if missing:
        raise InternalFailureError(
            "Validation did not exercise {}".format(", ".join(missing))
        )
    report.add(CheckResult("coverage", COVERAGE, CONFIRMED, 0.0, None,
                           "{} operations exercised".format(
                               len(REQUIRED_OPERATIONS))))


def run_validation(tolerance=1e-8, identity_points=100, bridge_samples=1000,
                   seed=20240401):
    """Run every check and return the ValidationReport."""
    if not tolerance >= 1e-12:
        raise OutOfRangeError(
            "Validation tolerance must be at least 1e-12, got {}".format(
                tolerance)
        )
    report = ValidationReport(tolerance)
    report.environment = {
        "tolerance": tolerance,
        "form_threshold": VALIDATION_THRESHOLD,
        "standard_grid": {"start": float(VALIDATION_GRID[0]),
                          "stop": float(VALIDATION_GRID[-1]),
                          "points": len(VALIDATION_GRID)},
        "identity_grid_points": identity_points,
        "bridge_samples": bridge_samples,
        "seed": seed,
        "series_oracle_rel_tol": ORACLE_OPTIONS.target_rel_tol,
        "mpmath": mpmath.__version__,
        "numpy": np.__version__,
        "scipy": scipy.__version__,
    }
    check_half_integer_sum(report, identity_points)
    check_aux_closed_forms(report)
    check_schwinger_bridge(report, bridge_samples, seed)
    check_rational_generator(report)
    check_explicit_forms(report)
    check_separated_forms(report)
    check_representation_agreement(report)
    check_backward_limit(report)
    check_born_limit(report)
    check_pole_behaviour(report)
    check_partial_wave(report)
    check_coverage(report)
    logging.info("Validation summary: {}".format(report.summary()))
    return report


def validate_from_options(options):
    setup_logging("tmatrix_validate")
    cfg = read_numerics_config("validation")
    tolerance = options.get("tol")
    tolerance = float(cfg["TOLERANCE"]) if tolerance is None else \
        float(tolerance)
    return run_validation(
        tolerance=tolerance,
        identity_points=int(cfg["IDENTITY_GRID_POINTS"]),
        bridge_samples=int(cfg["BRIDGE_SAMPLES"]),
        seed=int(cfg["SEED"]),
    )


def run(*args):
    """Entry point for the Django script run via ``./manage.py runscript``
    optional arguments tol=1e-8 format=json out=report.json
    """
    from coulomb_tmatrix.scripts.export import export
    try:
        arg_dict = split_args(args)
        report = validate_from_options(arg_dict)
        text = export(report, arg_dict.get("format", "json"),
                      arg_dict.get("out"))
    except (OutOfRangeError, NonNegativeEnergyError) as e:
        logging.error(str(e))
        sys.exit(EXIT_USAGE)
    except TmatrixError as e:
        logging.error(str(e))
        sys.exit(EXIT_INTERNAL)
    if arg_dict.get("out") in (None, "-"):
        sys.stdout.write(text)
    sys.exit(report.exit_status())
