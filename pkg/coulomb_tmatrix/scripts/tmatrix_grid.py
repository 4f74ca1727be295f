"""Evaluate the T-matrix over a grid of (k, k', cos_theta) for a set of
representations and tabulate one row per point and representation.

Rows are evaluated by THREADS worker processes, each taking a strided share
of the task list, and reassembled in input order: the output does not
depend on the number of processes.  Failures at single points become row
flags.

Run through the management command
    ./manage.py tmatrix_grid --energy -0.5 --k-list 0.5,1 --kp-list 2 \
        --cos-list -1,0,1 --reps series,schwinger
or through ``./manage.py runscript tmatrix_grid --script-args energy=-0.5 ...``
"""

import itertools
import logging
import math
import queue
import sys
from dataclasses import dataclass, field
from multiprocessing import Process, Queue
from typing import Optional

import coulomb_tmatrix.representations
from coulomb_tmatrix.errors import (
    TmatrixError,
    InternalFailureError,
    OutOfRangeError,
    NonNegativeEnergyError,
)
from coulomb_tmatrix.kinematics import (
    TwoBodySystem,
    make_energy_state,
    make_fock_point,
    energy_from_kappa,
)
from coulomb_tmatrix.results import NON_FINITE, ROW_ERROR, UNVALIDATED
from coulomb_tmatrix.scripts.common import (
    GridRow,
    GRID_HEADER,
    EXIT_USAGE,
    EXIT_INTERNAL,
    join_flags,
    parse_float_list,
    parse_id_list,
    split_args,
)
from coulomb_tmatrix.scripts.config import (
    quadrature_spec_from_config,
    series_options_from_config,
    setup_logging,
)

# seconds between liveness checks of a worker process
WORKER_POLL = 5.0


@dataclass(frozen=True)
class GridSpec:
    """Input of run_grid.
    :var tuple k_values: momenta k > 0
    :var tuple k_prime_values: momenta k' > 0
    :var tuple cos_theta_values: cosines in [-1, 1]
    :var float energy: negative energy
    :var float gamma_override: replaces the Sommerfeld parameter
    :var tuple representations: representation ids
    :var TwoBodySystem system: the pair
    """
    k_values: tuple
    k_prime_values: tuple
    cos_theta_values: tuple
    energy: float
    gamma_override: Optional[float] = None
    representations: tuple = ("series",)
    system: TwoBodySystem = field(default_factory=TwoBodySystem)

    def __post_init__(self):
        for name in ("k_values", "k_prime_values", "cos_theta_values",
                     "representations"):
            value = tuple(getattr(self, name))
            if len(value) == 0:
                raise OutOfRangeError("{} must not be empty".format(name))
            object.__setattr__(self, name, value)
        for name in ("k_values", "k_prime_values"):
            for k in getattr(self, name):
                if not (k > 0 and math.isfinite(k)):
                    raise OutOfRangeError(
                        "{} must hold positive momenta, got {}".format(
                            name, k)
                    )
        for c in self.cos_theta_values:
            if not -1.0 <= c <= 1.0:
                raise OutOfRangeError(
                    "cos_theta must lie in [-1, 1], got {}".format(c)
                )
        known = coulomb_tmatrix.representations.get_representation_ids()
        for rep in self.representations:
            if rep not in known:
                raise OutOfRangeError(
                    "Representation {} not recognised, use one of {}".format(
                        rep, ",".join(known))
                )

    def points(self):
        """(k, k', cos_theta) in lexicographic order of the input lists."""
        return list(itertools.product(self.k_values, self.k_prime_values,
                                      self.cos_theta_values))

    def tasks(self):
        return [(k, kp, c, rep) for (k, kp, c) in self.points()
                for rep in self.representations]


@dataclass
class GridResult:
    spec: GridSpec
    state: object
    rows: list

    def parameters(self):
        system = self.spec.system
        return {
            "energy": self.state.energy,
            "kappa": self.state.kappa,
            "gamma": self.state.gamma,
            "gamma_override": self.spec.gamma_override,
            "reduced_mass": system.reduced_mass,
            "charge_product": system.charge_product,
            "hbar": system.hbar,
            "representations": list(self.spec.representations),
        }

    def to_dict(self):
        rows = []
        for row in self.rows:
            record = row._asdict()
            record["flags"] = list(row.flags)
            rows.append(record)
        return {"kind": "grid", "parameters": self.parameters(),
                "rows": rows}

    def to_table(self):
        cells = []
        for row in self.rows:
            cells.append(list(row[:-1]) + [join_flags(row.flags)])
        return GRID_HEADER, cells

    def values(self, representation):
        return [row.value for row in self.rows
                if row.representation == representation]


def evaluate_row(state, k, k_prime, cos_theta, rep):
    """One GridRow; TmatrixErrors and non-finite values become flags."""
    rep_id = rep.get_id()
    try:
        point = make_fock_point(state, k, k_prime, cos_theta)
    except TmatrixError as e:
        return GridRow(k, k_prime, cos_theta, None, None, state.gamma,
                       rep_id, None, None, (e.flag,))
    try:
        result = rep.evaluate(state, point)
    except TmatrixError as e:
        return GridRow(k, k_prime, cos_theta, point.omega, point.eta,
                       state.gamma, rep_id, None, None, (e.flag,))
    except (ArithmeticError, ValueError):
        return GridRow(k, k_prime, cos_theta, point.omega, point.eta,
                       state.gamma, rep_id, None, None, (NON_FINITE,))
    except Exception:
        return GridRow(k, k_prime, cos_theta, point.omega, point.eta,
                       state.gamma, rep_id, None, None, (ROW_ERROR,))
    flags = list(result.flags)
    if result.status != UNVALIDATED:
        flags.append(result.status_name())
    value = result.value
    err = result.abs_err_est
    if not (math.isfinite(value) and math.isfinite(err)):
        value, err = None, None
        flags.append(NON_FINITE)
    return GridRow(k, k_prime, cos_theta, point.omega, point.eta,
                   state.gamma, rep_id, value, err, tuple(flags))


def _make_representations(rep_ids, series_options, quadrature_spec):
    reps = {}
    for rep_id in rep_ids:
        rep_class = coulomb_tmatrix.representations.get_representation_from_id(
            rep_id)
        reps[rep_id] = rep_class(series_options=series_options,
                                 quadrature_spec=quadrature_spec)
    return reps


def evaluate_tasks(state, indexed_tasks, series_options, quadrature_spec):
    reps = _make_representations(
        sorted(set(t[1][3] for t in indexed_tasks)),
        series_options, quadrature_spec)
    rows = []
    for index, (k, kp, c, rep_id) in indexed_tasks:
        rows.append((index, evaluate_row(state, k, kp, c, reps[rep_id])))
    return rows


def grid_worker(state, indexed_tasks, series_options, quadrature_spec, q):
    """Process target: puts the indexed rows, or the error message, on q."""
    # don't log in the worker processes
    try:
        q.put(evaluate_tasks(state, indexed_tasks, series_options,
                             quadrature_spec))
    except Exception as e:
        q.put("{}: {}".format(type(e).__name__, e))


def collect_rows(p, q, poll=WORKER_POLL):
    """Wait for the rows of worker process p.  A worker that stops without
    leaving its rows on q raises InternalFailureError."""
    while True:
        try:
            rows = q.get(timeout=poll)
            break
        except queue.Empty:
            if p.is_alive():
                continue
            try:
                rows = q.get_nowait()
                break
            except queue.Empty:
                raise InternalFailureError(
                    "Grid worker {} exited with code {} and no rows".format(
                        p.name, p.exitcode)
                )
    if isinstance(rows, str):
        raise InternalFailureError(
            "Grid worker {} failed: {}".format(p.name, rows)
        )
    return rows


def run_grid(spec, threads=1, series_options=None, quadrature_spec=None):
    """Evaluate every (k, k', cos_theta, representation) of the GridSpec."""
    state = make_energy_state(spec.system, spec.energy, spec.gamma_override)
    tasks = list(enumerate(spec.tasks()))
    logging.info(
        "Evaluating {} grid rows at E = {}, gamma = {} on {} "
        "process(es)".format(len(tasks), state.energy, state.gamma, threads)
    )
    if threads <= 1:
        indexed_rows = evaluate_tasks(state, tasks, series_options,
                                      quadrature_spec)
    else:
        processes = []
        for tn in range(0, threads):
            local_tasks = tasks[tn::threads]
            q = Queue()
            p = Process(
                target=grid_worker,
                args=(state, local_tasks, series_options, quadrature_spec, q)
            )
            p.start()
            processes.append((p, q))
        # block here until all processes have completed
        indexed_rows = []
        try:
            for p, q in processes:
                indexed_rows.extend(collect_rows(p, q))
                p.join()
        except InternalFailureError:
            for p, _ in processes:
                if p.is_alive():
                    p.terminate()
            raise
    indexed_rows.sort(key=lambda r: r[0])
    rows = [r[1] for r in indexed_rows]
    flagged = sum(1 for r in rows if r.value is None)
    if flagged:
        logging.warning("{} grid rows carry no value".format(flagged))
    return GridResult(spec, state, rows)


def build_grid_spec(options):
    """GridSpec from the command options.
    Physical mode needs --energy, dimensionless mode --kappa (and usually
    --gamma); the two are exclusive."""
    energy = options.get("energy")
    kappa = options.get("kappa")
    if (energy is None) == (kappa is None):
        raise OutOfRangeError("Give exactly one of --energy and --kappa")
    for name in ("k_list", "kp_list", "cos_list"):
        if options.get(name) is None:
            raise OutOfRangeError(
                "--{} is required".format(name.replace("_", "-"))
            )
    mu = float(options.get("mu") or 1.0)
    hbar = float(options.get("hbar") or 1.0)
    q1q2 = options.get("q1q2")
    q1q2 = 1.0 if q1q2 is None else float(q1q2)
    gamma = options.get("gamma")
    gamma = None if gamma is None else float(gamma)
    if q1q2 == 0:
        system = TwoBodySystem.free_particle(0.0, mu, hbar)
    else:
        system = TwoBodySystem(mu, q1q2, hbar)
    if kappa is not None:
        kappa = float(kappa)
        if not kappa > 0:
            raise OutOfRangeError("kappa must be positive, got {}".format(
                kappa))
        energy = energy_from_kappa(system, kappa)
    return GridSpec(
        k_values=parse_float_list(options["k_list"], "--k-list"),
        k_prime_values=parse_float_list(options["kp_list"], "--kp-list"),
        cos_theta_values=parse_float_list(options["cos_list"], "--cos-list"),
        energy=float(energy),
        gamma_override=gamma,
        representations=parse_id_list(options.get("reps") or "series"),
        system=system,
    )


def grid_from_options(options):
    """Configure from the config file and the options, run the grid."""
    config = setup_logging("tmatrix_grid")
    spec = build_grid_spec(options)
    threads = options.get("threads")
    threads = int(threads) if threads else int(config.get("THREADS", 1))
    return run_grid(
        spec,
        threads=threads,
        series_options=series_options_from_config(options.get("tol")),
        quadrature_spec=quadrature_spec_from_config(),
    )


def run(*args):
    """Entry point for the Django script run via ``./manage.py runscript``
    arguments are key=value pairs named like the command flags, e.g.
    k-list=1,2 format=json out=grid.json
    """
    from coulomb_tmatrix.scripts.export import export
    try:
        arg_dict = split_args(args)
        result = grid_from_options(arg_dict)
        text = export(result, arg_dict.get("format", "csv"),
                      arg_dict.get("out"))
    except (OutOfRangeError, NonNegativeEnergyError) as e:
        logging.error(str(e))
        sys.exit(EXIT_USAGE)
    except TmatrixError as e:
        logging.error(str(e))
        sys.exit(EXIT_INTERNAL)
    if arg_dict.get("out") in (None, "-"):
        sys.stdout.write(text)
