"""Read in the config file, convert from JSON to a dictionary and return
the config for a process or a numerics section."""

import json
import logging

from django.conf import settings

from coulomb_tmatrix.quadrature import QuadratureSpec
from coulomb_tmatrix.series import SeriesOptions


def config_path():
    """Return the path of the config file"""
    return settings.TMATRIX_CONFIG


def read_config():
    cfg_path = config_path()
    with open(cfg_path) as fh:
        return json.load(fh)


def _read_section(group, name, what):
    cfg = read_config()
    try:
        return cfg[group][name]
    except KeyError:
        raise KeyError("{} {} not found in config file {}".format(
            what, name, config_path())
        )


def read_process_config(process):
    """Read in the config file and return the dictionary for the process."""
    return _read_section("processes", process, "Process")


def read_numerics_config(section):
    """Read in the config file and return the dictionary for a numerics
    section: series, quadrature or validation."""
    return _read_section("numerics", section, "Numerics section")


def series_options_from_config(target_rel_tol=None):
    """SeriesOptions from the series section; target_rel_tol overrides the
    configured tolerance (the --tol flag)."""
    cfg = read_numerics_config("series")
    if target_rel_tol is None:
        target_rel_tol = cfg["TARGET_REL_TOL"]
    return SeriesOptions(
        max_terms=int(cfg["MAX_TERMS"]),
        target_rel_tol=float(target_rel_tol),
        acceleration=cfg.get("ACCELERATION", "none"),
    )


def quadrature_spec_from_config():
    cfg = read_numerics_config("quadrature")
    return QuadratureSpec(
        abs_tol=float(cfg["ABS_TOL"]),
        rel_tol=float(cfg["REL_TOL"]),
        max_depth=int(cfg["MAX_DEPTH"]),
        endpoint_handling=cfg.get("ENDPOINT_HANDLING", "power_weight"),
    )


def get_logging_level(loglevel):
    """Convert a logging level string into a logging.LOG_LEVEL"""
    if loglevel == "DEBUG":
        return logging.DEBUG
    elif loglevel == "INFO":
        return logging.INFO
    elif loglevel == "WARNING":
        return logging.WARNING
    elif loglevel == "ERROR":
        return logging.ERROR
    elif loglevel == "CRITICAL":
        return logging.CRITICAL
    return logging.INFO


def get_logging_format():
    """return the format string for the logger"""
    return "[%(asctime)s] %(levelname)s:%(message)s"


def setup_logging(process):
    """basicConfig for a batch process from its config section."""
    config = read_process_config(process)
    logging.basicConfig(
        format=get_logging_format(),
        level=get_logging_level(config["LOG_LEVEL"]),
        datefmt='%Y-%d-%m %I:%M:%S'
    )
    return config
