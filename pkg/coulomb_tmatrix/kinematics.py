"""Kinematics of the two-body Coulomb problem at negative energy.

Maps physical inputs (masses, charges, energy and momenta) onto the
dimensionless variables that every representation of the T-matrix uses:
  kappa - bound-state momentum,  E = -hbar^2 kappa^2 / (2 mu)
  gamma - Sommerfeld parameter,  gamma = mu q1 q2 / (hbar^2 kappa)
  omega - angle between the Fock-sphere images of k and k'
  eta   - Fock factor 2 kappa^2 k k' / ((k^2 + kappa^2)(k'^2 + kappa^2))
Vectors are reduced to (k, k', cos_theta) at the boundary.
"""

import logging
import math
from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from coulomb_tmatrix.errors import (
    NonNegativeEnergyError,
    OutOfRangeError,
    ForwardSingularityError,
    InternalConsistencyError,
)
from coulomb_tmatrix.results import near_bound_state_pole

# rounding slack allowed on sin^2(omega/2) before it is an error
SIN2_SLACK = 4 * np.finfo(float).eps

FockPoint = namedtuple('FockPoint',
                       ['k', 'k_prime', 'cos_theta', 'omega', 'eta',
                        'sin2_half', 'transfer_sq'])


@dataclass(frozen=True)
class TwoBodySystem:
    """Physical constants of the pair.
    :var float reduced_mass: mu > 0
    :var float charge_product: q1*q2, negative for attraction
    :var float hbar: Planck constant in the chosen units
    :var bool free: free-particle mode, gamma is forced to 0 and a zero
        charge product is accepted.  Only used for Born-limit tests.
    """
    reduced_mass: float = 1.0
    charge_product: float = -1.0
    hbar: float = 1.0
    free: bool = False

    def __post_init__(self):
        if not (self.reduced_mass > 0 and math.isfinite(self.reduced_mass)):
            raise OutOfRangeError(
                "reduced_mass must be positive, got {}".format(
                    self.reduced_mass)
            )
        if not (self.hbar > 0 and math.isfinite(self.hbar)):
            raise OutOfRangeError(
                "hbar must be positive, got {}".format(self.hbar)
            )
        if not math.isfinite(self.charge_product):
            raise OutOfRangeError(
                "charge_product must be finite, got {}".format(
                    self.charge_product)
            )
        if self.charge_product == 0 and not self.free:
            raise OutOfRangeError(
                "charge_product = 0 makes gamma vanish; construct the system "
                "with free=True to study the Born limit"
            )

    @classmethod
    def natural(cls, charge_product):
        """hbar = mu = 1"""
        return cls(1.0, charge_product, 1.0)

    @classmethod
    def free_particle(cls, charge_product=1.0, reduced_mass=1.0, hbar=1.0):
        return cls(reduced_mass, charge_product, hbar, free=True)


@dataclass(frozen=True)
class EnergyState:
    """Negative energy with its derived bound-state momentum and
    Sommerfeld parameter."""
    energy: float
    kappa: float
    gamma: float
    system: TwoBodySystem

    @property
    def charge_product(self):
        return self.system.charge_product


def _sommerfeld(system, kappa):
    if system.free:
        return 0.0
    return (system.reduced_mass * system.charge_product /
            (system.hbar * system.hbar * kappa))


def _check_pole(gamma):
    if near_bound_state_pole(gamma):
        logging.warning(
            "gamma = {} is close to the bound-state pole at {}".format(
                gamma, round(gamma))
        )


def _gamma_from_override(system, kappa, gamma_override):
    if gamma_override is None:
        gamma = _sommerfeld(system, kappa)
    else:
        gamma = float(gamma_override)
        if not math.isfinite(gamma):
            raise OutOfRangeError(
                "gamma must be finite, got {}".format(gamma_override)
            )
    _check_pole(gamma)
    return gamma


def make_energy_state(system, energy, gamma_override=None):
    """Build the EnergyState for a negative energy.
    gamma_override bypasses the Sommerfeld formula for dimensionless
    studies; kappa still follows from the energy."""
    if not energy < 0:
        raise NonNegativeEnergyError(
            "Energy must be negative, got {}".format(energy)
        )
    if not math.isfinite(energy):
        raise OutOfRangeError("Energy must be finite, got {}".format(energy))
    kappa = math.sqrt(-2.0 * system.reduced_mass * energy) / system.hbar
    gamma = _gamma_from_override(system, kappa, gamma_override)
    return EnergyState(energy, kappa, gamma, system)


def energy_state_from_kappa(system, kappa, gamma_override=None):
    """Dimensionless entry point: the bound-state momentum is given and the
    energy follows from it."""
    if not (kappa > 0 and math.isfinite(kappa)):
        raise OutOfRangeError("kappa must be positive, got {}".format(kappa))
    energy = energy_from_kappa(system, kappa)
    gamma = _gamma_from_override(system, kappa, gamma_override)
    return EnergyState(energy, kappa, gamma, system)


def energy_from_kappa(system, kappa):
    return -(system.hbar * kappa) ** 2 / (2.0 * system.reduced_mass)


def _check_momenta(k, k_prime):
    for name, value in (("k", k), ("k_prime", k_prime)):
        if not (value > 0 and math.isfinite(value)):
            raise OutOfRangeError(
                "{} must be a positive momentum, got {}".format(name, value)
            )


def _fock_denominator(state, k, k_prime):
    kappa2 = state.kappa * state.kappa
    return kappa2, (k * k + kappa2) * (k_prime * k_prime + kappa2)


def _eta(kappa2, k, k_prime, denom):
    eta = 2.0 * kappa2 * (k * k_prime) / denom
    if not eta > 0:
        raise OutOfRangeError(
            "Fock factor underflows for k = {}, k_prime = {}".format(
                k, k_prime)
        )
    return min(eta, 0.5)


def make_fock_point(state, k, k_prime, cos_theta):
    """Map (k, k', cos_theta) onto the Fock sphere.
    |k - k'|^2 is formed as (k - k')^2 + 2 k k' (1 - cos_theta), which has
    no cancellation in the forward region and is exactly symmetric in k, k'.
    """
    _check_momenta(k, k_prime)
    if not -1.0 <= cos_theta <= 1.0:
        raise OutOfRangeError(
            "cos_theta must lie in [-1, 1], got {}".format(cos_theta)
        )
    kappa2, denom = _fock_denominator(state, k, k_prime)
    transfer_sq = (k - k_prime) ** 2 + 2.0 * (k * k_prime) * (1.0 - cos_theta)
    sin2_half = kappa2 * transfer_sq / denom
    if sin2_half > 1.0:
        if sin2_half - 1.0 > SIN2_SLACK:
            logging.error(
                "sin^2(omega/2) = {!r} exceeds 1 for k={}, k'={}, cos={}"
                .format(sin2_half, k, k_prime, cos_theta)
            )
            raise InternalConsistencyError(
                "sin^2(omega/2) = {!r} exceeds 1 beyond rounding".format(
                    sin2_half)
            )
        sin2_half = 1.0
    omega = 2.0 * math.asin(math.sqrt(sin2_half))
    eta = _eta(kappa2, k, k_prime, denom)
    return FockPoint(k, k_prime, cos_theta, omega, eta, sin2_half,
                     transfer_sq)


def fock_point_from_omega(state, k, k_prime, omega):
    """Inverse map used by the angular quadrature: the Fock angle is given
    and cos_theta follows from it."""
    _check_momenta(k, k_prime)
    if not 0.0 <= omega <= math.pi:
        raise OutOfRangeError(
            "omega must lie in [0, pi], got {}".format(omega)
        )
    kappa2, denom = _fock_denominator(state, k, k_prime)
    sin2_half = math.sin(0.5 * omega) ** 2
    transfer_sq = sin2_half * denom / kappa2
    cos_theta = 1.0 - (transfer_sq - (k - k_prime) ** 2) / (2.0 * k * k_prime)
    cos_theta = min(1.0, max(-1.0, cos_theta))
    eta = _eta(kappa2, k, k_prime, denom)
    return FockPoint(k, k_prime, cos_theta, omega, eta, sin2_half,
                     transfer_sq)


def reduce_vectors(k_vec, k_prime_vec):
    """Reduce two momentum 3-vectors to (k, k', cos_theta)."""
    k_vec = np.asarray(k_vec, dtype=float)
    k_prime_vec = np.asarray(k_prime_vec, dtype=float)
    if k_vec.shape != (3,) or k_prime_vec.shape != (3,):
        raise OutOfRangeError("Momenta must be 3-vectors")
    k = float(np.linalg.norm(k_vec))
    k_prime = float(np.linalg.norm(k_prime_vec))
    _check_momenta(k, k_prime)
    cos_theta = float(np.dot(k_vec, k_prime_vec)) / (k * k_prime)
    return k, k_prime, min(1.0, max(-1.0, cos_theta))


def tmatrix_prefactor(state, point):
    """2 pi q1 q2 eta / (k k'), the common factor of every representation."""
    return (2.0 * math.pi * state.charge_product * point.eta /
            (point.k * point.k_prime))


def check_forward(point):
    if point.sin2_half == 0.0:
        raise ForwardSingularityError(
            "omega = 0 (k = k' = {} and cos_theta = 1): the T-matrix "
            "diverges".format(point.k)
        )


def born_term(state, point):
    """First-order term written in Fock variables,
    (2 pi q1 q2 eta / (k k')) / sin^2(omega/2)."""
    check_forward(point)
    return tmatrix_prefactor(state, point) / point.sin2_half


def potential_matrix_element(state, k, k_prime, cos_theta):
    """<k|v^C|k'> = 4 pi q1 q2 / |k - k'|^2 evaluated directly."""
    _check_momenta(k, k_prime)
    transfer_sq = (k - k_prime) ** 2 + 2.0 * (k * k_prime) * (1.0 - cos_theta)
    if transfer_sq == 0.0:
        raise ForwardSingularityError("k = k': the potential diverges")
    return 4.0 * math.pi * state.charge_product / transfer_sq
