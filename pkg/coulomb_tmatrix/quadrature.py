"""Numerical integration for the Coulomb T-matrix.

  schwinger_integral  I(gamma, omega) = int_0^1 rho^gamma / (rho^2 - 2 rho cos
                      omega + 1) drho, with I sin(omega) = S(gamma, omega)
  integrate_aux       the x_gamma and y_gamma integrals of the
                      singularity-separated representation
  project_partial_wave  Legendre projection of any representation over the
                      scattering angle, integrated in the Fock angle

Adaptive integration uses QUADPACK through scipy.integrate.quad, the fixed
rules of the partial-wave projection use numpy's Gauss-Legendre nodes.
"""

import logging
import math
from collections import namedtuple
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate

from coulomb_tmatrix.errors import (
    NonIntegrableError,
    AttractiveOutOfRangeError,
    QuadratureFailureError,
    OutOfRangeError,
    OnShellDiagonalError,
)
from coulomb_tmatrix.kinematics import (
    check_forward,
    tmatrix_prefactor,
    fock_point_from_omega,
)
from coulomb_tmatrix.results import EvalResult, FREE_LIMIT

# endpoint treatments
NO_ENDPOINT = "none"
POWER_WEIGHT = "power_weight"
LOG_ENDPOINT = "log_endpoint"
ENDPOINT_HANDLING = [NO_ENDPOINT, POWER_WEIGHT, LOG_ENDPOINT]

# auxiliary integral kinds
X_GAMMA = "x_gamma"
Y_GAMMA = "y_gamma"
AUX_KINDS = [X_GAMMA, Y_GAMMA]

# QUADPACK may flag round-off although the estimate is this close to target
ACCEPT_SLACK = 100.0
L_MAX = 20

QuadResult = namedtuple('QuadResult', ['value', 'abs_err_est', 'evaluations'])


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances of the adaptive integrator.
    :var float abs_tol: absolute tolerance
    :var float rel_tol: relative tolerance
    :var int max_depth: maximum number of subintervals (QUADPACK limit)
    :var str endpoint_handling: one of ENDPOINT_HANDLING
    """
    abs_tol: float = 1e-13
    rel_tol: float = 1e-11
    max_depth: int = 50
    endpoint_handling: str = POWER_WEIGHT

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise OutOfRangeError(
                "abs_tol must be positive, got {}".format(self.abs_tol)
            )
        if not self.rel_tol >= 1e-13:
            raise OutOfRangeError(
                "rel_tol must be at least 1e-13, got {}".format(self.rel_tol)
            )
        if not 0 < self.max_depth <= 60:
            raise OutOfRangeError(
                "max_depth must lie in [1, 60], got {}".format(self.max_depth)
            )
        if self.endpoint_handling not in ENDPOINT_HANDLING:
            raise OutOfRangeError(
                "Endpoint handling {} not recognised, use one of {}".format(
                    self.endpoint_handling, ", ".join(ENDPOINT_HANDLING))
            )


DEFAULT_QUADRATURE_SPEC = QuadratureSpec()


def _quad(func, a, b, spec, what, **kwargs):
    """scipy.integrate.quad with the failure policy of this module."""
    out = integrate.quad(func, a, b,
                         epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                         limit=spec.max_depth, full_output=1, **kwargs)
    value, abserr, info = out[0], out[1], out[2]
    evaluations = info.get("neval", 0) if isinstance(info, dict) else 0
    if len(out) > 3:
        target = max(spec.abs_tol, spec.rel_tol * abs(value))
        if not (abserr <= ACCEPT_SLACK * target and math.isfinite(value)):
            raise QuadratureFailureError(
                "Quadrature of {} missed its tolerance: estimate {:.3e}, "
                "error {:.3e} ({})".format(what, value, abserr, out[3])
            )
        logging.debug(
            "Quadrature of {} accepted with warning: {}".format(what, out[3])
        )
    return QuadResult(value, abserr, evaluations)


def _check_omega(omega):
    if not (0 < omega <= math.pi):
        raise OutOfRangeError(
            "omega must lie in (0, pi], got {}".format(omega)
        )


def schwinger_quad(gamma, omega, spec=DEFAULT_QUADRATURE_SPEC):
    """I(gamma, omega) with its error estimate, as a QuadResult.

    The denominator is formed as (1 - rho)^2 + 4 rho sin^2(omega/2).  For
    gamma in (-1, 0) the power weight is removed with u = rho^(1 + gamma).
    The peak at rho = 1 of width ~omega is isolated by a break point at
    rho = 1 - 2 omega.
    """
    if gamma <= -1:
        raise NonIntegrableError(
            "rho^gamma is not integrable at rho = 0 for gamma = {}".format(
                gamma)
        )
    _check_omega(omega)
    s2 = math.sin(0.5 * omega) ** 2
    split = 1.0 - 2.0 * omega
    what = "I({}, {})".format(gamma, omega)

    if gamma < 0 and spec.endpoint_handling != NO_ENDPOINT:
        power = 1.0 / (1.0 + gamma)

        def kernel(u):
            rho = u ** power
            return power / ((1.0 - rho) ** 2 + 4.0 * rho * s2)

        points = [split ** (1.0 + gamma)] if split > 0 else None
    else:
        def kernel(rho):
            return rho ** gamma / ((1.0 - rho) ** 2 + 4.0 * rho * s2)

        points = [split] if split > 0 else None
    return _quad(kernel, 0.0, 1.0, spec, what, points=points)


def schwinger_integral(gamma, omega, spec=DEFAULT_QUADRATURE_SPEC):
    """I(gamma, omega) = int_0^1 rho^gamma / (rho^2 - 2 rho cos omega + 1)."""
    return schwinger_quad(gamma, omega, spec).value


def schwinger_sum(gamma, omega, spec=DEFAULT_QUADRATURE_SPEC):
    """S(gamma, omega) through the kernel identity I sin(omega) = S."""
    return schwinger_integral(gamma, omega, spec) * math.sin(omega)


def tmatrix_schwinger(state, point, spec=DEFAULT_QUADRATURE_SPEC):
    """(2 pi q1 q2 eta / (k k')) [1/sin^2(omega/2) - 4 gamma I(gamma, omega)]
    for gamma > -1."""
    check_forward(point)
    gamma = state.gamma
    if gamma <= -1:
        raise AttractiveOutOfRangeError(
            "The Schwinger representation needs gamma > -1, got {}; "
            "use the series representation".format(gamma)
        )
    prefactor = tmatrix_prefactor(state, point)
    born_bracket = 1.0 / point.sin2_half
    if gamma == 0:
        return EvalResult(prefactor * born_bracket, "schwinger",
                          flags=(FREE_LIMIT,))
    result = schwinger_quad(gamma, point.omega, spec)
    bracket = born_bracket - 4.0 * gamma * result.value
    return EvalResult(prefactor * bracket, "schwinger",
                      abs_err_est=abs(prefactor) * 4.0 * abs(gamma) *
                      result.abs_err_est,
                      terms_used=result.evaluations)


def _cot_half_integrand(gamma):
    def integrand(phi):
        if phi < 1e-8:
            return 2.0 * gamma
        return math.sin(gamma * phi) / math.tan(0.5 * phi)
    return integrand


def _x_gamma(gamma, omega, spec):
    if omega == 0.0:
        return 0.0
    return _quad(_cot_half_integrand(gamma), 0.0, omega, spec,
                 "x_gamma({}, {})".format(gamma, omega)).value


def _y_gamma(gamma, omega, spec):
    if omega == math.pi:
        return 0.0
    what = "y_gamma({}, {})".format(gamma, omega)
    if spec.endpoint_handling != LOG_ENDPOINT:
        def integrand(phi):
            if phi == 0.0:
                return 0.0
            return math.sin(gamma * phi) * math.log(math.sin(0.5 * phi))
        return _quad(integrand, omega, math.pi, spec, what).value

    # ln sin(phi/2) = ln phi + ln(sin(phi/2)/phi); the ln phi part is
    # integrated against QUADPACK's algebraic-logarithmic weight
    def smooth(phi):
        if phi < 1e-8:
            return math.sin(gamma * phi) * math.log(0.5)
        return math.sin(gamma * phi) * math.log(math.sin(0.5 * phi) / phi)

    def sine(phi):
        return math.sin(gamma * phi)

    total = _quad(smooth, omega, math.pi, spec, what).value
    total += _quad(sine, 0.0, math.pi, spec, what,
                   weight="alg-loga", wvar=(0.0, 0.0)).value
    if omega > 0.0:
        total -= _quad(sine, 0.0, omega, spec, what,
                       weight="alg-loga", wvar=(0.0, 0.0)).value
    return total


def integrate_aux(kind, gamma, omega, spec=DEFAULT_QUADRATURE_SPEC):
    """Auxiliary integrals of the singularity-separated representation
        x_gamma(omega) = int_0^omega sin(gamma phi) cot(phi/2) dphi
        y_gamma(omega) = int_omega^pi sin(gamma phi) ln|sin(phi/2)| dphi
    sin(gamma phi) cot(phi/2) tends to 2 gamma at phi = 0."""
    if not 0.0 <= omega <= math.pi:
        raise OutOfRangeError(
            "omega must lie in [0, pi], got {}".format(omega)
        )
    if kind == X_GAMMA:
        return _x_gamma(gamma, omega, spec)
    elif kind == Y_GAMMA:
        return _y_gamma(gamma, omega, spec)
    raise OutOfRangeError(
        "Auxiliary integral {} not recognised, use one of {}".format(
            kind, ", ".join(AUX_KINDS))
    )


def legendre_values(l_max, x):
    """P_0(x) .. P_l_max(x) by the upward three-term recurrence.
    Returns an array of shape (l_max + 1,) + shape(x)."""
    x = np.asarray(x, dtype=float)
    values = np.empty((l_max + 1,) + x.shape)
    values[0] = 1.0
    if l_max >= 1:
        values[1] = x
    for n in range(1, l_max):
        values[n + 1] = ((2 * n + 1) * x * values[n] -
                         n * values[n - 1]) / (n + 1)
    return values


def _panel_edges(omega_min, omega_max):
    """Panels growing geometrically away from the forward peak."""
    edges = [omega_min]
    while 2.0 * edges[-1] < omega_max:
        edges.append(2.0 * edges[-1])
    edges.append(omega_max)
    return edges


def _resolve_representation(rep):
    # imported here, the registry imports this module
    from coulomb_tmatrix.representations import get_representation_from_id
    if isinstance(rep, str):
        return get_representation_from_id(rep)()
    return rep


def _projection(l_max, state, k, k_prime, rep, order):
    kappa2 = state.kappa * state.kappa
    denom = (k * k + kappa2) * (k_prime * k_prime + kappa2)
    s2_min = kappa2 * (k - k_prime) ** 2 / denom
    s2_max = min(1.0, kappa2 * (k + k_prime) ** 2 / denom)
    omega_min = 2.0 * math.asin(math.sqrt(s2_min))
    omega_max = 2.0 * math.asin(math.sqrt(s2_max))
    # d(cos_theta) = -jacobian * sin(omega) d(omega)
    jacobian = denom / (4.0 * k * k_prime * kappa2)
    nodes, weights = leggauss(order)
    totals = np.zeros(l_max + 1)
    edges = _panel_edges(omega_min, omega_max)
    for lo, hi in zip(edges[:-1], edges[1:]):
        half = 0.5 * (hi - lo)
        for node, weight in zip(nodes, weights):
            omega = lo + half * (node + 1.0)
            point = fock_point_from_omega(state, k, k_prime, omega)
            value = rep.evaluate(state, point).value
            factor = half * weight * jacobian * math.sin(omega) * value
            totals += factor * legendre_values(l_max, point.cos_theta)
    return 0.5 * totals, order * (len(edges) - 1)


def _check_projection(l_max, k, k_prime):
    if not (isinstance(l_max, (int, np.integer)) and 0 <= l_max <= L_MAX):
        raise OutOfRangeError(
            "l must be an integer in [0, {}], got {}".format(L_MAX, l_max)
        )
    for name, value in (("k", k), ("k_prime", k_prime)):
        if not (value > 0 and math.isfinite(value)):
            raise OutOfRangeError(
                "{} must be a positive momentum, got {}".format(name, value)
            )
    if k == k_prime:
        raise OnShellDiagonalError(
            "k = k' = {}: the forward point omega = 0 lies inside the "
            "angular integral and its 1/|k - k'|^2 divergence is not "
            "integrable".format(k)
        )


def project_partial_waves(l_max, state, k, k_prime, rep, order=32):
    """t_l(k, k') = (1/2) int_{-1}^{1} P_l(c) <k|t|k'> dc for l = 0..l_max.

    The angle is mapped onto the Fock angle omega, the forward peak is
    resolved by panels doubling in width from omega_min.  The error
    estimate compares against the rule with half the nodes.
    Returns (values, error estimates, nodes used).
    """
    _check_projection(l_max, k, k_prime)
    rep = _resolve_representation(rep)
    fine, used = _projection(l_max, state, k, k_prime, rep, order)
    coarse, _ = _projection(l_max, state, k, k_prime, rep, max(order // 2, 2))
    return fine, np.abs(fine - coarse), used


def project_partial_wave(l, state, k, k_prime, rep, order=32):
    """Partial-wave projection of one angular momentum as an EvalResult."""
    values, errors, used = project_partial_waves(l, state, k, k_prime, rep,
                                                 order)
    rep = _resolve_representation(rep)
    return EvalResult(float(values[l]), rep.get_id(),
                      abs_err_est=float(errors[l]), terms_used=used)
