"""Series representation of the off-shell Coulomb T-matrix.

S(gamma, omega) = sum_{n>=1} sin(n omega) / (n + gamma) converges only
conditionally.  The default evaluation splits
    1/(n + gamma) = 1/n - gamma / (n (n + gamma))
so that the first part sums to the sawtooth (pi - omega)/2.  The
remainder is split once more,
    1/(n (n + gamma)) = 1/n^2 - gamma / (n^2 (n + gamma))
where sum sin(n omega)/n^2 is the Clausen function Cl_2(omega).  What
is left decays like 1/n^3 at every omega.  It is summed in doubling
chunks and closed with the first summation-by-parts boundary term.

For rational gamma = +-n/m the sum has a finite closed form (a sum of m
cosine, sine and log terms plus a finite correction sum), see
rational_sum.
"""

import functools
import logging
import math
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from coulomb_tmatrix.errors import (
    BoundStatePoleError,
    ConvergenceError,
    OutOfRangeError,
    BackwardIndeterminateError,
)
from coulomb_tmatrix.kinematics import tmatrix_prefactor, check_forward
from coulomb_tmatrix.results import (
    EvalResult,
    BACKWARD_LIMIT,
    NEAR_BOUND_STATE_POLE,
    FREE_LIMIT,
    near_bound_state_pole,
)

# acceleration methods
NO_ACCELERATION = "none"
DIRECT_PARTIAL_SUMS = "direct_partial_sums"
AVERAGED_TAIL = "averaged_tail"
ACCELERATIONS = [NO_ACCELERATION, DIRECT_PARTIAL_SUMS, AVERAGED_TAIL]

# first chunk of terms, later chunks double the running total
FIRST_CHUNK = 1024
# number of pairwise-averaging passes for AVERAGED_TAIL
AVERAGING_DEPTH = 64
# closer than this to omega = pi the backward limit is used
BACKWARD_WINDOW = 1e-6
# relative error of the Clausen function at double precision
CLAUSEN_REL_ERR = 4e-16

# log-argument variants of the rational closed form
HALF_ANGLE = "half_angle"
PRINTED = "printed"
LOG_VARIANTS = [HALF_ANGLE, PRINTED]

SINGLE_SUM_BRANCH = "single_sum"
SUBTRACTION_BRANCH = "subtraction"

SumResult = namedtuple('SumResult',
                       ['value', 'abs_err_est', 'terms_used', 'acceleration'])


@dataclass(frozen=True)
class SeriesOptions:
    """Controls for the summation of S(gamma, omega).
    :var int max_terms: hard limit on the number of terms
    :var float target_rel_tol: requested relative error
    :var str acceleration: one of ACCELERATIONS
    """
    max_terms: int = 1000000
    target_rel_tol: float = 1e-10
    acceleration: str = NO_ACCELERATION

    def __post_init__(self):
        if self.max_terms < 100:
            raise OutOfRangeError(
                "max_terms must be at least 100, got {}".format(
                    self.max_terms)
            )
        if not self.target_rel_tol >= 1e-14:
            raise OutOfRangeError(
                "target_rel_tol must be at least 1e-14, got {}".format(
                    self.target_rel_tol)
            )
        if self.acceleration not in ACCELERATIONS:
            raise OutOfRangeError(
                "Acceleration {} not recognised, use one of {}".format(
                    self.acceleration, ", ".join(ACCELERATIONS))
            )


DEFAULT_SERIES_OPTIONS = SeriesOptions()


@dataclass(frozen=True)
class RationalGamma:
    """Exactly represented Coulomb parameter sign * numerator / denominator.
    """
    numerator: int
    denominator: int
    sign: int = 1

    def __post_init__(self):
        if self.numerator < 1 or self.denominator < 1:
            raise OutOfRangeError(
                "RationalGamma needs n >= 1 and m >= 1, got {}/{}".format(
                    self.numerator, self.denominator)
            )
        if math.gcd(self.numerator, self.denominator) != 1:
            raise OutOfRangeError(
                "RationalGamma {}/{} is not in lowest terms".format(
                    self.numerator, self.denominator)
            )
        if self.sign not in (1, -1):
            raise OutOfRangeError(
                "sign must be +1 or -1, got {}".format(self.sign)
            )

    @classmethod
    def from_fraction(cls, fraction):
        fraction = Fraction(fraction)
        if fraction == 0:
            raise OutOfRangeError("gamma = 0 has no RationalGamma form")
        sign = 1 if fraction > 0 else -1
        return cls(abs(fraction.numerator), fraction.denominator, sign)

    @classmethod
    def parse(cls, text):
        """Parse "3/2", "-1/3", "+5/2" or "2"."""
        try:
            fraction = Fraction(text.strip())
        except (ValueError, ZeroDivisionError):
            raise OutOfRangeError(
                "Cannot read a rational gamma from '{}'".format(text)
            )
        return cls.from_fraction(fraction)

    @classmethod
    def from_value(cls, value, max_denominator=64):
        """Exact rational with a small denominator equal to the float
        value, or None."""
        if value == 0 or not math.isfinite(value):
            return None
        fraction = Fraction(value).limit_denominator(max_denominator)
        if fraction == 0:
            return None
        if abs(float(fraction) - value) > 4e-16 * max(1.0, abs(value)):
            return None
        return cls.from_fraction(fraction)

    @classmethod
    def coerce(cls, gamma):
        if isinstance(gamma, RationalGamma):
            return gamma
        if isinstance(gamma, str):
            return cls.parse(gamma)
        if isinstance(gamma, (Fraction, int)):
            return cls.from_fraction(gamma)
        rational = cls.from_value(gamma)
        if rational is None:
            raise OutOfRangeError(
                "{} is not a rational with a small denominator".format(gamma)
            )
        return rational

    @property
    def signed_numerator(self):
        return self.sign * self.numerator

    @property
    def fraction(self):
        return Fraction(self.signed_numerator, self.denominator)

    @property
    def value(self):
        return self.signed_numerator / self.denominator

    def is_negative_integer(self):
        return self.sign < 0 and self.denominator == 1

    def branch(self):
        if self.numerator <= self.denominator:
            return SINGLE_SUM_BRANCH
        return SUBTRACTION_BRANCH

    def __str__(self):
        return "{}{}/{}".format("-" if self.sign < 0 else "+",
                                self.numerator, self.denominator)


def check_gamma(gamma):
    """Raise BoundStatePoleError at gamma = -1, -2, -3, ...
    and OutOfRangeError for a non-finite gamma."""
    if not math.isfinite(gamma):
        raise OutOfRangeError("gamma must be finite, got {}".format(gamma))
    if gamma <= -1 and gamma == math.floor(gamma):
        raise BoundStatePoleError(
            "gamma = {} is a negative integer: the term n = {} of the "
            "series diverges (hydrogen-like bound state)".format(
                gamma, int(-gamma))
        )


def _check_omega(omega, include_pi=True):
    upper_ok = omega <= math.pi if include_pi else omega < math.pi
    if not (omega > 0 and upper_ok):
        raise OutOfRangeError(
            "omega must lie in (0, pi{}, got {}".format(
                "]" if include_pi else ")", omega)
        )


def _chunks(max_terms, start=FIRST_CHUNK):
    """Yield (first, last) index pairs, the running total doubling."""
    n_done = 0
    chunk = start
    while n_done < max_terms:
        n_hi = min(n_done + chunk, max_terms)
        yield n_done + 1, n_hi
        chunk = n_hi
        n_done = n_hi


@functools.lru_cache(maxsize=4096)
def clausen2(omega):
    """Cl_2(omega) = sum_{n>=1} sin(n omega) / n^2."""
    return float(mpmath.clsin(2, omega))


def _decomposed_sum(gamma, omega, opts):
    base = 0.5 * (math.pi - omega)
    if gamma == 0:
        return SumResult(base, 0.0, 0, NO_ACCELERATION)
    # S = (pi - omega)/2 - gamma Cl_2(omega)
    #     + gamma^2 sum sin(n omega) / (n^2 (n + gamma))
    head = base - gamma * clausen2(omega)
    g2 = gamma * gamma
    sin_half = math.sin(0.5 * omega)
    partial = 0.0
    abs_partial = 0.0
    value = head
    err = math.inf
    n_hi = 0
    for n_lo, n_hi in _chunks(opts.max_terms):
        n = np.arange(n_lo, n_hi + 1, dtype=float)
        terms = np.sin(n * omega) / (n * n * (n + gamma))
        partial += float(np.sum(terms))
        abs_partial += float(np.sum(np.abs(terms)))
        scale = max(abs(head), base, g2 * abs_partial)
        # the tail estimates need a decreasing b_n, i.e. n + gamma > 1
        if n_hi + 1 + gamma <= 1:
            continue
        b1 = 1.0 / ((n_hi + 1) ** 2 * (n_hi + 1 + gamma))
        b2 = 1.0 / ((n_hi + 2) ** 2 * (n_hi + 2 + gamma))
        # summation by parts of the tail, first boundary term kept
        boundary = b1 * math.cos((n_hi + 0.5) * omega) / (2.0 * sin_half)
        err_parts = g2 * abs(b1 - b2) / (2.0 * sin_half * sin_half)
        # |sin| <= 1 bound, sum_{n>N} 1/(n^2 (n + gamma)) <= 1/N^2
        if n_hi + 1 >= -2.0 * gamma:
            err_plain = g2 / float(n_hi) ** 2
        else:
            err_plain = math.inf
        if err_parts <= err_plain:
            value, err = head + g2 * (partial + boundary), err_parts
        else:
            value, err = head + g2 * partial, err_plain
        err += CLAUSEN_REL_ERR * abs(head - base)
        if err <= opts.target_rel_tol * max(scale, abs(value)):
            logging.debug(
                "fock_sum({}, {}) converged with {} terms, err {:.3e}".format(
                    gamma, omega, n_hi, err)
            )
            return SumResult(value, err, n_hi, NO_ACCELERATION)
    raise ConvergenceError(
        "S({}, {}) did not reach rel. tol {} within {} terms "
        "(estimated error {:.3e})".format(
            gamma, omega, opts.target_rel_tol, opts.max_terms, err),
        value=value, abs_err_est=err, terms_used=n_hi
    )


def _direct_terms(gamma, n_lo, n_hi, omega):
    n = np.arange(n_lo, n_hi + 1, dtype=float)
    return np.sin(n * omega) / (n + gamma)


def _direct_sum(gamma, omega, opts):
    sin_half = math.sin(0.5 * omega)
    total = 0.0
    err = math.inf
    n_hi = 0
    for n_lo, n_hi in _chunks(opts.max_terms):
        total += float(np.sum(_direct_terms(gamma, n_lo, n_hi, omega)))
        # Abel bound on the tail of a decreasing coefficient sequence
        if n_hi + 1 + gamma > 0:
            err = 1.0 / (2.0 * sin_half * (n_hi + 1 + gamma))
            if err <= opts.target_rel_tol * max(abs(total), 1e-300):
                return SumResult(total, err, n_hi, DIRECT_PARTIAL_SUMS)
    raise ConvergenceError(
        "Partial sums of S({}, {}) did not reach rel. tol {} within {} "
        "terms".format(gamma, omega, opts.target_rel_tol, opts.max_terms),
        value=total, abs_err_est=err, terms_used=n_hi
    )


def _average_levels(partial_sums):
    """Iterated pairwise means; returns the last two levels' leading
    entries."""
    level = np.asarray(partial_sums, dtype=float)
    previous = level[0]
    while level.size > 1:
        previous = level[0]
        level = 0.5 * (level[:-1] + level[1:])
    return float(level[0]), float(previous)


def _averaged_sum(gamma, omega, opts):
    total = 0.0
    value = math.nan
    err = math.inf
    n_hi = 0
    for n_lo, n_hi in _chunks(opts.max_terms):
        terms = _direct_terms(gamma, n_lo, n_hi, omega)
        prefix = total + np.cumsum(terms)
        total = float(prefix[-1])
        value, previous = _average_levels(prefix[-(AVERAGING_DEPTH + 1):])
        err = abs(value - previous)
        if n_hi + gamma > 0 and err <= opts.target_rel_tol * max(abs(value),
                                                                 1e-300):
            return SumResult(value, err, n_hi, AVERAGED_TAIL)
    raise ConvergenceError(
        "Averaged partial sums of S({}, {}) did not reach rel. tol {} "
        "within {} terms".format(gamma, omega, opts.target_rel_tol,
                                 opts.max_terms),
        value=value, abs_err_est=err, terms_used=n_hi
    )


def fock_sum(gamma, omega, opts=DEFAULT_SERIES_OPTIONS):
    """S(gamma, omega) = sum_{n>=1} sin(n omega) / (n + gamma) for omega in
    (0, pi].  Returns a SumResult."""
    check_gamma(gamma)
    _check_omega(omega)
    if omega == math.pi:
        return SumResult(0.0, 0.0, 0, opts.acceleration)
    if opts.acceleration == DIRECT_PARTIAL_SUMS:
        return _direct_sum(gamma, omega, opts)
    if opts.acceleration == AVERAGED_TAIL:
        return _averaged_sum(gamma, omega, opts)
    return _decomposed_sum(gamma, omega, opts)


def derivative_at_pi(gamma, opts=DEFAULT_SERIES_OPTIONS):
    """Abel sum of the term-wise derivative of S at omega = pi,
        D = sum_{n>=1} n (-1)^n / (n + gamma)
          = -1/2 + gamma ln 2 + gamma^2 sum_{n>=1} (-1)^n / (n (n + gamma)).
    Then S(gamma, omega) / sin(omega) -> -D as omega -> pi.
    """
    check_gamma(gamma)
    if gamma == 0:
        return SumResult(-0.5, 0.0, 0, opts.acceleration)
    partial = 0.0
    err = math.inf
    value = math.nan
    n_hi = 0
    for n_lo, n_hi in _chunks(opts.max_terms):
        n = np.arange(n_lo, n_hi + 1, dtype=float)
        signs = np.where(n % 2 == 0, 1.0, -1.0)
        partial += float(np.sum(signs / (n * (n + gamma))))
        b1 = 1.0 / ((n_hi + 1) * (n_hi + 1 + gamma))
        b2 = 1.0 / ((n_hi + 2) * (n_hi + 2 + gamma))
        # alternating tail: half of the first omitted term
        tail = (1.0 if (n_hi + 1) % 2 == 0 else -1.0) * 0.5 * b1
        value = -0.5 + gamma * math.log(2.0) + gamma * gamma * (partial + tail)
        err = gamma * gamma * 0.25 * abs(b1 - b2)
        if n_hi + 1 + gamma > 1 and err <= opts.target_rel_tol * max(
                abs(value), 0.5):
            return SumResult(value, err, n_hi, NO_ACCELERATION)
    raise ConvergenceError(
        "Derivative series at omega = pi did not converge for gamma = "
        "{}".format(gamma), value=value, abs_err_est=err, terms_used=n_hi
    )


def half_integer_sum(sign, omega):
    """Closed form of S(+-1/2, omega):
    (pi/2) cos(omega/2) +- sin(omega/2) ln|tan(omega/4)|."""
    if sign not in (1, -1):
        raise OutOfRangeError("sign must be +1 or -1, got {}".format(sign))
    _check_omega(omega, include_pi=False)
    return (0.5 * math.pi * math.cos(0.5 * omega) +
            sign * math.sin(0.5 * omega) *
            math.log(abs(math.tan(0.25 * omega))))


def rational_sum(gamma, omega, log_variant=HALF_ANGLE):
    """Finite closed form of S(gamma, omega) for gamma = s/m.

    With theta_q = (omega + 2 pi q)/m, q = 0..m-1,
        S = sum_q [sin(s theta_q) ln(2|sin(theta_q/2)|)
                   - cos(s theta_q) (theta_q - pi)/2]  + finite correction
    The correction is the integer-part subtraction sum
        - sum_{k=1}^{[(n-1)/m]} sin(k omega)/(k - n/m)
    for gamma = n/m > 1 and the leading terms k = 1..[n/m] for
    gamma = -n/m.  log_variant PRINTED replaces theta_q/2 by theta_q on the
    n/m > 1 branch.
    """
    gamma = RationalGamma.coerce(gamma)
    if gamma.is_negative_integer():
        check_gamma(gamma.value)
    if log_variant not in LOG_VARIANTS:
        raise OutOfRangeError(
            "Log variant {} not recognised".format(log_variant)
        )
    _check_omega(omega, include_pi=False)
    s = gamma.signed_numerator
    m = gamma.denominator
    value = gamma.value
    q = np.arange(m, dtype=float)
    theta = (omega + 2.0 * math.pi * q) / m
    if log_variant == PRINTED and gamma.branch() == SUBTRACTION_BRANCH:
        log_arg = theta
    else:
        log_arg = 0.5 * theta
    with np.errstate(divide="ignore", invalid="ignore"):
        logs = np.log(2.0 * np.abs(np.sin(log_arg)))
    main = (np.sin(s * theta) * logs -
            np.cos(s * theta) * 0.5 * (theta - math.pi))
    terms = [float(t) for t in main]
    # terms of the full series that the m-term formula does not produce
    j_min = -((s - 1) // m)
    for j in range(j_min, 0):
        terms.append(-math.sin(j * omega) / (j + value))
    for j in range(1, j_min):
        terms.append(math.sin(j * omega) / (j + value))
    return math.fsum(terms)


def tmatrix_series(state, point, opts=DEFAULT_SERIES_OPTIONS,
                   allow_backward_limit=True):
    """<k|t^C(E)|k'> from the series representation,
    (2 pi q1 q2 eta / (k k')) [1/sin^2(omega/2)
                               - (4 gamma / sin omega) S(gamma, omega)]
    At omega = pi the 0/0 quotient is replaced by its limit from the
    derivative series."""
    check_forward(point)
    gamma = state.gamma
    check_gamma(gamma)
    prefactor = tmatrix_prefactor(state, point)
    born_bracket = 1.0 / point.sin2_half
    flags = []
    if near_bound_state_pole(gamma):
        flags.append(NEAR_BOUND_STATE_POLE)
    if gamma == 0:
        flags.append(FREE_LIMIT)
        return EvalResult(prefactor * born_bracket, "series",
                          flags=tuple(flags))
    if math.pi - point.omega < BACKWARD_WINDOW:
        if not allow_backward_limit:
            raise BackwardIndeterminateError(
                "omega = {} is at the backward point where "
                "(4 gamma / sin omega) S is 0/0".format(point.omega)
            )
        deriv = derivative_at_pi(gamma, opts)
        bracket = born_bracket + 4.0 * gamma * deriv.value
        err = 4.0 * abs(gamma) * deriv.abs_err_est
        terms = deriv.terms_used
        flags.append(BACKWARD_LIMIT)
    else:
        summed = fock_sum(gamma, point.omega, opts)
        sin_omega = math.sin(point.omega)
        bracket = born_bracket - 4.0 * gamma * summed.value / sin_omega
        err = 4.0 * abs(gamma) * summed.abs_err_est / abs(sin_omega)
        terms = summed.terms_used
    return EvalResult(prefactor * bracket, "series",
                      abs_err_est=abs(prefactor) * err,
                      terms_used=terms, flags=tuple(flags))
