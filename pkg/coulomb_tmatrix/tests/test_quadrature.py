import math
from unittest import mock

import numpy as np
from django.test import SimpleTestCase
from numpy.polynomial.legendre import legval

from coulomb_tmatrix.errors import (
    AttractiveOutOfRangeError,
    NonIntegrableError,
    OnShellDiagonalError,
    OutOfRangeError,
    QuadratureFailureError,
)
from coulomb_tmatrix.kinematics import (
    TwoBodySystem,
    energy_state_from_kappa,
    make_energy_state,
    make_fock_point,
)
from coulomb_tmatrix.quadrature import (
    L_MAX,
    LOG_ENDPOINT,
    NO_ENDPOINT,
    X_GAMMA,
    Y_GAMMA,
    QuadratureSpec,
    integrate_aux,
    legendre_values,
    project_partial_wave,
    project_partial_waves,
    schwinger_integral,
    schwinger_quad,
    tmatrix_schwinger,
)
from coulomb_tmatrix.results import FREE_LIMIT
from coulomb_tmatrix.series import tmatrix_series


class SchwingerTests(SimpleTestCase):

    def test_free_integral(self):
        for omega in (0.2, 1.0, 2.5):
            exact = 0.5 * (math.pi - omega) / math.sin(omega)
            self.assertAlmostEqual(schwinger_integral(0.0, omega), exact,
                                   places=11)

    def test_backward_integral(self):
        # int_0^1 rho^(-1/2) / (1 + rho)^2 = 1/2 + pi/4
        self.assertAlmostEqual(schwinger_integral(-0.5, math.pi),
                               0.5 + 0.25 * math.pi, places=11)

    def test_endpoint_handling_agrees(self):
        plain = QuadratureSpec(endpoint_handling=NO_ENDPOINT)
        for omega in (0.3, 2.0):
            weighted = schwinger_integral(-0.5, omega)
            self.assertLessEqual(
                abs(schwinger_integral(-0.5, omega, plain) - weighted),
                1e-7 * abs(weighted))

    def test_not_integrable(self):
        with self.assertRaises(NonIntegrableError):
            schwinger_integral(-1.0, 1.0)
        state = make_energy_state(TwoBodySystem.natural(-1.0), -0.5,
                                  gamma_override=-1.5)
        point = make_fock_point(state, 1.0, 2.0, 0.0)
        with self.assertRaises(AttractiveOutOfRangeError):
            tmatrix_schwinger(state, point)

    def test_free_limit(self):
        state = make_energy_state(TwoBodySystem.natural(1.0), -0.5,
                                  gamma_override=0.0)
        point = make_fock_point(state, 1.0, 2.0, 0.0)
        self.assertIn(FREE_LIMIT, tmatrix_schwinger(state, point).flags)

    def test_agrees_with_series(self):
        state = make_energy_state(TwoBodySystem.natural(1.0), -2.0)
        for k, kp, c in ((1.0, 3.0, 0.3), (4.0, 1.0, -0.7), (0.5, 0.6, 0.9)):
            point = make_fock_point(state, k, kp, c)
            series = tmatrix_series(state, point).value
            value = tmatrix_schwinger(state, point).value
            self.assertLessEqual(abs(value - series), 1e-9 * abs(series))

    def test_error_estimate_shrinks_with_tolerance(self):
        for gamma, omega in ((0.5, 0.3), (0.5, 2.0), (-0.5, 1.0),
                             (2.5, 0.3)):
            previous = None
            for j in range(9):
                spec = QuadratureSpec(rel_tol=1e-6 / 2 ** j)
                estimate = schwinger_quad(gamma, omega, spec).abs_err_est
                if previous is not None:
                    self.assertLessEqual(estimate, previous,
                                         msg="{} {} {}".format(gamma, omega,
                                                               spec.rel_tol))
                previous = estimate

    def test_failure_is_raised(self):
        failed = (1.0, 0.5, {"neval": 21}, "maximum number of subdivisions")
        with mock.patch("coulomb_tmatrix.quadrature.integrate.quad",
                        return_value=failed):
            with self.assertRaises(QuadratureFailureError):
                schwinger_quad(0.5, 1.0)

    def test_spec_validation(self):
        with self.assertRaises(OutOfRangeError):
            QuadratureSpec(rel_tol=1e-14)
        with self.assertRaises(OutOfRangeError):
            QuadratureSpec(max_depth=0)
        with self.assertRaises(OutOfRangeError):
            QuadratureSpec(endpoint_handling="tanh_sinh")


class AuxIntegralTests(SimpleTestCase):

    def test_x_half_integer(self):
        for sign in (1, -1):
            for omega in (0.1, 1.0, 3.0, math.pi):
                self.assertAlmostEqual(
                    integrate_aux(X_GAMMA, 0.5 * sign, omega),
                    sign * 2.0 * math.sin(0.5 * omega), places=11)

    def test_y_vanishes_at_pi(self):
        self.assertEqual(integrate_aux(Y_GAMMA, 0.3, math.pi), 0.0)

    def test_log_endpoint_agrees(self):
        spec = QuadratureSpec(endpoint_handling=LOG_ENDPOINT)
        for omega in (0.05, 1.0, 2.5):
            self.assertAlmostEqual(integrate_aux(Y_GAMMA, 0.3, omega, spec),
                                   integrate_aux(Y_GAMMA, 0.3, omega),
                                   places=9)

    def test_unknown_kind(self):
        with self.assertRaises(OutOfRangeError):
            integrate_aux("z_gamma", 0.5, 1.0)


class PartialWaveTests(SimpleTestCase):

    def setUp(self):
        self.free = make_energy_state(TwoBodySystem.natural(1.0), -0.5,
                                      gamma_override=0.0)

    def test_legendre_values(self):
        values = legendre_values(6, 0.3)
        for l in range(7):
            coefficients = np.zeros(l + 1)
            coefficients[l] = 1.0
            self.assertAlmostEqual(values[l], legval(0.3, coefficients),
                                   places=14)

    def test_born_waves(self):
        # t_l = (2 pi q1 q2 / (k k')) Q_l(z), z = (k^2 + k'^2) / (2 k k')
        k, kp = 2.0, 0.5
        z = (k * k + kp * kp) / (2.0 * k * kp)
        q0 = 0.5 * math.log((z + 1.0) / (z - 1.0))
        q1 = z * q0 - 1.0
        values, errors, used = project_partial_waves(1, self.free, k, kp,
                                                     "born")
        scale = 2.0 * math.pi / (k * kp)
        self.assertAlmostEqual(values[0] / (scale * q0), 1.0, places=8)
        self.assertAlmostEqual(values[1] / (scale * q1), 1.0, places=8)
        self.assertGreater(used, 0)

    def test_single_wave(self):
        result = project_partial_wave(0, self.free, 2.0, 0.5, "born")
        values, _, _ = project_partial_waves(0, self.free, 2.0, 0.5, "born")
        self.assertEqual(result.value, values[0])
        self.assertEqual(result.representation, "born")

    def test_reconstruction(self):
        state = make_energy_state(TwoBodySystem.natural(1.0), -2.0)
        k, kp = 2.0 * state.kappa, 0.5 * state.kappa
        values, _, _ = project_partial_waves(L_MAX, state, k, kp, "series")
        weights = 2.0 * np.arange(L_MAX + 1) + 1.0
        summed = float(np.dot(weights * values, legendre_values(L_MAX, 0.0)))
        direct = tmatrix_series(state, make_fock_point(state, k, kp, 0.0))
        self.assertLessEqual(abs(summed - direct.value),
                             1e-4 * abs(direct.value))

    def test_near_diagonal_series(self):
        state = energy_state_from_kappa(TwoBodySystem.natural(1.0), 2.0,
                                        gamma_override=0.5)
        series = project_partial_wave(0, state, 2.0, 2.0001, "series")
        schwinger = project_partial_wave(0, state, 2.0, 2.0001, "schwinger")
        self.assertLessEqual(abs(series.value - schwinger.value),
                             1e-7 * abs(schwinger.value))

    def test_rejections(self):
        with self.assertRaises(OnShellDiagonalError):
            project_partial_wave(0, self.free, 1.0, 1.0, "born")
        with self.assertRaises(OutOfRangeError):
            project_partial_wave(L_MAX + 1, self.free, 2.0, 0.5, "born")
        with self.assertRaises(OutOfRangeError):
            project_partial_wave(0, self.free, 2.0, 0.5, "no_such_rep")
