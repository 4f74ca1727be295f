import math

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings as hsettings, strategies as st

from coulomb_tmatrix.errors import (
    ForwardSingularityError,
    NonNegativeEnergyError,
    OutOfRangeError,
)
from coulomb_tmatrix.kinematics import (
    TwoBodySystem,
    born_term,
    energy_from_kappa,
    energy_state_from_kappa,
    fock_point_from_omega,
    make_energy_state,
    make_fock_point,
    potential_matrix_element,
    reduce_vectors,
)

momenta = st.floats(min_value=1e-3, max_value=1e3)
cosines = st.floats(min_value=-1.0, max_value=1.0)


class EnergyStateTests(SimpleTestCase):

    def test_natural_units(self):
        state = make_energy_state(TwoBodySystem.natural(1.0), -2.0)
        self.assertEqual(state.kappa, 2.0)
        self.assertEqual(state.gamma, 0.5)

    def test_physical_units(self):
        system = TwoBodySystem(reduced_mass=2.0, charge_product=-1.5, hbar=1.0)
        state = make_energy_state(system, -1.0)
        self.assertAlmostEqual(state.kappa, 2.0, places=14)
        self.assertAlmostEqual(state.gamma, -1.5, places=14)

    def test_non_negative_energy(self):
        system = TwoBodySystem.natural(1.0)
        for energy in (0.0, 1.0):
            with self.assertRaises(NonNegativeEnergyError):
                make_energy_state(system, energy)

    def test_zero_charge_needs_free_flag(self):
        with self.assertRaises(OutOfRangeError):
            TwoBodySystem(1.0, 0.0, 1.0)
        state = make_energy_state(TwoBodySystem.free_particle(0.0), -0.5)
        self.assertEqual(state.gamma, 0.0)

    def test_gamma_override(self):
        state = make_energy_state(TwoBodySystem.natural(1.0), -0.5,
                                  gamma_override=-0.3)
        self.assertEqual(state.kappa, 1.0)
        self.assertEqual(state.gamma, -0.3)

    def test_energy_round_trip(self):
        systems = (TwoBodySystem.natural(1.0),
                   TwoBodySystem(reduced_mass=2.0, charge_product=-1.5,
                                 hbar=1.0),
                   TwoBodySystem(reduced_mass=0.3, charge_product=4.0,
                                 hbar=0.7))
        for system in systems:
            for energy in -np.geomspace(1e-6, 1e6, 25):
                energy = float(energy)
                state = make_energy_state(system, energy)
                again = energy_from_kappa(system, state.kappa)
                self.assertLessEqual(abs(again - energy), 1e-14 * abs(energy))

    def test_non_finite_gamma(self):
        system = TwoBodySystem.natural(1.0)
        for gamma in (float("nan"), float("inf"), -float("inf")):
            with self.assertRaises(OutOfRangeError):
                make_energy_state(system, -0.5, gamma_override=gamma)
            with self.assertRaises(OutOfRangeError):
                energy_state_from_kappa(system, 1.0, gamma_override=gamma)

    def test_from_kappa(self):
        system = TwoBodySystem.natural(1.0)
        state = energy_state_from_kappa(system, 4.0)
        self.assertEqual(state.energy, -8.0)
        self.assertEqual(state.gamma, 0.25)
        self.assertEqual(energy_from_kappa(system, 4.0), -8.0)
        with self.assertRaises(OutOfRangeError):
            energy_state_from_kappa(system, 0.0)


class FockPointTests(SimpleTestCase):

    def setUp(self):
        self.state = make_energy_state(TwoBodySystem.natural(1.0), -0.5)

    def test_energy_shell_backward(self):
        point = make_fock_point(self.state, 1.0, 1.0, -1.0)
        self.assertEqual(point.omega, math.pi)
        self.assertEqual(point.eta, 0.5)

    def test_eta_maximal_only_at_kappa(self):
        for kappa in (1.0, 2.5):
            state = energy_state_from_kappa(TwoBodySystem.natural(1.0), kappa)
            grid = [f * kappa for f in (0.1, 0.5, 0.9, 1.0, 1.1, 2.0, 10.0)]
            for k in grid:
                for kp in grid:
                    eta = make_fock_point(state, k, kp, 0.0).eta
                    if k == kp == kappa:
                        self.assertEqual(eta, 0.5)
                    else:
                        self.assertLess(eta, 0.5 - 1e-4)

    def test_omega_is_angle_on_sphere(self):
        for kappa in (1.0, 2.5):
            state = energy_state_from_kappa(TwoBodySystem.natural(1.0), kappa)
            for theta in np.linspace(0.05, math.pi - 0.05, 30):
                point = make_fock_point(state, kappa, kappa, math.cos(theta))
                self.assertAlmostEqual(point.omega, theta, delta=1e-12)

    def test_forward_point(self):
        point = make_fock_point(self.state, 1.5, 1.5, 1.0)
        self.assertEqual(point.omega, 0.0)
        with self.assertRaises(ForwardSingularityError):
            born_term(self.state, point)

    def test_bad_inputs(self):
        with self.assertRaises(OutOfRangeError):
            make_fock_point(self.state, 0.0, 1.0, 0.0)
        with self.assertRaises(OutOfRangeError):
            make_fock_point(self.state, 1.0, 1.0, 1.5)

    @hsettings(max_examples=200)
    @given(momenta, momenta, cosines)
    def test_exchange_symmetry(self, k, kp, c):
        a = make_fock_point(self.state, k, kp, c)
        b = make_fock_point(self.state, kp, k, c)
        self.assertEqual(a.omega, b.omega)
        self.assertEqual(a.eta, b.eta)
        self.assertTrue(0.0 <= a.omega <= math.pi)
        self.assertTrue(0.0 < a.eta <= 0.5)

    @hsettings(max_examples=200)
    @given(momenta, momenta, st.floats(min_value=-1.0, max_value=0.999))
    def test_born_is_potential(self, k, kp, c):
        point = make_fock_point(self.state, k, kp, c)
        if point.sin2_half == 0.0:
            return
        born = born_term(self.state, point)
        direct = potential_matrix_element(self.state, k, kp, c)
        self.assertLessEqual(abs(born - direct), 1e-12 * abs(direct))

    def test_point_from_omega(self):
        point = make_fock_point(self.state, 0.7, 2.0, 0.25)
        again = fock_point_from_omega(self.state, 0.7, 2.0, point.omega)
        self.assertAlmostEqual(again.cos_theta, 0.25, places=10)
        self.assertEqual(again.eta, point.eta)

    def test_reduce_vectors(self):
        k, kp, c = reduce_vectors([1.0, 0.0, 0.0], [0.0, 2.0, 0.0])
        self.assertEqual((k, kp, c), (1.0, 2.0, 0.0))
        with self.assertRaises(OutOfRangeError):
            reduce_vectors([1.0, 0.0], [0.0, 2.0, 0.0])
