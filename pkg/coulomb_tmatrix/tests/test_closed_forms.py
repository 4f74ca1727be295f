import math

from django.test import SimpleTestCase

from coulomb_tmatrix.closed_forms import (
    CLOSED_FORM_MAGNITUDES,
    CORRECTED,
    PRINTED,
    Y_PRINTED,
    ClosedFormId,
    aux_integrals,
    c_gamma,
    closed_form_ids,
    half_integer_aux,
    separated_combination,
    tmatrix_explicit,
    tmatrix_half,
    term_groups,
    tmatrix_separated,
    validate_explicit,
    validate_separated,
)
from coulomb_tmatrix.errors import (
    DegenerateGammaError,
    OutOfRangeError,
    UnsupportedClosedFormError,
)
from coulomb_tmatrix.kinematics import (
    TwoBodySystem,
    born_term,
    energy_state_from_kappa,
    make_energy_state,
    make_fock_point,
    tmatrix_prefactor,
)
from coulomb_tmatrix.results import (
    BACKWARD_LIMIT,
    CONFIRMED,
    DISCREPANT,
    FREE_LIMIT,
    PRINTED_FORM,
)
from coulomb_tmatrix.series import RationalGamma, fock_sum, tmatrix_series

POINTS = ((1.0, 3.0, 0.3), (2.0, 0.5, -0.7), (0.4, 2.5, 0.9))
# published forms that disagree with the series
PRINTED_DISCREPANT = {"-1/2", "+3/2", "-3/2", "+1/3", "-1/3"}


def state_at(gamma):
    return make_energy_state(TwoBodySystem.natural(1.0), -0.5,
                             gamma_override=gamma)


class ClosedFormIdTests(SimpleTestCase):

    def test_ids(self):
        ids = closed_form_ids()
        self.assertEqual(len(ids), 12)
        self.assertEqual(len(set(i.name for i in ids)), 12)
        self.assertEqual(ids[0].name, "explicit:+1/2")
        self.assertEqual(ids[1].name, "explicit:-1/2")

    def test_from_gamma(self):
        self.assertEqual(ClosedFormId.from_gamma(-2.5).name, "explicit:-5/2")
        self.assertEqual(ClosedFormId.from_gamma("1/4").value, 0.25)
        for gamma in ("0.3", 0.3, math.pi, "5/3"):
            with self.assertRaises(UnsupportedClosedFormError):
                ClosedFormId.from_gamma(gamma)


class ExplicitFormTests(SimpleTestCase):

    def test_corrected_forms_confirmed(self):
        for form_id in closed_form_ids():
            validation = validate_explicit(form_id, CORRECTED)
            self.assertEqual(validation.status, CONFIRMED,
                             msg="{} {:.3e}".format(validation.name,
                                                    validation.max_deviation))

    def test_printed_form_statuses(self):
        for form_id in closed_form_ids():
            validation = validate_explicit(form_id, PRINTED)
            expected = (DISCREPANT if str(form_id.gamma) in PRINTED_DISCREPANT
                        else CONFIRMED)
            self.assertEqual(validation.status, expected, msg=validation.name)

    def test_sign_symmetry(self):
        for magnitude in CLOSED_FORM_MAGNITUDES:
            plus, minus = (ClosedFormId(RationalGamma(
                magnitude.numerator, magnitude.denominator, sign))
                for sign in (1, -1))
            state_p, state_m = state_at(plus.value), state_at(minus.value)
            for k, kp, c in POINTS:
                point = make_fock_point(state_p, k, kp, c)
                prefactor = tmatrix_prefactor(state_p, point)
                b_p = tmatrix_explicit(plus, state_p, point).value / prefactor
                b_m = tmatrix_explicit(minus, state_m, point).value / prefactor
                even, odd = term_groups(plus, point.omega)
                born = 1.0 / math.sin(0.5 * point.omega) ** 2
                scale = max(1.0, abs(b_p), abs(b_m))
                self.assertLessEqual(abs(b_p + b_m - 2.0 * (born + even)),
                                     1e-12 * scale)
                self.assertLessEqual(abs(b_p - b_m - 2.0 * odd),
                                     1e-12 * scale)
                # the same split of the series in gamma
                s_p = tmatrix_series(state_p, point).value / prefactor
                s_m = tmatrix_series(state_m, point).value / prefactor
                scale = max(scale, abs(s_p), abs(s_m))
                self.assertLessEqual(abs((s_p + s_m) - (b_p + b_m)),
                                     1e-7 * scale, msg=str(plus.gamma))
                self.assertLessEqual(abs((s_p - s_m) - (b_p - b_m)),
                                     1e-7 * scale, msg=str(plus.gamma))

    def test_half_agrees_with_series(self):
        for gamma in (0.5, -0.5):
            state = state_at(gamma)
            for k, kp, c in POINTS:
                point = make_fock_point(state, k, kp, c)
                series = tmatrix_series(state, point).value
                half = tmatrix_half(state, point)
                self.assertLessEqual(abs(half.value - series),
                                     1e-9 * abs(series))
                self.assertEqual(half.status, CONFIRMED)
                self.assertEqual(half.representation, "closed")

    def test_printed_half_flags(self):
        state = state_at(-0.5)
        point = make_fock_point(state, 1.0, 3.0, 0.3)
        result = tmatrix_half(state, point, form=PRINTED)
        self.assertIn(PRINTED_FORM, result.flags)
        self.assertEqual(result.status, DISCREPANT)

    def test_state_must_match(self):
        state = state_at(0.3)
        point = make_fock_point(state, 1.0, 3.0, 0.3)
        with self.assertRaises(OutOfRangeError):
            tmatrix_half(state, point)
        with self.assertRaises(OutOfRangeError):
            tmatrix_explicit(ClosedFormId.from_gamma("1/3"), state, point)

    def test_backward_limit(self):
        state = energy_state_from_kappa(TwoBodySystem.natural(1.0), 4.0)
        point = make_fock_point(state, 4.0, 4.0, -1.0)
        result = tmatrix_explicit(ClosedFormId.from_gamma("1/4"), state, point)
        series = tmatrix_series(state, point).value
        self.assertIn(BACKWARD_LIMIT, result.flags)
        self.assertLessEqual(abs(result.value - series), 1e-8 * abs(series))


class SeparatedFormTests(SimpleTestCase):

    def test_half_integer_aux(self):
        for sign in (1, -1):
            for omega in (0.1, 0.5, 1.0, 2.0, 3.0):
                exact = half_integer_aux(sign, omega)
                aux = aux_integrals(0.5 * sign, omega)
                for got, want in zip(aux, exact):
                    self.assertAlmostEqual(got, want, places=10)
        self.assertAlmostEqual(half_integer_aux(1, 1.0).c_gamma,
                               0.5 - 1.0 / math.pi, places=15)

    def test_c_gamma_is_smooth(self):
        h = 0.01
        for gamma in (0.15, 0.35, 0.5, 0.65, 0.85):
            second = (c_gamma(gamma + h) - 2.0 * c_gamma(gamma) +
                      c_gamma(gamma - h))
            self.assertLess(abs(second), 1e-3)
            self.assertLess(abs(c_gamma(gamma + h) - c_gamma(gamma)), 0.05)

    def test_printed_y_variant_differs(self):
        exact = half_integer_aux(1, 1.0)
        printed = aux_integrals(0.5, 1.0, y_variant=Y_PRINTED)
        self.assertGreater(abs(printed.y_gamma - exact.y_gamma), 1e-6)

    def test_combination_is_twice_gamma_sum(self):
        for gamma in (-0.7, 0.3, 1.5, 3.2):
            for omega in (0.4, 1.7, 2.9):
                combination = separated_combination(
                    gamma, omega, aux_integrals(gamma, omega))
                summed = fock_sum(gamma, omega).value
                self.assertLessEqual(abs(combination - 2.0 * gamma * summed),
                                     1e-8 * max(1.0, abs(gamma * summed)))

    def test_statuses(self):
        self.assertEqual(validate_separated(0.3, CORRECTED).status, CONFIRMED)
        self.assertEqual(validate_separated(-0.5, CORRECTED).status,
                         CONFIRMED)
        self.assertEqual(validate_separated(0.3, PRINTED).status, DISCREPANT)

    def test_agrees_with_series(self):
        state = state_at(-0.3)
        for k, kp, c in POINTS:
            point = make_fock_point(state, k, kp, c)
            series = tmatrix_series(state, point).value
            result = tmatrix_separated(state, point)
            self.assertLessEqual(abs(result.value - series),
                                 1e-8 * abs(series))
            self.assertEqual(result.status, CONFIRMED)

    def test_domain(self):
        point_state = state_at(2.0)
        point = make_fock_point(point_state, 1.0, 3.0, 0.3)
        with self.assertRaises(DegenerateGammaError):
            tmatrix_separated(point_state, point)
        far = state_at(4.5)
        with self.assertRaises(OutOfRangeError):
            tmatrix_separated(far, make_fock_point(far, 1.0, 3.0, 0.3),
                              validate=False)

    def test_free_limit(self):
        state = state_at(0.0)
        point = make_fock_point(state, 1.0, 3.0, 0.3)
        result = tmatrix_separated(state, point)
        self.assertEqual(result.value, born_term(state, point))
        self.assertIn(FREE_LIMIT, result.flags)
