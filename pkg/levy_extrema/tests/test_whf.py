import unittest

import numpy as np

from levy_extrema.contours.select import admissibility_floor, deformation_angles
from levy_extrema.contours.sinh import SinhContour
from levy_extrema.laplace.bromwich import BromwichScheme
from levy_extrema.model.levy import build_model, BrownianMotion, KoBoL
from levy_extrema.quad.trapezoid import TrapezoidGrid
from levy_extrema.whf.atoms import atom, decompose
from levy_extrema.whf.factors import ContourPair, build_whf_table, cauchy_kernel, phi_from_identity, phi_minus, \
    phi_plus

XI_REAL = np.array([-10.0, -3.0, -0.5, 0.25, 2.0, 10.0])


class TestFactors(unittest.TestCase):

    def setUp(self):
        self.vg = build_model('kobol', nu=0.2, lambda_plus=1.0, lambda_minus=-2.0, m2=0.1)
        self.nig = build_model('kobol', nu=1.2, lambda_plus=1.0, lambda_minus=-2.0, m2=0.1)

    def _identity_error(self, model, q):
        pair = ContourPair.from_model(model, 1e-12, q)
        plus = phi_plus(model, q, XI_REAL, pair.minus)
        minus = phi_minus(model, q, XI_REAL, pair.plus)
        return plus, minus, np.abs(plus * minus * (q + model.psi(XI_REAL)) / q - 1)

    def test_identity_nig(self):
        for q in (0.5, 1.0, 20.0):
            plus, minus, error = self._identity_error(self.nig, q)

            self.assertLess(error.max(), 1e-10)
            self.assertTrue(np.all(np.abs(plus) <= 1 + 1e-12))
            self.assertTrue(np.all(np.abs(minus) <= 1 + 1e-12))

    def test_identity_vg(self):
        plus, minus, error = self._identity_error(self.vg, 1.0)

        self.assertLess(error.max(), 1e-9)

    def test_factors_at_zero(self):
        for model in (self.nig, self.vg):
            pair = ContourPair.from_model(model, 1e-12, 1.0)

            self.assertLessEqual(abs(phi_plus(model, 1.0, [0.0], pair.minus)[0] - 1), 1e-13)
            self.assertLessEqual(abs(phi_minus(model, 1.0, [0.0], pair.plus)[0] - 1), 1e-13)

    def _strip_points(self, pair, size, seed):
        # between L- and L+, halfway to either contour
        rng = np.random.default_rng(seed)
        lower, upper = 0.5 * pair.minus.nodes.imag.max(), 0.5 * pair.plus.nodes.imag.min()
        return rng.uniform(-20.0, 20.0, size) + 1j * rng.uniform(lower, upper, size)

    def _strip_identity_error(self, model, q, pair, xi):
        plus = phi_plus(model, q, xi, pair.minus)
        minus = phi_minus(model, q, xi, pair.plus)
        return np.abs(plus * minus * (q + model.psi(xi)) / q - 1)

    def test_identity_in_strip_real_q(self):
        for model in (self.nig, BrownianMotion(sigma=0.3, mu=0.05)):
            for q in (0.5, 5.0):
                pair = ContourPair.from_model(model, 1e-14, q)
                xi = self._strip_points(pair, 100, seed=11)

                self.assertLessEqual(self._strip_identity_error(model, q, pair, xi).max(), 1e-12)

    def test_identity_in_strip_bromwich_q(self):
        T = 1.0
        omega_l = deformation_angles(self.nig.profile)[2]
        floor = admissibility_floor(self.nig, ContourPair.from_model(self.nig, 1e-14, 1.0).windows)
        q_values = BromwichScheme.for_maturity(T, 1e-12, omega_l, sigma_floor=floor).q_values
        q_values = q_values[np.real(q_values) > floor][::4][:5]

        self.assertGreater(q_values.size, 0)
        pair = ContourPair.from_model(self.nig, 1e-14, float(np.abs(q_values).min()))
        xi = self._strip_points(pair, 100, seed=12)
        for q in q_values:
            self.assertLessEqual(self._strip_identity_error(self.nig, q, pair, xi).max(), 1e-12)

    def test_brownian_closed_form(self):
        model = BrownianMotion(sigma=0.3, mu=0.05)
        q = 1.0
        pair = ContourPair.from_model(model, 1e-12, q)
        plus_root, minus_root = model.positive_root(q), model.negative_root(q)

        plus = phi_plus(model, q, XI_REAL, pair.minus)
        minus = phi_minus(model, q, XI_REAL, pair.plus)

        self.assertTrue(np.allclose(minus_root / (minus_root - XI_REAL), plus, rtol=0, atol=1e-10))
        self.assertTrue(np.allclose(plus_root / (plus_root - XI_REAL), minus, rtol=0, atol=1e-10))

    def test_table_on_contours(self):
        q = 2.0
        pair = ContourPair.from_model(self.nig, 1e-12, q)
        table = build_whf_table(self.nig, q, pair)

        # the same factors from integration contours moved away by 0.1
        lower = pair.minus.shifted(pair.minus.omega1 - 0.1)
        upper = pair.plus.shifted(pair.plus.omega1 + 0.1)
        plus_direct = phi_plus(self.nig, q, pair.plus.nodes[::10], lower)
        minus_direct = phi_minus(self.nig, q, pair.minus.nodes[::10], upper)

        self.assertTrue(np.allclose(plus_direct, table.plus_on_plus[::10], rtol=0, atol=1e-9))
        self.assertTrue(np.allclose(minus_direct, table.minus_on_minus[::10], rtol=0, atol=1e-9))
        self.assertEqual(0.0, table.a_plus)
        self.assertEqual(0.0, table.a_minus)

    def test_wrong_side(self):
        pair = ContourPair.from_model(self.nig, 1e-12, 1.0)

        self.assertRaises(ValueError, phi_plus, self.nig, 1.0, pair.minus.nodes[:1] - 1j, pair.minus)
        self.assertRaises(ValueError, phi_minus, self.nig, 1.0, pair.plus.nodes[:1] + 1j, pair.plus)
        self.assertRaises(ValueError, ContourPair, self.nig, pair.minus, pair.plus)

    def test_singular_kernel(self):
        self.assertRaises(ValueError, cauchy_kernel, np.array([1.0 + 1j]), np.array([1.0 + 1j, 2.0]))

    def test_zero_divisor(self):
        self.assertRaises(ZeroDivisionError, phi_from_identity, 1.0, np.array([1.0, 0.0]), np.array([0.5, 0.5]))


class TestAtoms(unittest.TestCase):

    def setUp(self):
        self.model = KoBoL(c=0.3, nu=0.5, lambda_plus=1.0, lambda_minus=-2.0, mu=0.1)

    def test_atom_side(self):
        a_minus = atom(self.model, 1.0, 'minus')

        self.assertTrue(0 < a_minus < 1)
        self.assertEqual(0.0, atom(self.model, 1.0, 'plus'))
        self.assertRaises(ValueError, atom, self.model, 1.0, 'left')

    def test_atom_mirrored(self):
        self.assertAlmostEqual(atom(self.model, 1.0, 'minus'), atom(self.model.mirrored(), 1.0, 'plus'), places=10)

    def test_atom_increases_with_q(self):
        self.assertLess(atom(self.model, 1.0, 'minus'), atom(self.model, 100.0, 'minus'))

    def test_atom_tends_to_one(self):
        # T_q -> 0, so a path drifting up stays above 0 until T_q with probability -> 1
        gaps = np.array([1 - atom(self.model, q, 'minus') for q in (1e2, 1e4, 1e6)])

        self.assertTrue(np.all(gaps > 0))
        self.assertTrue(np.all(np.diff(gaps) < 0))
        self.assertLess(gaps[-1], 0.1)
        self.assertLess(gaps[-1], 0.2 * gaps[0])

    def test_no_atom_under_standing_assumption(self):
        model = KoBoL(c=0.3, nu=0.5, lambda_plus=1.0, lambda_minus=-2.0)

        self.assertEqual(0.0, atom(model, 1.0, 'minus'))
        self.assertEqual(0.0, atom(model, 1.0, 'plus'))

    def test_table_with_atoms(self):
        pair = ContourPair.from_model(self.model, 1e-10, 1.0)
        table = build_whf_table(self.model, 1.0, pair, with_atoms=True)

        self.assertAlmostEqual(atom(self.model, 1.0, 'minus'), table.a_minus, places=14)
        self.assertEqual(0.0, table.a_plus)

    def test_decompose(self):
        value, evaluator = decompose(self.model, 1.0, 'plus', tol=1e-10)
        grid = TrapezoidGrid.symmetric(0.5, 4)
        targets = SinhContour(omega1=0.2, b=0.1, omega=0.5, grid=grid).nodes

        self.assertEqual(0.0, value)
        self.assertTrue(evaluator.drift_separated)

        # phi_plus with the drift split off against the direct formula
        direct = phi_plus(self.model, 1.0, targets, evaluator.contour)

        self.assertTrue(np.allclose(direct, evaluator(targets), rtol=0, atol=1e-8))
