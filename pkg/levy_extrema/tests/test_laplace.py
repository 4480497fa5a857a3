import math
import unittest

import numpy as np

from levy_extrema.laplace.bromwich import BromwichScheme, invert_sinh_bromwich, invert_flat_bromwich
from levy_extrema.laplace.evaluate import evaluate_on_grid
from levy_extrema.laplace.gwr import GwrScheme, invert_gwr, invert_gaver_stehfest, stehfest_coefficients, \
    gaver_functionals, gaver_rounding_bounds, wynn_rho


def exp_decay(q):
    return 1 / (q + 1)


def t_exp_decay(q):
    return 1 / (q + 1) ** 2


class TestEvaluate(unittest.TestCase):

    def test_order_is_kept(self):
        q_values = np.arange(1, 50) + 0.5j

        serial = evaluate_on_grid(exp_decay, q_values, max_workers=1)
        threaded = evaluate_on_grid(exp_decay, q_values, max_workers=4)

        self.assertTrue(np.array_equal(serial, threaded))

    def test_vector_transform(self):
        values = evaluate_on_grid(lambda q: np.array([1 / q, 2 / q]), [1.0, 2.0])

        self.assertEqual((2, 2), values.shape)
        self.assertEqual(1.0, values[1, 1])

    def test_non_finite(self):
        with self.assertRaises(FloatingPointError):
            evaluate_on_grid(lambda q: np.inf if q == 2.0 else 1 / q, [1.0, 2.0, 3.0], max_workers=1)


class TestSinhBromwich(unittest.TestCase):

    def test_exponential(self):
        for T in (0.05, 1.0, 15.0):
            scheme = BromwichScheme.for_maturity(T, 1e-12, math.pi / 20)
            res = invert_sinh_bromwich(scheme, exp_decay, T)

            self.assertAlmostEqual(math.exp(-T), res, delta=1e-9)

    def test_constant(self):
        for T in (0.25, 5.0):
            scheme = BromwichScheme.for_maturity(T, 1e-12, math.pi / 20)

            self.assertAlmostEqual(1.0, invert_sinh_bromwich(scheme, lambda q: 1 / q, T), delta=1e-9)

    def test_vector_valued(self):
        T = 0.25
        scheme = BromwichScheme.for_maturity(T, 1e-12, math.pi / 20, max_workers=1)
        res = invert_sinh_bromwich(scheme, lambda q: np.array([exp_decay(q), t_exp_decay(q)]), T)

        self.assertAlmostEqual(math.exp(-T), res[0], delta=1e-9)
        self.assertAlmostEqual(T * math.exp(-T), res[1], delta=1e-9)

    def test_values_given(self):
        T = 1.0
        scheme = BromwichScheme.for_maturity(T, 1e-12, math.pi / 20, sigma_floor=0.2)
        values = exp_decay(scheme.q_values)

        self.assertAlmostEqual(invert_sinh_bromwich(scheme, exp_decay, T), invert_sinh_bromwich(scheme, None, T, values),
                               places=14)


class TestFlatBromwich(unittest.TestCase):

    def test_exponential(self):
        res = invert_flat_bromwich(exp_decay, 1.0, sigma=1.0, zeta=0.01, n=20000, max_workers=1)

        self.assertAlmostEqual(math.exp(-1.0), res, delta=1e-6)

    def test_bad_maturity(self):
        self.assertRaises(ValueError, invert_flat_bromwich, exp_decay, 0.0, 1.0, 0.01, 100)


class TestGaver(unittest.TestCase):

    def test_gwr_exponential(self):
        for T in (0.25, 1.0, 5.0):
            res = invert_gwr(GwrScheme(T=T), exp_decay)

            self.assertAlmostEqual(math.exp(-T), res, delta=5e-5)

    def test_gwr_constant(self):
        for T in (0.25, 1.0, 5.0, 15.0):
            self.assertAlmostEqual(1.0, invert_gwr(GwrScheme(T=T), lambda q: 1 / q), delta=1e-12)

    def test_gwr_shift(self):
        T = 2.0
        plain = invert_gwr(GwrScheme(T=T), t_exp_decay)
        shifted = invert_gwr(GwrScheme(T=T, shift_a=0.5), t_exp_decay)

        self.assertAlmostEqual(T * math.exp(-T), plain, delta=5e-5)
        self.assertAlmostEqual(T * math.exp(-T), shifted, delta=5e-5)

    def test_gwr_floor(self):
        scheme = GwrScheme.with_floor(1.0, 2.0)

        self.assertAlmostEqual(2.0, scheme.sample_points[0])
        self.assertEqual(0.0, GwrScheme.with_floor(1.0, 0.1).shift_a)

    def test_gwr_order(self):
        self.assertRaises(ValueError, GwrScheme, 1.0, 12)
        self.assertRaises(ValueError, GwrScheme, 0.0)
        self.assertRaises(ValueError, GwrScheme, 1.0, 8, -0.1)
        with self.assertWarns(RuntimeWarning):
            GwrScheme(T=1.0, M=6)

    def test_gaver_functionals_of_constant(self):
        # f_n = 1 for F(q) = 1/q
        tau = math.log(2)
        values = 1 / (tau * np.arange(1, 17))
        functionals = gaver_functionals(values, tau, 8)

        self.assertTrue(np.allclose(np.ones(8), functionals, rtol=1e-7, atol=0))
        self.assertRaises(ValueError, gaver_functionals, values[:-1], tau, 8)

    def test_gaver_rounding_bounds(self):
        tau = math.log(2) / 5.0
        values = 1 / (tau * np.arange(1, 17))
        bounds = gaver_rounding_bounds(values, tau, 8)
        functionals = gaver_functionals(values, tau, 8)

        self.assertEqual((8,), bounds.shape)
        self.assertTrue(np.all(bounds > 0))
        self.assertTrue(np.all(np.diff(bounds) > 0))
        self.assertTrue(np.all(np.abs(functionals - 1) <= bounds))

    def test_wynn_rho_within_rounding(self):
        noise = np.array([0.0, 3e-15, -2e-14, 8e-14, -4e-13, 1e-12, -6e-12, 3e-11])
        rounding = 2 * np.abs(noise) + 1e-16

        self.assertEqual(1.0, float(wynn_rho(1.0 + noise, rounding)))

        # a sequence moving by more than its rounding is extrapolated
        n = np.arange(1, 9)
        res = wynn_rho(1 + 1 / n, np.full(8, 1e-15))
        self.assertAlmostEqual(1.0, float(res), places=10)

    def test_wynn_rho_rational(self):
        # rho is exact on sequences rational in n
        n = np.arange(1, 9)
        res = wynn_rho(1 + 1 / n)

        self.assertAlmostEqual(1.0, float(res), places=10)
        self.assertRaises(ValueError, wynn_rho, np.ones(2))

    def test_wynn_rho_constant(self):
        self.assertEqual(0.5, float(wynn_rho(np.full(8, 0.5))))

    def test_wynn_rho_elementwise(self):
        n = np.arange(1, 9)
        res = wynn_rho(np.stack([1 + 1 / n, np.full(8, 0.5)], axis=1))

        self.assertEqual((2,), res.shape)
        self.assertAlmostEqual(1.0, res[0], places=10)
        self.assertEqual(0.5, res[1])

    def test_stehfest_coefficients(self):
        coefficients = stehfest_coefficients(8)

        self.assertEqual(16, coefficients.size)
        self.assertAlmostEqual(0.0, coefficients.sum(), places=6)
        self.assertAlmostEqual(-1 / 2520, coefficients[0], places=15)

    def test_stehfest_exponential(self):
        res = invert_gaver_stehfest(exp_decay, 1.0)

        self.assertAlmostEqual(math.exp(-1.0), res, delta=1e-3)
