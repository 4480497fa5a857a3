import math
import unittest

import numpy as np
from scipy import integrate

from levy_extrema.model.levy import BrownianMotion, build_model
from levy_extrema.oracle.brownian import bm_joint_cdf, bm_no_touch, bm_joint_density, bm_joint_cdf_laplace, \
    bm_exchange
from levy_extrema.oracle.flat import flat_line_factors, flat_contour_cpdf_laplace
from levy_extrema.oracle.monte_carlo import OracleReport, mc_joint_cdf

SIGMA, MU = 0.3, 0.05


class TestBrownianClosedForms(unittest.TestCase):

    def test_no_touch_without_drift(self):
        # P[max <= a] = 2*Phi(a/(sigma*sqrt(T))) - 1
        res = bm_no_touch(SIGMA, 0.0, 1.0, 0.2)

        self.assertAlmostEqual(math.erf(0.2 / (SIGMA * math.sqrt(2.0))), res, places=14)

    def test_cpdf_bounds(self):
        self.assertEqual(0.0, bm_joint_cdf(SIGMA, MU, 1.0, -0.05, 0.1, x2=0.2))
        self.assertLessEqual(bm_joint_cdf(SIGMA, MU, 1.0, -0.05, 0.1), bm_no_touch(SIGMA, MU, 1.0, 0.1))
        self.assertAlmostEqual(bm_joint_cdf(SIGMA, MU, 1.0, 0.1, 0.1), bm_joint_cdf(SIGMA, MU, 1.0, 0.3, 0.1))

    def test_density_integrates_to_cpdf(self):
        T, a1, a2 = 1.0, -0.05, 0.1
        res = integrate.dblquad(lambda m, w: float(bm_joint_density(SIGMA, MU, T, w, m)), -3.0, a1,
                                lambda w: max(w, 0.0), lambda w: a2, epsabs=1e-12)[0]

        self.assertAlmostEqual(bm_joint_cdf(SIGMA, MU, T, a1, a2), res, places=9)

    def test_laplace(self):
        # for a1 = a2 = a and mu = 0 the transform is (1 - exp(-a*sqrt(2q)/sigma))/q
        q, a = 2.0, 0.1
        res = bm_joint_cdf_laplace(SIGMA, 0.0, q, a, a)

        self.assertAlmostEqual((1 - math.exp(-a * math.sqrt(2 * q) / SIGMA)) / q, res, places=9)
        self.assertRaises(ValueError, bm_joint_cdf_laplace, SIGMA, 0.0, 0.0, a, a)

    def test_exchange_positive(self):
        self.assertGreater(bm_exchange(SIGMA, 0.0, 0.5, 1.5), 0)

    def test_bad_arguments(self):
        self.assertRaises(ValueError, bm_joint_cdf, 0.0, MU, 1.0, 0.0, 0.1)
        self.assertRaises(ValueError, bm_joint_cdf, SIGMA, MU, 0.0, 0.0, 0.1)
        self.assertRaises(ValueError, bm_joint_cdf, SIGMA, MU, 1.0, 0.0, 0.1, 0.1, 0.0)
        self.assertRaises(ValueError, bm_exchange, SIGMA, MU, 1.0, 0.5)
        self.assertRaises(ValueError, bm_exchange, SIGMA, MU, 1.0, 1.5, 0.1, 0.0)


class TestFlatLines(unittest.TestCase):

    def setUp(self):
        self.model = BrownianMotion(sigma=SIGMA, mu=MU)

    def test_brownian_factors(self):
        q = 1.0
        factors = flat_line_factors(self.model, q)
        minus_root, plus_root = self.model.negative_root(q), self.model.positive_root(q)
        xi, eta = factors['upper'][::500], factors['lower'][::500]

        self.assertTrue(np.allclose(minus_root / (minus_root - xi), factors['plus_upper'][::500], rtol=0, atol=1e-3))
        self.assertTrue(np.allclose(plus_root / (plus_root - eta), factors['minus_lower'][::500], rtol=0, atol=1e-3))

    def test_cpdf_laplace(self):
        q = 1.0
        res = flat_contour_cpdf_laplace(self.model, q, 0.0, 0.0, -0.05, 0.1)

        self.assertAlmostEqual(bm_joint_cdf_laplace(SIGMA, MU, q, -0.05, 0.1), res.real, delta=1e-3)
        self.assertEqual(0j, flat_contour_cpdf_laplace(self.model, q, 0.0, 0.2, -0.05, 0.1))

    def test_bad_lines(self):
        self.assertRaises(ValueError, flat_line_factors, self.model, 1.0, 1.5)
        self.assertRaises(ValueError, flat_line_factors, self.model, 1.0, 0.3, 0.0)
        self.assertRaises(ValueError, flat_line_factors, self.model, 1.0, 0.3, 0.05, 0)


class TestMonteCarlo(unittest.TestCase):

    def test_brownian(self):
        T, a1, a2 = 1.0, -0.05, 0.1
        report = mc_joint_cdf(BrownianMotion(sigma=SIGMA, mu=MU), T, a1, a2, n_paths=20000, n_steps=200, seed=1)

        self.assertEqual('mc', report.method)
        self.assertEqual(20000 * 200, report.cost)
        self.assertLess(abs(report.value - bm_joint_cdf(SIGMA, MU, T, a1, a2)), 3 * report.est_error)

    def test_seed_reproducible(self):
        model = BrownianMotion(sigma=SIGMA)
        first = mc_joint_cdf(model, 1.0, 0.0, 0.1, n_paths=2000, n_steps=50, seed=7)
        second = mc_joint_cdf(model, 1.0, 0.0, 0.1, n_paths=2000, n_steps=50, seed=7)

        self.assertEqual(first.value, second.value)

    def test_kobol(self):
        model = build_model('kobol', nu=1.2, lambda_plus=1.0, lambda_minus=-2.0, m2=0.1)
        report = mc_joint_cdf(model, 0.25, -0.05, 0.1, n_paths=2000, n_steps=50)

        self.assertTrue(0 < report.value < 1)

    def test_above_level(self):
        report = mc_joint_cdf(BrownianMotion(sigma=SIGMA), 1.0, 0.0, 0.1, x2=0.2)

        self.assertEqual(0.0, report.value)
        self.assertEqual(0, report.cost)

    def test_bad_arguments(self):
        model = BrownianMotion(sigma=SIGMA)

        self.assertRaises(ValueError, mc_joint_cdf, model, 0.0, 0.0, 0.1)
        self.assertRaises(ValueError, mc_joint_cdf, model, 1.0, 0.0, 0.1, n_paths=0)
        self.assertRaises(ValueError, OracleReport, 'mc', 0.5, 0.0, 10)
