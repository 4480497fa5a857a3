import math
import unittest

import numpy as np

from levy_extrema.quad.trapezoid import TrapezoidGrid, ErrorBudget, trapezoid_sum, discretization_error, \
    step_for_tolerance, truncation_for_tolerance, estimate_hardy_norm, sum_by_parts


class TestTrapezoidGrid(unittest.TestCase):

    def test_symmetric_grid(self):
        grid = TrapezoidGrid.symmetric(0.25, 4, offset=1.0)

        self.assertEqual(9, grid.size)
        self.assertEqual(1.0, grid.half_length)
        self.assertTrue(np.allclose(np.linspace(0, 2, 9), grid.nodes))

    def test_bad_grid(self):
        self.assertRaises(ValueError, TrapezoidGrid, 0.0, 1, 1)
        self.assertRaises(ValueError, TrapezoidGrid, 0.1, -1, 1)

    def test_bad_budget(self):
        self.assertRaises(ValueError, ErrorBudget, 0.0, 1.0)
        self.assertRaises(ValueError, ErrorBudget, 1e-10, -1.0)


class TestTrapezoidSum(unittest.TestCase):

    def test_gaussian_integral(self):
        grid = TrapezoidGrid.symmetric(0.5, 20)
        res = trapezoid_sum(grid, lambda y: np.exp(-y ** 2))

        self.assertAlmostEqual(math.sqrt(math.pi), res.real, places=14)
        self.assertEqual(0.0, res.imag)

    def test_values_instead_of_function(self):
        grid = TrapezoidGrid.symmetric(0.5, 20)
        values = np.exp(-grid.nodes ** 2)

        self.assertEqual(trapezoid_sum(grid, lambda y: np.exp(-y ** 2)), trapezoid_sum(grid, values))

    def test_non_finite_integrand(self):
        grid = TrapezoidGrid.symmetric(0.5, 4)

        with self.assertRaises(FloatingPointError):
            trapezoid_sum(grid, lambda y: 1 / y)

    def test_wrong_number_of_values(self):
        grid = TrapezoidGrid.symmetric(0.5, 4)

        self.assertRaises(ValueError, trapezoid_sum, grid, np.ones(3))


class TestErrorControl(unittest.TestCase):

    def test_step_meets_tolerance(self):
        budget = ErrorBudget(tol=1e-12, d=0.7, hardy_norm_est=10.0)
        zeta = step_for_tolerance(budget)

        self.assertAlmostEqual(1.0, discretization_error(budget, zeta) / budget.tol, places=8)
        self.assertGreater(discretization_error(budget, 1.01 * zeta), budget.tol)

    def test_truncation_of_exponential_envelope(self):
        lam = truncation_for_tolerance(lambda y: math.exp(-y), 1e-10)

        self.assertAlmostEqual(math.log(2e10), lam, places=5)

    def test_truncation_already_small(self):
        self.assertEqual(0.0, truncation_for_tolerance(lambda y: 1e-20 * math.exp(-y), 1e-10))

    def test_hardy_norm_positive(self):
        norm = estimate_hardy_norm(lambda y: np.exp(-y ** 2), 0.5, 6.0)

        self.assertGreater(norm, 0)
        self.assertLess(norm, 6.0 * math.exp(0.25) + 1e-12)

    def test_halving_step_squares_defect(self):
        # sech is analytic in |Im y| < pi/2 and its integral is pi
        d = math.pi / 2

        def _defect(zeta):
            grid = TrapezoidGrid.symmetric(zeta, int(math.ceil(60 / zeta)))
            return abs(trapezoid_sum(grid, lambda y: 1 / np.cosh(y)).real - math.pi)

        for zeta in (1.0, 0.8):
            coarse, fine = _defect(zeta), _defect(zeta / 2)

            self.assertAlmostEqual(-2 * math.pi * d / zeta, math.log(fine / coarse), delta=0.01 * math.pi ** 2 / zeta)
            self.assertLess(fine, 10 * coarse ** 2)

    def test_doubling_nodes_is_stable(self):
        zeta = 0.25
        grid = TrapezoidGrid.symmetric(zeta, 200)
        longer = TrapezoidGrid.symmetric(zeta, 400)
        g = lambda y: np.exp(0.3j * y) / np.cosh(y)

        self.assertAlmostEqual(0.0, abs(trapezoid_sum(grid, g) - trapezoid_sum(longer, g)), places=15)


class TestSumByParts(unittest.TestCase):

    def test_gaussian_fourier_transform(self):
        grid = TrapezoidGrid.symmetric(0.1, 100)
        n_iters = 3
        y = np.concatenate([grid.nodes, grid.nodes[-1] + grid.zeta * np.arange(1, n_iters + 1)])

        res = sum_by_parts(grid, 1.0, np.exp(-y ** 2), n_iters)

        self.assertAlmostEqual(math.sqrt(math.pi) * math.exp(-0.25), res.real, places=10)
        self.assertAlmostEqual(0.0, res.imag, places=10)

    def test_long_grid_reference(self):
        # int exp(-i*y)/(1 + y**2) dy = pi/e; the integrand decays only like y**(-2)
        zeta, n_iters = 0.1, 3
        g = lambda y: 1 / (1 + y ** 2)
        reference = trapezoid_sum(TrapezoidGrid.symmetric(zeta, 10 ** 6), lambda y: np.exp(-1j * y) * g(y))
        self.assertAlmostEqual(math.pi / math.e, reference.real, places=8)

        grid = TrapezoidGrid.symmetric(zeta, 400)
        y = np.concatenate([grid.nodes, grid.nodes[-1] + zeta * np.arange(1, n_iters + 1)])
        accelerated = sum_by_parts(grid, 1.0, g(y), n_iters)
        plain = trapezoid_sum(grid, lambda y: np.exp(-1j * y) * g(y))

        self.assertLess(abs(accelerated - reference), 2e-5)
        self.assertLess(10 * abs(accelerated - reference), abs(plain - reference))

    def test_bad_arguments(self):
        grid = TrapezoidGrid.symmetric(0.1, 10)

        self.assertRaises(ValueError, sum_by_parts, grid, 1.0, np.ones(grid.size), 0)
        self.assertRaises(ValueError, sum_by_parts, grid, 1.0, np.ones(grid.size), 2)
        self.assertRaises(ValueError, sum_by_parts, grid, 2 * math.pi / 0.1, np.ones(grid.size + 1), 1)
