import unittest

import numpy as np
from scipy.special import eval_laguerre

from wiener_hopf.lab import Grid, tolerance
from wiener_hopf.lalescu import (
    BOUND_MIN_S, LalescuSuite, SmoothBump, TEST_FUNCTIONS, cheb_Q, eigen_residual, eigfun_q,
    gamma_factor, gamma_inverse, gamma_map, generating_function_check, half_line_rule,
    kernel_residual_L, lalescu_commutation_residual, lambda_chebyshev_form, lambda_fn,
    lambda_functions, laguerre_functions, laguerre_l, moment_integral, moment_zero_check,
    q_bound, q_gram, q_sup, q_values, spectral_norm, spectral_residual_W, u_apply, v_apply,
    v_direct, w_isometry_residual, w_range_residual
)
from wiener_hopf.utils.exceptions import ValidationError


class TestEigenfunctions(unittest.TestCase):
    """Test cases for the generalized eigenfunctions q_s"""

    def test_examples(self):
        x = np.linspace(0, 10, 51)
        np.testing.assert_allclose(eigfun_q(1.0, x), (np.cos(x) + np.sin(x)) / np.sqrt(np.pi), atol=1e-14)
        s = 0.5
        tau = np.sqrt(2 / s - 1)
        self.assertAlmostEqual(eigfun_q(s, 0.0), 2 * tau / np.sqrt(4 * np.pi * s * tau), places=14)

    def test_eigen_residual(self):
        for s, x in ((1.0, 0.7), (0.5, 3.0), (1.5, 0.0)):
            self.assertLess(eigen_residual(s, x), 1e-10)
        residual = max(np.max(eigen_residual(s, np.linspace(0, 10, 21))) for s in np.linspace(0.05, 1.95, 21))
        self.assertLess(residual, 1e-10)

    def test_bound(self):
        x = np.linspace(0, 50, 2001)
        for s in np.linspace(0.6, 1.95, 10):
            self.assertLessEqual(np.max(np.abs(eigfun_q(s, x))), q_bound(s) * (1 + 1e-12))
        self.assertGreater(q_sup(0.2), q_bound(0.2))
        self.assertLess(BOUND_MIN_S, 0.6)

    def test_errors(self):
        for s in (0.0, 2.0, -1.0, 2.5):
            with self.assertRaises(ValidationError):
                eigfun_q(s, 1.0)
        with self.assertRaises(ValidationError):
            eigfun_q(1.0, -1.0)


class TestLaguerre(unittest.TestCase):
    """Test cases for Laguerre functions and the λ_n basis"""

    def setUp(self):
        self.x = np.linspace(0, 20, 81)

    def test_low_orders(self):
        np.testing.assert_allclose(laguerre_l(0, self.x), np.exp(-self.x / 2))
        np.testing.assert_allclose(laguerre_l(1, self.x), (1 - self.x) * np.exp(-self.x / 2), atol=1e-15)
        self.assertAlmostEqual(laguerre_l(3, 0.0), 1.0)

    def test_against_scipy(self):
        values = laguerre_functions(30, self.x)
        for n in (2, 7, 30):
            np.testing.assert_allclose(values[n], np.exp(-self.x / 2) * eval_laguerre(n, self.x), atol=1e-10)

    def test_errors(self):
        with self.assertRaises(ValidationError):
            laguerre_l(201, 1.0)
        with self.assertRaises(ValidationError):
            laguerre_l(2, -0.5)

    def test_generating_function(self):
        check = generating_function_check(0.5, self.x)
        self.assertLess(check.residual, 1e-10)
        self.assertGreater(check.printed_discrepancy, 1e-2)
        self.assertTrue(check.notes)

    def test_lambda_zero(self):
        x = self.x
        expected = np.sqrt(2 / np.pi) * 6 * x / ((1 + 4 * x ** 2) * np.sqrt(1 + x ** 2))
        np.testing.assert_allclose(lambda_fn(0, x), expected, atol=1e-14)

    def test_gamma_unimodular(self):
        np.testing.assert_allclose(np.abs(gamma_factor(np.linspace(-50, 50, 1001))), 1.0, atol=1e-14)

    def test_closed_and_chebyshev_forms(self):
        recurrent = lambda_functions(15, self.x)
        for n in (0, 1, 4, 15):
            closed = lambda_fn(n, self.x)
            self.assertLess(np.max(np.abs(closed.imag)), 1e-13)
            np.testing.assert_allclose(closed.real, lambda_chebyshev_form(n, self.x), atol=1e-10)
            np.testing.assert_allclose(recurrent[n], closed.real, atol=1e-10)

    def test_orthonormality(self):
        rule = half_line_rule(64, 16)
        gram = rule.gram(lambda_functions(15, rule.nodes))
        np.testing.assert_allclose(gram, np.eye(16), atol=1e-6)


class TestMoments(unittest.TestCase):
    """Test cases for the vanishing moment identity"""

    def test_vanishing(self):
        for k in (0, 3, -5, 10, -10):
            self.assertLess(moment_zero_check(k), 1e-8, msg=f"k={k}")

    def test_negative_index_raw_value(self):
        value = moment_integral(-1)
        self.assertAlmostEqual(value.real, np.pi / 6, places=8)
        self.assertAlmostEqual(value.imag, 0.0, places=8)

    def test_range(self):
        with self.assertRaises(ValidationError):
            moment_zero_check(51)


class TestChebyshev(unittest.TestCase):
    """Test cases for the orthonormal polynomials Q_n"""

    def test_coefficients(self):
        np.testing.assert_allclose(cheb_Q(1).coeffs, (-1 / 3, 2.0))
        np.testing.assert_allclose(cheb_Q(2).coeffs, (-1.0, -2 / 3, 4.0))
        self.assertEqual(len(cheb_Q(7).coeffs), 8)

    def test_value_recurrence_matches_coefficients(self):
        xi = np.linspace(-1, 1, 41)
        np.testing.assert_allclose(cheb_Q(6)(xi), q_values(6, xi)[6], atol=1e-10)

    def test_orthonormality(self):
        gram = q_gram(20)
        np.testing.assert_allclose(gram, np.eye(21), atol=1e-10)

    def test_degree_bound(self):
        with self.assertRaises(ValidationError):
            cheb_Q(201)


class TestTransforms(unittest.TestCase):
    """Test cases for Γ, U, V and W"""

    def setUp(self):
        self.rng = np.random.default_rng(42)
        self.rule = half_line_rule(64, 16)
        self.bump = SmoothBump(0.5, 1.5)

    def test_gamma_map(self):
        y = np.linspace(0, 10, 21)
        np.testing.assert_allclose(gamma_map(np.ones_like)(y), 2 * np.sqrt(y) / (1 + y ** 2))

        coefficients = self.rng.normal(size=5)

        def h(s):
            return np.polynomial.polynomial.polyval(s, coefficients)

        h_norm = spectral_norm(h, (0.0, 2.0))
        self.assertAlmostEqual(self.rule.norm(gamma_map(h)(self.rule.nodes)) / h_norm, 1.0, delta=1e-10)
        s = np.linspace(0.05, 1.95, 39)
        np.testing.assert_allclose(gamma_inverse(gamma_map(h))(s), h(s), atol=1e-10 * np.max(np.abs(h(s))))

    def test_u_apply(self):
        x = np.linspace(0, 10, 41)
        np.testing.assert_allclose(u_apply(np.array([1.0]))(x), lambda_fn(0, x).real, atol=1e-14)
        g = self.rng.normal(size=15)
        ratio = self.rule.norm(u_apply(g)(self.rule.nodes)) / np.linalg.norm(g)
        self.assertAlmostEqual(ratio, 1.0, delta=1e-8)
        with self.assertRaises(ValidationError):
            u_apply(np.array([]))

    def test_bump_support(self):
        with self.assertRaises(ValidationError):
            SmoothBump(0.0, 1.0)
        with self.assertRaises(ValidationError):
            SmoothBump(1.0, 2.0)
        self.assertEqual(self.bump(np.array([0.4, 1.6])).tolist(), [0.0, 0.0])

    def test_v_two_ways(self):
        grid = Grid(40.0, 512)
        for h in TEST_FUNCTIONS[:2]:
            expansion = v_apply(h)
            self.assertLess(expansion.tail_energy, 1e-6)
            reference = expansion(grid.points)
            direct = v_direct(h, grid.points)
            self.assertLess(grid.norm(direct - reference) / grid.norm(reference), 1e-4)
            self.assertAlmostEqual(np.linalg.norm(expansion.coefficients) / spectral_norm(h), 1.0, delta=1e-6)

    def test_perturbed_normalization(self):
        grid = Grid(40.0, 512)
        reference = v_apply(self.bump)(grid.points)
        direct = v_direct(self.bump, grid.points, norm_scale=1.1)
        self.assertAlmostEqual(grid.norm(direct - reference) / grid.norm(reference), 0.1, delta=5e-3)

    def test_spectral_residual(self):
        coarse = spectral_residual_W(self.bump, Grid(160.0, 4096))
        fine = spectral_residual_W(self.bump, Grid(160.0, 8192))
        self.assertLess(coarse, 1e-3)
        self.assertGreaterEqual(coarse / fine, 1.4)

    def test_spectral_residual_edge_cases(self):
        zero = SmoothBump(0.5, 1.5, amplitude=0.0)
        self.assertEqual(spectral_residual_W(zero, Grid(20.0, 256)), 0.0)
        with self.assertRaises(ValidationError):
            spectral_residual_W(lambda s: np.ones_like(s), Grid(20.0, 256))

    def test_w_isometry(self):
        grid = Grid(160.0, 4096)
        tol = tolerance(grid.n)
        for h in TEST_FUNCTIONS:
            self.assertLess(w_isometry_residual(h, grid), tol, msg=h.describe())
        self.assertLess(w_range_residual(self.bump, grid), tol)

    def test_kernel_and_commutation(self):
        grid = Grid(160.0, 4096)
        tol = tolerance(grid.n)
        self.assertLess(kernel_residual_L(grid), tol)
        coarse = lalescu_commutation_residual(self.bump, grid)
        fine = lalescu_commutation_residual(self.bump, grid.extended())
        self.assertLess(coarse, tol)
        self.assertLessEqual(fine, coarse)


class TestLalescuSuite(unittest.TestCase):
    """Test cases for the aggregated validation suite"""

    def test_default_run_passes(self):
        result = LalescuSuite().run()
        self.assertTrue(result.passed, msg=str(result.failed_checks()))
        self.assertIn('q_s=0.5', result.dumps)
        self.assertIn('lambda_5', result.dumps)
        self.assertEqual(list(result.dumps['Q_0'].columns), ['x', 're', 'im'])
        isometry = next(c for c in result.checks if c.name == 'W isometry')
        self.assertEqual(len(isometry.residuals), 2)
        self.assertLessEqual(max(isometry.residuals), isometry.tolerance)

    def test_perturbed_normalization_fails(self):
        suite = LalescuSuite()
        suite.set_parameters({'perturb_norm': 1.1, 'max_n': 5})
        result = suite.run()
        self.assertEqual(result.failed_checks(), ['V normalization cross-check'])
        check = next(c for c in result.checks if c.name == 'V normalization cross-check')
        self.assertAlmostEqual(check.residual, 0.1, delta=5e-3)

    def test_invalid_parameters(self):
        suite = LalescuSuite()
        for parameters in ({'bump': [0.0, 1.0]}, {'max_n': 300}, {'perturb_norm': 0.0}, {'moment_max_k': 60}):
            with self.assertRaises(ValidationError):
                suite.set_parameters(parameters)


if __name__ == '__main__':
    unittest.main()
