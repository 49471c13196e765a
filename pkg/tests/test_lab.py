import unittest

import numpy as np

from wiener_hopf.lab import (
    Grid, a_matrix, apply_wh, embed, fourier, fourier_from_dual, friedrichs_shift,
    general_singular_reduce, hardy_project, hilbert, hilbert_matrix, kernel_matrix,
    kernel_reference_name, negative_frequency_energy, polar_isometry, relative_residual,
    restrict, shift_invariance_residual, singular_matrix, spectral_enclosure, suite_registry,
    wh_matrix
)
from wiener_hopf.polycore import Polynomial
from wiener_hopf.symbols import (
    ConstantSymbol, IndicatorSymbol, RationalSymbol, ScaledSymbol, lalescu_symbol,
    minus_sgn_symbol, minus_tanh_symbol
)
from wiener_hopf.utils.exceptions import GridError, PoleError, UnboundedSymbolError, ValidationError

X = Polynomial.x()


class TestGrid(unittest.TestCase):
    """Test cases for grid invariants"""

    def test_invariants(self):
        with self.assertRaises(GridError):
            Grid(10.0, 100)
        with self.assertRaises(GridError):
            Grid(0.0, 64)
        grid = Grid(10.0, 64)
        self.assertAlmostEqual(grid.dx, 10.0 / 64)
        self.assertAlmostEqual(grid.points[0], grid.dx / 2)

    def test_full_line_symmetry(self):
        full = Grid(10.0, 64).full_line()
        self.assertEqual(full.n, 128)
        self.assertFalse(full.half_line)
        np.testing.assert_allclose(full.points, -full.points[::-1], atol=1e-12)
        self.assertFalse(np.any(full.points == 0.0))

    def test_dual_of_dual(self):
        full = Grid(10.0, 128, half_line=False)
        back = full.dual().dual()
        self.assertAlmostEqual(back.x_max, full.x_max, places=10)
        self.assertEqual(back.n, full.n)
        with self.assertRaises(GridError):
            Grid(10.0, 64).dual()


class TestTransforms(unittest.TestCase):
    """Test cases for FFT Fourier and Hilbert transforms"""

    def setUp(self):
        self.grid = Grid(20.0, 1024, half_line=False)
        self.rng = np.random.default_rng(42)
        self.f = self.rng.normal(size=self.grid.n) + 1j * self.rng.normal(size=self.grid.n)

    def test_unitarity(self):
        ratio = self.grid.dual().norm(fourier(self.f, self.grid)) / self.grid.norm(self.f)
        self.assertAlmostEqual(ratio, 1.0, delta=1e-10)

    def test_inversion_and_reflection(self):
        spectrum = fourier(self.f, self.grid)
        self.assertLess(relative_residual(fourier_from_dual(spectrum, self.grid), self.f), 1e-10)
        twice = fourier_from_dual(spectrum, self.grid, inverse=False)
        self.assertLess(relative_residual(twice, self.f[::-1]), 1e-8)

    def test_gaussian_fixed_point(self):
        grid = Grid(12.0, 512, half_line=False)
        spectrum = fourier(np.exp(-grid.points ** 2 / 2), grid)
        np.testing.assert_allclose(spectrum, np.exp(-grid.dual().points ** 2 / 2), atol=1e-8)

    def test_hilbert_involution(self):
        self.assertLess(relative_residual(hilbert(hilbert(self.f, self.grid), self.grid), self.f), 1e-10)

    def test_odd_orthogonality(self):
        g = self.rng.normal(size=self.grid.n)
        odd = g - g[::-1]
        value = abs(self.grid.inner(hilbert(odd, self.grid), odd)) / self.grid.norm(odd) ** 2
        self.assertLess(value, 1e-10)

    def test_hardy_projection(self):
        Pf = hardy_project(self.f, self.grid)
        self.assertLess(relative_residual(hardy_project(Pf, self.grid), Pf), 1e-10)
        self.assertLess(negative_frequency_energy(Pf, self.grid), 1e-10)

        g = self.rng.normal(size=self.grid.n)
        even = g + g[::-1]
        share = self.grid.norm(hardy_project(even, self.grid)) ** 2 / self.grid.norm(even) ** 2
        self.assertAlmostEqual(share, 0.5, delta=1e-10)

    def test_rational_hardy_members(self):
        grid = Grid(40.0, 4096, half_line=False)
        x = grid.points
        plus = 1 / (x + 1j) ** 2
        minus = 1 / (x - 1j) ** 2
        self.assertLess(relative_residual(hilbert(plus, grid), plus), 1e-2)
        self.assertLess(grid.norm(hardy_project(minus, grid)) / grid.norm(minus), 1e-2)

    def test_shape_errors(self):
        with self.assertRaises(GridError):
            hilbert(np.ones(64), Grid(10.0, 64))
        with self.assertRaises(GridError):
            fourier(np.ones(32), self.grid)

    def test_embed_restrict(self):
        half = Grid(10.0, 64)
        v = self.rng.normal(size=64)
        full = embed(v, half)
        self.assertEqual(full.shape, (128,))
        np.testing.assert_array_equal(full[:64], 0)
        np.testing.assert_allclose(restrict(full, half), v)


class TestOperators(unittest.TestCase):
    """Test cases for Wiener-Hopf, factor and singular integral matrices"""

    def setUp(self):
        self.grid = Grid(20.0, 256)

    def test_identity_symbol(self):
        W = wh_matrix(ConstantSymbol(1.0), self.grid)
        np.testing.assert_allclose(W.entries, np.eye(self.grid.n), atol=1e-12)

    def test_lalescu_kernel_entries(self):
        W = wh_matrix(lalescu_symbol(), self.grid)
        K = kernel_matrix('lalescu', self.grid)
        self.assertLess(np.max(np.abs(W.entries - K.entries)) / self.grid.dx, 0.05)
        self.assertTrue(W.is_hermitian())
        self.assertEqual(W.sidecar()['n'], self.grid.n)

    def test_fft_application_matches_matrix(self):
        rng = np.random.default_rng(42)
        f = rng.normal(size=self.grid.n)
        W = wh_matrix(minus_tanh_symbol(), self.grid)
        np.testing.assert_allclose(apply_wh(minus_tanh_symbol(), f, self.grid), W.apply(f), atol=1e-10)

    def test_pole_on_frequency_grid(self):
        xi = self.grid.frequencies()[300]
        symbol = RationalSymbol(Polynomial.constant(1.0), X - xi)
        with self.assertRaises(PoleError):
            wh_matrix(symbol, self.grid, allow_regularized=True)

    def test_unbounded_symbol(self):
        symbol = RationalSymbol(X * X, Polynomial.constant(1.0))
        with self.assertRaises(UnboundedSymbolError):
            wh_matrix(symbol, self.grid)
        W = wh_matrix(symbol, self.grid, allow_regularized=True)
        self.assertTrue(W.regularized)
        self.assertTrue(W.warnings)

    def test_kernel_names(self):
        self.assertEqual(kernel_reference_name(lalescu_symbol()), 'lalescu')
        self.assertEqual(kernel_reference_name(minus_tanh_symbol()), 'minus_tanh')
        self.assertEqual(kernel_reference_name(minus_sgn_symbol()), 'minus_sgn')
        self.assertIsNone(kernel_reference_name(ConstantSymbol(2.0)))
        with self.assertRaises(ValidationError):
            kernel_matrix('gauss', self.grid)
        self.assertTrue(kernel_matrix('minus_tanh', self.grid).is_hermitian())

    def test_factorization_identities(self):
        for symbol in (ConstantSymbol(1.0), lalescu_symbol(), IndicatorSymbol(((0.0, 1.0),))):
            A, Astar = a_matrix(symbol, self.grid)
            W = wh_matrix(symbol, self.grid)
            L = singular_matrix(symbol, self.grid)
            self.assertLess(relative_residual(A.compose(Astar), W), 1e-10, msg=symbol.describe())
            self.assertLess(relative_residual(Astar.compose(A), L), 1e-10, msg=symbol.describe())

    def test_indicator_factor_is_rectangular(self):
        A, _ = a_matrix(IndicatorSymbol(((0.0, 1.0),)), self.grid)
        rows, cols = A.shape
        self.assertEqual(rows, self.grid.n)
        self.assertLess(cols, 2 * self.grid.n)
        self.assertTrue(np.all((A.col_points >= 0) & (A.col_points <= 1)))

    def test_negative_symbol_rejected(self):
        with self.assertRaises(ValidationError):
            a_matrix(ScaledSymbol(-1.0, lalescu_symbol()), self.grid)

    def test_singular_matrix_of_constant(self):
        L = singular_matrix(ConstantSymbol(2.0), self.grid)
        H = hilbert_matrix(self.grid.full_line().dual())
        np.testing.assert_allclose(L.entries, np.eye(2 * self.grid.n) + H, atol=1e-10)

    def test_general_reduction(self):
        reduction = general_singular_reduce(ConstantSymbol(1.0), ConstantSymbol(1.0), self.grid)
        xi = self.grid.frequencies()
        np.testing.assert_allclose(reduction.phi.evaluate(xi), 2.0)
        np.testing.assert_allclose(reduction.alpha.evaluate(xi), 0.0, atol=1e-14)

        b = ScaledSymbol(1j, lalescu_symbol())
        reduction = general_singular_reduce(ConstantSymbol(0.0), b, self.grid)
        np.testing.assert_allclose(reduction.u.evaluate(xi), -1j, atol=1e-14)

        with self.assertRaises(ValidationError):
            general_singular_reduce(ConstantSymbol(1.0), IndicatorSymbol(((0.0, 1.0),)), self.grid)


class TestPolar(unittest.TestCase):
    """Test cases for the polar isometry"""

    def test_identity(self):
        polar = polar_isometry(np.eye(6))
        np.testing.assert_allclose(polar.T.entries, np.eye(6), atol=1e-12)
        np.testing.assert_allclose(polar.absA.entries, np.eye(6), atol=1e-12)

    def test_random_reconstruction(self):
        rng = np.random.default_rng(42)
        A = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        polar = polar_isometry(A)
        self.assertLess(np.linalg.norm(polar.T.entries @ polar.absA.entries - A), 1e-10)
        self.assertLess(polar.intertwining_residual, 1e-10)

    def test_rank_deficient_projection(self):
        rng = np.random.default_rng(42)
        A = rng.normal(size=(8, 3)) @ rng.normal(size=(3, 8))
        polar = polar_isometry(A)
        self.assertEqual(polar.rank, 3)
        P = polar.projection().entries
        np.testing.assert_allclose(P @ P, P, atol=1e-10)

    def test_unit_symbol_factor_is_isometric(self):
        grid = Grid(10.0, 64)
        A, _ = a_matrix(ConstantSymbol(1.0), grid)
        polar = polar_isometry(A)
        self.assertLess(relative_residual(polar.T, A), 1e-10)


class TestIdentities(unittest.TestCase):
    """Test cases for shift, enclosure and Friedrichs identities"""

    def setUp(self):
        self.grid = Grid(20.0, 256)

    def test_friedrichs_examples(self):
        shift = friedrichs_shift(lalescu_symbol())
        self.assertEqual((shift.eta, shift.alpha), (1, 0.0))

        shift = friedrichs_shift(ScaledSymbol(-1.0, lalescu_symbol()))
        self.assertEqual((shift.eta, shift.alpha), (-1, 0.0))
        self.assertAlmostEqual(shift.kappa_shifted.evaluate(0.0), 2.0)

        shift = friedrichs_shift(RationalSymbol(X * X - 1, Polynomial.constant(1.0)))
        self.assertEqual(shift.eta, 1)
        self.assertAlmostEqual(shift.alpha, 1.0, places=9)

        with self.assertRaises(UnboundedSymbolError):
            friedrichs_shift(RationalSymbol(X, Polynomial.constant(1.0)))

    def test_shift_invariance(self):
        self.assertEqual(shift_invariance_residual(lalescu_symbol(), 0.0, self.grid), 0.0)
        b = 13 * self.grid.dx
        self.assertLess(shift_invariance_residual(ConstantSymbol(1.0), b, self.grid), 1e-12)
        self.assertLess(shift_invariance_residual(lalescu_symbol(), b, self.grid), 0.05)
        with self.assertRaises(ValidationError):
            shift_invariance_residual(lalescu_symbol(), 0.3 * self.grid.dx, self.grid)

    def test_spectral_enclosure(self):
        enclosure = spectral_enclosure(minus_tanh_symbol(), self.grid)
        self.assertTrue(enclosure.contained)
        self.assertEqual((enclosure.lower, enclosure.upper), (-1.0, 1.0))
        self.assertEqual(len(enclosure.eigenvalues), self.grid.n)


class TestSuites(unittest.TestCase):
    """Test cases for the lab suite registry"""

    def setUp(self):
        self.small = {'n': [64, 128], 'x_max': 10.0}

    def test_registry(self):
        for name in ('factorization', 'hilbert-ops', 'isometry', 'kernel', 'shift',
                     'enclosure', 'general-reduction'):
            self.assertIn(name, suite_registry)
        self.assertEqual(len(suite_registry), 7)
        with self.assertRaises(ValidationError):
            suite_registry.create_suite('nonexistent')
        with self.assertRaises(ValidationError):
            suite_registry.create_suite('factorization', {'n': [100]})

    def test_small_suites_pass(self):
        for name in ('factorization', 'hilbert-ops', 'isometry', 'enclosure', 'general-reduction'):
            result = suite_registry.create_suite(name, self.small).run()
            self.assertTrue(result.passed, msg=f"{name}: {result.failed_checks()}")

    def test_kernel_convergence(self):
        suite = suite_registry.create_suite('kernel', {'n': [512, 1024], 'x_max': 20.0})
        for symbol in (lalescu_symbol(), minus_tanh_symbol()):
            result = suite.run(symbol)
            self.assertTrue(result.passed, msg=symbol.describe())
            self.assertGreaterEqual(result.checks[0].ratio, 1.4)

    def test_factorization_against_kernel_quadrature(self):
        suite = suite_registry.create_suite('factorization', self.small)
        result = suite.run()
        check = next(c for c in result.checks if c.name == 'AA* against kernel quadrature')
        self.assertTrue(check.passed)
        self.assertEqual(check.parameters['kernel'], 'lalescu')
        self.assertGreaterEqual(check.ratio, 1.4)
        self.assertGreater(check.residuals[-1], suite.parameters['residual_floor'])

        # no closed-form kernel, no quadrature check
        shifted = suite.run(RationalSymbol(Polynomial.constant(3.0), X * X + 1))
        self.assertNotIn('AA* against kernel quadrature', [c.name for c in shifted.checks])

    def test_suite_logs_under_package(self):
        suite = suite_registry.create_suite('hilbert-ops', {'n': [256]})
        self.assertTrue(suite.logger.name.startswith('wiener_hopf.'))
        with self.assertLogs('wiener_hopf', level='INFO'):
            suite.run()

    def test_shift_suite(self):
        result = suite_registry.create_suite('shift', {'n': [256], 'x_max': 20.0}).run()
        self.assertTrue(result.passed)
        self.assertLess(result.checks[0].residuals[0], 0.05)

    def test_report_schema(self):
        result = suite_registry.create_suite('factorization', self.small).run()
        data = result.to_dict(include_timestamp=False)
        self.assertNotIn('execution_time', data)
        check = data['checks'][0]
        for key in ('check_name', 'parameters', 'residual', 'tolerance', 'pass'):
            self.assertIn(key, check)
        self.assertEqual(len(check['residuals']), 2)


if __name__ == '__main__':
    unittest.main()
