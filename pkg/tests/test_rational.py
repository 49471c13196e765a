import unittest

import numpy as np

from wiener_hopf.polycore import Polynomial
from wiener_hopf.rational import (
    CONTINUOUS_SPECTRUM, MINUS, PLUS, POINT_SPECTRUM, RESIDUAL_SPECTRUM, RESOLVENT,
    RationalFunction, SpectralClassifier, classify_point, cokernel_basis, deficiency,
    domain_descriptor, kernel_basis, validate_hardy_membership
)
from wiener_hopf.utils.exceptions import ValidationError

X = Polynomial.x()
ONE = Polynomial.constant(1.0)


def _poly(*roots, leading=1.0):
    return Polynomial.from_roots([(z, 1) for z in roots], leading)


def _random_real_pair(rng):
    deg_p = int(rng.integers(0, 5))
    deg_q = int(rng.integers(0, 5))
    p = Polynomial(tuple(rng.normal(size=deg_p + 1)))
    q = Polynomial(tuple(rng.normal(size=deg_q + 1)))
    return p, q


class TestRationalCalculus(unittest.TestCase):
    """Test cases for domain, kernel and cokernel"""

    def test_domain_descriptor(self):
        d = domain_descriptor(X, ONE)
        self.assertEqual(d.q_real.degree, 0)
        self.assertEqual(d.sigma, 1)

        d = domain_descriptor(ONE, X)
        self.assertTrue(d.q_real.is_close(X))
        self.assertEqual(d.sigma, 1)

        d = domain_descriptor(X * X + 1, X)
        self.assertTrue(d.q_real.is_close(X))
        self.assertEqual(d.sigma, 2)

    def test_kernel_basis(self):
        self.assertEqual(len(kernel_basis(X, ONE)), 0)
        self.assertEqual(len(kernel_basis(Polynomial.constant(2.0), X * X + 1)), 0)

        basis = kernel_basis(X + 1j, X - 1j)
        self.assertEqual(len(basis), 1)
        h = basis.elements[0]
        for x in (-2.0, 0.3, 5.0):
            self.assertAlmostEqual(complex(h(x)), 1 / (x + 1j), places=10)

    def test_cokernel_basis(self):
        self.assertEqual(len(cokernel_basis(X + 1j, X - 1j)), 0)
        self.assertEqual(len(cokernel_basis(X * X, ONE)), 0)

        basis = cokernel_basis(X - 1j, ONE)
        self.assertEqual(len(basis), 1)
        for x in (-1.0, 0.0, 2.5):
            self.assertAlmostEqual(complex(basis.elements[0](x)), 1 / (x + 1j), places=10)

    def test_zero_denominator_rejected(self):
        with self.assertRaises(ValidationError):
            domain_descriptor(X, Polynomial(()))


class TestClassifier(unittest.TestCase):
    """Test cases for spectral classification"""

    def setUp(self):
        self.lalescu = (Polynomial.constant(2.0), X * X + 1)

    def test_lalescu_resolvent(self):
        result = classify_point(*self.lalescu, -1.0)
        self.assertEqual(result.category, RESOLVENT)
        self.assertTrue(result.is_fredholm)
        self.assertEqual((result.dim_ker, result.dim_coker, result.index), (0, 0, 0))
        self.assertTrue(result.is_regular_value)
        self.assertFalse(result.unreliable)

    def test_lalescu_continuous(self):
        result = classify_point(*self.lalescu, 1.0)
        self.assertEqual(result.category, CONTINUOUS_SPECTRUM)
        self.assertTrue(result.in_closure_of_range)
        self.assertFalse(result.is_fredholm)
        self.assertIsNone(result.index)
        self.assertEqual(result.degree_data['P_lambda_upper'], 0)

    def test_lalescu_at_zero(self):
        # P − 0·Q = P, and 0 is the limit of κ at infinity
        result = classify_point(*self.lalescu, 0.0)
        self.assertEqual(result.category, CONTINUOUS_SPECTRUM)
        self.assertEqual((result.dim_ker, result.dim_coker), (0, 0))
        self.assertFalse(result.is_fredholm)

    def test_identity_residual(self):
        result = classify_point(X, ONE, 1j)
        self.assertEqual(result.category, RESIDUAL_SPECTRUM)
        self.assertEqual(result.dim_coker, 1)
        self.assertEqual(result.dim_ker, 0)
        self.assertEqual(result.index, -1)
        self.assertTrue(result.is_regular_value)

    def test_point_spectrum(self):
        result = classify_point(X + 1j, X - 1j, 0.0)
        self.assertEqual(result.category, POINT_SPECTRUM)
        self.assertEqual(result.dim_ker, 1)

    def test_constant_symbol_at_its_value(self):
        result = classify_point(ONE, ONE, 1.0)
        self.assertEqual(result.category, POINT_SPECTRUM)
        self.assertIsNone(result.dim_ker)
        self.assertIsNone(result.index)

    def test_record_schema(self):
        record = classify_point(*self.lalescu, -1.0).to_record()
        self.assertEqual(record['lambda'], [-1.0, 0.0])
        for key in ('category', 'dim_ker', 'dim_coker', 'index', 'unreliable', 'degrees'):
            self.assertIn(key, record)

    def test_fredholm_invariants_random(self):
        rng = np.random.default_rng(42)
        for _ in range(25):
            p, q = _random_real_pair(rng)
            classifier = SpectralClassifier(p, q)
            for lam in (1j, -1j, 2 + 0.5j, -3 - 2j):
                result = classifier.classify(lam)
                if result.is_fredholm:
                    self.assertEqual(min(result.dim_ker, result.dim_coker), 0)
                    self.assertEqual(result.index, result.dim_ker - result.dim_coker)
                if result.category == RESOLVENT:
                    self.assertEqual((result.dim_ker, result.dim_coker), (0, 0))

    def test_index_constant_on_half_planes(self):
        rng = np.random.default_rng(42)
        t = np.linspace(0.0, 1.0, 50)
        for _ in range(10):
            p, q = _random_real_pair(rng)
            classifier = SpectralClassifier(p, q)
            for start, end in ((-2 + 0.5j, 2 + 3j), (-2 - 0.5j, 2 - 3j)):
                path = start + (end - start) * t
                results = classifier.classify_grid(path)
                triples = {(r.dim_ker, r.dim_coker, r.index) for r in results}
                self.assertEqual(len(triples), 1)


class TestDeficiency(unittest.TestCase):
    """Test cases for deficiency indices"""

    def _indices(self, p, q):
        report = deficiency(p, q)
        return report.n_plus, report.n_minus

    def test_documented_examples(self):
        self.assertEqual(self._indices(X, ONE), (1, 0))
        self.assertEqual(self._indices(X * X, ONE), (1, 1))
        self.assertEqual(self._indices(X * X - 1, X), (2, 0))
        self.assertEqual(self._indices(X * X + 1, X), (1, 1))
        self.assertEqual(self._indices(X * X - 1, X - 2), (1, 1))

    def test_monomial_powers(self):
        for l in range(-3, 4):
            if l >= 0:
                p, q = X ** l, ONE
            else:
                p, q = ONE, X ** (-l)
            if l % 2 == 0:
                expected = (abs(l) // 2, abs(l) // 2)
            else:
                expected = (abs(l + 1) // 2, abs(l - 1) // 2)
            self.assertEqual(self._indices(p, q), expected, msg=f"l={l}")

    def test_basis_sizes_and_report(self):
        report = deficiency(X * X - 1, X)
        self.assertEqual(len(report.basis_plus), report.n_plus)
        self.assertEqual(len(report.basis_minus), report.n_minus)
        data = report.to_dict()
        self.assertEqual(data['n_plus'], 2)
        self.assertFalse(data['has_selfadjoint_extension'])

    def test_basis_in_hardy_plus(self):
        for p, q in ((X, ONE), (X * X, ONE), (X * X + 1, X), (X * X - 1, X - 2)):
            report = deficiency(p, q)
            for h in list(report.basis_plus) + list(report.basis_minus):
                self.assertLess(validate_hardy_membership(h, PLUS).residual, 1e-6)

    def test_complex_coefficients_rejected(self):
        with self.assertRaises(ValidationError):
            deficiency(X - 1j, ONE)

    def test_agrees_with_classifier(self):
        rng = np.random.default_rng(42)
        for _ in range(25):
            p, q = _random_real_pair(rng)
            report = deficiency(p, q)
            classifier = SpectralClassifier(p, q)
            self.assertEqual(report.n_plus, classifier.classify(1j).dim_coker)
            self.assertEqual(report.n_minus, classifier.classify(-1j).dim_coker)
            if max(classifier.pair.P.degree, classifier.pair.Q.degree) % 2 == 1:
                self.assertNotEqual(report.n_plus, report.n_minus)


class TestHardyMembership(unittest.TestCase):
    """Test cases for Hardy space membership"""

    def test_examples(self):
        plus = validate_hardy_membership(RationalFunction(ONE, X + 1j), PLUS)
        self.assertTrue(plus.analytic)
        self.assertLess(plus.residual, 1e-6)

        wrong = validate_hardy_membership(RationalFunction(ONE, X - 1j), PLUS)
        self.assertFalse(wrong.analytic)
        self.assertGreater(wrong.residual, 1 - 1e-6)

        both = validate_hardy_membership(RationalFunction(ONE, X * X + 1), PLUS)
        self.assertFalse(both.analytic)

        minus = validate_hardy_membership(RationalFunction(ONE, X - 1j), MINUS)
        self.assertTrue(minus.analytic)
        self.assertLess(minus.residual, 1e-6)

    def test_not_square_integrable(self):
        with self.assertRaises(ValidationError):
            validate_hardy_membership(RationalFunction(X, X + 1j), PLUS)
        with self.assertRaises(ValidationError):
            validate_hardy_membership(RationalFunction(ONE, X * X - 1), PLUS)

    def test_kernel_basis_oracle(self):
        i = 1j
        symbols = [
            (_poly(-i), _poly(i)),
            (_poly(-i, -i), _poly(i, i)),
            (_poly(-2 * i), _poly(3 * i)),
            (_poly(-i, -i), _poly(0.0, i)),
            (_poly(-i, -2 * i), _poly(i, 2 * i)),
            (_poly(-i, -2 * i, -3 * i), _poly(i, i)),
            (_poly(-i, -i, 1.0), _poly(i, i)),
            (_poly(-i, -i), _poly(i, -3 * i)),
            (_poly(-0.5 * i), _poly(2 * i)),
            (_poly(1 - i, -1 - i), _poly(i, i)),
        ]
        for P, Q in symbols:
            basis = kernel_basis(P, Q)
            self.assertGreater(len(basis), 0)
            for h in basis:
                self.assertLess(validate_hardy_membership(h, PLUS).residual, 1e-4)
                self.assertLess(validate_hardy_membership(h.times(P, Q), MINUS).residual, 1e-4)


if __name__ == '__main__':
    unittest.main()
