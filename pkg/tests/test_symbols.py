import os
import tempfile
import unittest

import numpy as np
import pandas as pd

from wiener_hopf.polycore import Polynomial
from wiener_hopf.symbols import (
    ConstantSymbol, ExpPowerSymbol, IndicatorSymbol, ProductSymbol, RationalSymbol, ScaledSymbol,
    SumSymbol, TabulatedSymbol, INCONCLUSIVE, NOT_PROPER, PROPER,
    abs_symbol, essential_bounds, essential_range_membership, exp_symbol,
    lalescu_symbol, minus_sgn_symbol, minus_tanh_symbol, parse_symbol, properness_test
)
from wiener_hopf.symbols.properness import log1p_abs
from wiener_hopf.utils.exceptions import ParseError, PoleError, ValidationError


class TestSymbolEvaluation(unittest.TestCase):
    """Test cases for pointwise evaluation"""

    def test_examples(self):
        self.assertAlmostEqual(lalescu_symbol().evaluate(1.0), 1.0)
        self.assertEqual(IndicatorSymbol(((0.0, 1.0),)).evaluate(2.0), 0.0)
        self.assertAlmostEqual(ExpPowerSymbol(1.0, 1.0).evaluate(-3.0).real, np.exp(3.0))

    def test_vectorized(self):
        x = np.linspace(-2, 2, 5)
        values = lalescu_symbol().evaluate(x)
        np.testing.assert_allclose(values, 2 / (1 + x ** 2))

    def test_pole_and_nan(self):
        one_over_x = RationalSymbol(Polynomial((1.0,)), Polynomial((0.0, 1.0)))
        with self.assertRaises(PoleError):
            one_over_x.evaluate(0.0)
        with self.assertRaises(ValidationError):
            lalescu_symbol().evaluate(float('nan'))

    def test_rational_normalized(self):
        symbol = RationalSymbol(Polynomial((-1.0, 0.0, 1.0)), Polynomial((-1.0, 1.0)))
        self.assertEqual(symbol.Q.degree, 0)
        self.assertAlmostEqual(symbol.evaluate(1.0), 2.0)

    def test_builtins(self):
        x = np.array([-2.0, -0.5, 0.5, 2.0])
        np.testing.assert_allclose(minus_tanh_symbol().evaluate(x), -np.tanh(x))
        np.testing.assert_allclose(minus_sgn_symbol().evaluate(x), -np.sign(x))
        np.testing.assert_allclose(exp_symbol().evaluate(x), np.exp(x))
        np.testing.assert_allclose(abs_symbol().evaluate(x), np.abs(x))

    def test_invalid_indicator(self):
        with self.assertRaises(ValidationError):
            IndicatorSymbol(((0.0, 2.0), (1.0, 3.0)))
        with self.assertRaises(ValidationError):
            IndicatorSymbol(((1.0, 1.0),))

    def test_tabulated(self):
        table = TabulatedSymbol((0.0, 1.0, 2.0), (0.0, 1.0 + 1j, 0.0))
        self.assertAlmostEqual(table.evaluate(0.5), 0.5 + 0.5j)
        self.assertAlmostEqual(table.evaluate(5.0), 0.0)
        with self.assertRaises(ValidationError):
            TabulatedSymbol((0.0, 0.0), (1.0, 2.0))


class TestParsing(unittest.TestCase):
    """Test cases for the symbol grammar"""

    def test_rational(self):
        symbol = parse_symbol("rational:2/1,0,1")
        self.assertEqual(symbol, lalescu_symbol())

    def test_indicator(self):
        symbol = parse_symbol("indicator:[0,1]∪[2,inf]")
        self.assertEqual(symbol.intervals, ((0.0, 1.0), (2.0, float('inf'))))
        self.assertEqual(parse_symbol("indicator:[0,1]U[2,3]").intervals, ((0.0, 1.0), (2.0, 3.0)))

    def test_exppower_and_builtin(self):
        self.assertEqual(parse_symbol("exppower:1,-0.5"), ExpPowerSymbol(1.0, -0.5))
        self.assertEqual(parse_symbol("builtin:lalescu"), lalescu_symbol())

    def test_table(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'symbol.csv')
            pd.DataFrame({'x': [-1.0, 0.0, 1.0], 're': [1.0, 2.0, 1.0], 'im': [0.0, 0.5, 0.0]}).to_csv(path, index=False)
            symbol = parse_symbol(f"table:{path}")
            self.assertAlmostEqual(symbol.evaluate(0.0), 2.0 + 0.5j)

    def test_errors(self):
        for text in ("", "rational:1", "rational:1/0", "indicator:[0;1]", "exppower:1",
                     "builtin:nope", "wavelet:1", "table:/does/not/exist.csv"):
            with self.assertRaises(ParseError, msg=text):
                parse_symbol(text)


class TestProperness(unittest.TestCase):
    """Test cases for the properness classifier"""

    def test_rational_is_proper(self):
        rng = np.random.default_rng(42)
        for _ in range(5):
            P = Polynomial(tuple(rng.normal(size=4)))
            Q = Polynomial(tuple(rng.normal(size=3)) + (1.0,))
            verdict = properness_test(RationalSymbol(P, Q))
            self.assertEqual(verdict.verdict, PROPER)
            self.assertTrue(np.isfinite(verdict.integral_estimate))

    def test_lalescu_estimate(self):
        verdict = properness_test(parse_symbol("rational:1/1,0,1"))
        self.assertEqual(verdict.verdict, PROPER)
        self.assertGreater(verdict.integral_estimate, 0.0)

    def test_exponential_not_proper(self):
        for symbol in (ExpPowerSymbol(1.0, 1.0), exp_symbol(), ExpPowerSymbol(1.0, -1.0)):
            verdict = properness_test(symbol)
            self.assertEqual(verdict.verdict, NOT_PROPER)
            self.assertTrue(verdict.certified)
            self.assertEqual(verdict.integral_estimate, float('inf'))

    def test_subexponential_proper_and_stable(self):
        for alpha in (0.5, -0.5):
            verdict = properness_test(ExpPowerSymbol(1.0, alpha))
            self.assertEqual(verdict.verdict, PROPER)
            self.assertTrue(np.isfinite(verdict.integral_estimate))
            self.assertLess(verdict.refinement_delta, 1e-6)

    def test_constant_exp_power(self):
        # exp(c|x|^0) = e^c, so the integral is π ln(1 + e)
        verdict = properness_test(ExpPowerSymbol(1.0, 0.0))
        self.assertAlmostEqual(verdict.integral_estimate, np.pi * np.log1p(np.e), places=8)

    def test_composite_proper(self):
        verdict = properness_test(minus_sgn_symbol())
        self.assertEqual(verdict.verdict, PROPER)
        self.assertAlmostEqual(verdict.integral_estimate, np.pi * np.log(2.0), places=6)

    def test_products_and_sums_of_proper(self):
        pieces = [lalescu_symbol(), minus_tanh_symbol(), ExpPowerSymbol(1.0, 0.5)]
        for a in pieces:
            for b in pieces:
                self.assertEqual(properness_test(ProductSymbol((a, b))).verdict, PROPER)
                self.assertEqual(properness_test(SumSymbol((a, b))).verdict, PROPER)

    def test_products_with_exp_power_factors(self):
        growing = ExpPowerSymbol(1.0, 0.5)
        for symbol in (ProductSymbol((lalescu_symbol(), growing)), ProductSymbol((growing, lalescu_symbol())),
                       ProductSymbol((growing, growing)), SumSymbol((growing, ScaledSymbol(-2.0, growing)))):
            verdict = properness_test(symbol)
            self.assertEqual(verdict.verdict, PROPER, msg=symbol.describe())
            self.assertTrue(np.isfinite(verdict.integral_estimate), msg=symbol.describe())

        # exp(|x|^0.5)^2 = exp(2|x|^0.5)
        squared = properness_test(ProductSymbol((growing, growing)))
        direct = properness_test(ExpPowerSymbol(2.0, 0.5))
        self.assertAlmostEqual(squared.integral_estimate, direct.integral_estimate, places=4)

    def test_log_value_stays_finite(self):
        symbol = ProductSymbol((lalescu_symbol(), ExpPowerSymbol(1.0, 0.5)))
        x = 1e8
        self.assertAlmostEqual(log1p_abs(symbol, x), np.log(2.0) - 2 * np.log(x) + 1e4, places=6)
        self.assertEqual(log1p_abs(ProductSymbol((minus_tanh_symbol(), lalescu_symbol())), 0.0), 0.0)

    def test_monotone(self):
        dominated = ConstantSymbol(0.5)
        dominating = ExpPowerSymbol(1.0, 0.5)
        x = np.linspace(-50, 50, 1001)
        self.assertTrue(np.all(np.abs(dominated.evaluate(x)) <= np.abs(dominating.evaluate(x))))
        self.assertEqual(properness_test(dominating).verdict, PROPER)
        self.assertEqual(properness_test(dominated).verdict, PROPER)

    def test_tabulated_coverage(self):
        short = TabulatedSymbol((-1.0, 1.0), (1.0, 1.0))
        self.assertEqual(properness_test(short).verdict, INCONCLUSIVE)
        grid = np.linspace(-60, 60, 1201)
        wide = TabulatedSymbol(tuple(grid), tuple(np.ones_like(grid)))
        verdict = properness_test(wide)
        self.assertEqual(verdict.verdict, PROPER)
        self.assertAlmostEqual(verdict.integral_estimate, np.pi * np.log(2.0), places=3)


class TestEssentialRange(unittest.TestCase):
    """Test cases for essential range membership and bounds"""

    def test_examples(self):
        kappa = lalescu_symbol()
        outside = essential_range_membership(kappa, 3.0)
        self.assertFalse(outside.member)
        self.assertAlmostEqual(outside.distance, 1.0, places=8)

        inside = essential_range_membership(kappa, 1.0)
        self.assertTrue(inside.member)
        self.assertLess(inside.distance, 1e-6)

        one = RationalSymbol(Polynomial((1.0,)), Polynomial((1.0,)))
        self.assertTrue(essential_range_membership(one, 1.0).member)

    def test_limit_at_infinity(self):
        # 0 is not attained by 2/(1+x²) but lies in the closure
        self.assertTrue(essential_range_membership(lalescu_symbol(), 0.0).member)

    def test_complex_lambda(self):
        result = essential_range_membership(lalescu_symbol(), 1.0 + 0.5j)
        self.assertFalse(result.member)
        self.assertAlmostEqual(result.distance, 0.5, places=8)

    def test_borderline(self):
        result = essential_range_membership(lalescu_symbol(), 2.0 + 1.5e-6, tol=1e-6)
        self.assertTrue(result.borderline)
        self.assertFalse(result.member)

    def test_bounds(self):
        lower, upper = essential_bounds(lalescu_symbol())
        self.assertAlmostEqual(lower, 0.0)
        self.assertAlmostEqual(upper, 2.0)
        lower, upper = essential_bounds(parse_symbol("rational:-1,0,1/1"))
        self.assertAlmostEqual(lower, -1.0)
        self.assertEqual(upper, float('inf'))
        self.assertEqual(essential_bounds(parse_symbol("indicator:[0,1]")), (0.0, 1.0))
        self.assertEqual(essential_bounds(minus_tanh_symbol()), (-1.0, 1.0))
        self.assertEqual(essential_bounds(exp_symbol())[1], float('inf'))

    def test_bounds_constant_numerator(self):
        lower, upper = essential_bounds(RationalSymbol(Polynomial((3.0,)), Polynomial((4.0, 0.0, 1.0))))
        self.assertAlmostEqual(lower, 0.0)
        self.assertAlmostEqual(upper, 0.75)
        lower, upper = essential_bounds(ScaledSymbol(-1.0, lalescu_symbol()))
        self.assertAlmostEqual(lower, -2.0)
        self.assertAlmostEqual(upper, 0.0)

    def test_bounds_need_real_symbol(self):
        with self.assertRaises(ValidationError):
            essential_bounds(ConstantSymbol(1j))


if __name__ == '__main__':
    unittest.main()
