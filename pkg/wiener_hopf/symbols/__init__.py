from .symbol import (
    Symbol, TailGrowth, RationalSymbol, IndicatorSymbol, ExpPowerSymbol, ConstantSymbol,
    TanhSymbol, ScaledSymbol, SumSymbol, ProductSymbol, TabulatedSymbol,
    BUILTIN_SYMBOLS, lalescu_symbol, minus_tanh_symbol, minus_sgn_symbol, exp_symbol, abs_symbol
)
from .properness import (
    PropernessVerdict, PropernessTester, properness_test, PROPER, NOT_PROPER, INCONCLUSIVE
)
from .essential_range import RangeMembership, essential_range_membership, essential_bounds, is_bounded
from .parsing import parse_symbol, parse_intervals, load_table, symbol_builtin_name

__all__ = [
    'Symbol', 'TailGrowth', 'RationalSymbol', 'IndicatorSymbol', 'ExpPowerSymbol',
    'ConstantSymbol', 'TanhSymbol', 'ScaledSymbol', 'SumSymbol', 'ProductSymbol',
    'TabulatedSymbol', 'BUILTIN_SYMBOLS', 'lalescu_symbol', 'minus_tanh_symbol',
    'minus_sgn_symbol', 'exp_symbol', 'abs_symbol',
    'PropernessVerdict', 'PropernessTester', 'properness_test',
    'PROPER', 'NOT_PROPER', 'INCONCLUSIVE',
    'RangeMembership', 'essential_range_membership', 'essential_bounds', 'is_bounded',
    'parse_symbol', 'parse_intervals', 'load_table', 'symbol_builtin_name'
]
