import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from ..config import EPS_REAL
from ..polycore import Polynomial, find_roots, reduce_coprime_with_warnings
from ..utils.exceptions import PoleError, ValidationError

logger = logging.getLogger(__name__)

INF = float('inf')


@dataclass(frozen=True)
class TailGrowth:
    """
    Exponential rates bounding |κ| on one half-axis

    Eventually c·exp(lower·|x|) <= |κ(x)| <= C·exp(upper·|x|). A rate of 0
    stands for subexponential behaviour (any ε > 0 works). `lower=None`
    means no lower bound is known, `upper=None` means no upper bound is
    known and `upper=-inf` means decay faster than every exponential
    (including vanishing identically).
    """
    lower: Optional[float]
    upper: Optional[float]

    @property
    def exponential_growth(self) -> bool:
        return self.lower is not None and self.lower > 0


SUBEXPONENTIAL = TailGrowth(0.0, 0.0)
EVENTUALLY_ZERO = TailGrowth(None, -INF)
UNKNOWN_TAIL = TailGrowth(None, None)


def tail_sum(a: TailGrowth, b: TailGrowth) -> TailGrowth:
    upper = None if a.upper is None or b.upper is None else max(a.upper, b.upper)
    lower = None
    if a.lower is not None and b.upper is not None and a.lower > b.upper:
        lower = a.lower
    elif b.lower is not None and a.upper is not None and b.lower > a.upper:
        lower = b.lower
    return TailGrowth(lower, upper)


def tail_product(a: TailGrowth, b: TailGrowth) -> TailGrowth:
    lower = None if a.lower is None or b.lower is None else a.lower + b.lower
    if (a.upper == -INF and b.upper is not None) or (b.upper == -INF and a.upper is not None):
        upper = -INF
    elif a.upper is None or b.upper is None:
        upper = None
    else:
        upper = a.upper + b.upper
    return TailGrowth(lower, upper)


class Symbol(ABC):
    """Multiplier function κ evaluated on the real line"""

    def __call__(self, x):
        return self.evaluate(x)

    def evaluate(self, x):
        """
        Pointwise value κ(x)

        Args:
            x: Real scalar or array

        Returns:
            complex for scalar input, complex ndarray otherwise
        """
        arr = np.asarray(x, dtype=float)
        if np.any(np.isnan(arr)):
            raise ValidationError("Symbol evaluation at NaN")
        values = np.asarray(self._evaluate(np.atleast_1d(arr)), dtype=complex)
        if arr.ndim == 0:
            return complex(values[0])
        return values.reshape(arr.shape)

    @abstractmethod
    def _evaluate(self, x: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def is_real(self) -> bool:
        """True when κ is real-valued on the real line"""
        pass

    @abstractmethod
    def tail(self, side: int) -> TailGrowth:
        """Growth descriptor on x -> +inf (side=1) or x -> -inf (side=-1)"""
        pass

    def breakpoints(self) -> List[float]:
        """Finite points where κ is singular or discontinuous"""
        return []

    @abstractmethod
    def describe(self) -> str:
        pass


@dataclass(frozen=True)
class RationalSymbol(Symbol):
    """κ = P/Q, normalized to coprime P and Q on construction"""
    P: Polynomial
    Q: Polynomial
    label: Optional[str] = field(default=None, compare=False)
    warnings: Tuple[str, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if self.Q.is_zero:
            raise ValidationError("Rational symbol with zero denominator")
        if self.P.is_zero:
            object.__setattr__(self, 'Q', Polynomial.constant(1.0))
            return
        P, Q, warnings = reduce_coprime_with_warnings(self.P, self.Q)
        object.__setattr__(self, 'P', P)
        object.__setattr__(self, 'Q', Q)
        object.__setattr__(self, 'warnings', tuple(self.warnings) + tuple(warnings))

    def _evaluate(self, x: np.ndarray) -> np.ndarray:
        num = self.P(x.astype(complex))
        den = self.Q(x.astype(complex))
        scale = np.polynomial.polynomial.polyval(np.abs(x), np.abs(self.Q.as_array()))
        at_pole = np.abs(den) <= 1e-15 * scale
        if np.any(at_pole):
            raise PoleError(f"Rational symbol evaluated at real pole x={x[at_pole][0]!r}")
        return num / den

    def real_poles(self) -> List[float]:
        if self.Q.degree < 1:
            return []
        return sorted(z.real for z, _ in find_roots(self.Q) if abs(z.imag) <= EPS_REAL)

    def limit_at_infinity(self) -> Optional[complex]:
        """Common limit at ±∞, None when |κ| is unbounded there"""
        if self.P.is_zero or self.P.degree < self.Q.degree:
            return 0j
        if self.P.degree == self.Q.degree:
            return complex(self.P.leading / self.Q.leading)
        return None

    def is_real(self) -> bool:
        return (self.P * self.Q.conj_reflect()).is_close(self.P.conj_reflect() * self.Q, 1e-12)

    def tail(self, side: int) -> TailGrowth:
        return EVENTUALLY_ZERO if self.P.is_zero else SUBEXPONENTIAL

    def breakpoints(self) -> List[float]:
        return self.real_poles()

    def describe(self) -> str:
        return self.label or f"rational:{self.P.to_text()}/{self.Q.to_text()}"


@dataclass(frozen=True)
class IndicatorSymbol(Symbol):
    """Indicator of a finite union of disjoint closed intervals (endpoints may be infinite)"""
    intervals: Tuple[Tuple[float, float], ...]
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        cleaned = tuple(sorted((float(a), float(b)) for a, b in self.intervals))
        for a, b in cleaned:
            if np.isnan(a) or np.isnan(b) or not a < b:
                raise ValidationError(f"Invalid interval [{a}, {b}]")
        for (_, b0), (a1, _) in zip(cleaned, cleaned[1:]):
            if a1 < b0:
                raise ValidationError(f"Intervals overlap near {a1}")
        object.__setattr__(self, 'intervals', cleaned)

    def _evaluate(self, x: np.ndarray) -> np.ndarray:
        inside = np.zeros(x.shape, dtype=bool)
        for a, b in self.intervals:
            inside |= (x >= a) & (x <= b)
        return inside.astype(complex)

    def is_real(self) -> bool:
        return True

    def tail(self, side: int) -> TailGrowth:
        if not self.intervals:
            return EVENTUALLY_ZERO
        if side > 0:
            return SUBEXPONENTIAL if self.intervals[-1][1] == INF else EVENTUALLY_ZERO
        return SUBEXPONENTIAL if self.intervals[0][0] == -INF else EVENTUALLY_ZERO

    def breakpoints(self) -> List[float]:
        return sorted({v for ab in self.intervals for v in ab if np.isfinite(v)})

    def describe(self) -> str:
        if self.label:
            return self.label
        return 'indicator:' + '∪'.join(f"[{a:g},{b:g}]" for a, b in self.intervals)


@dataclass(frozen=True)
class ExpPowerSymbol(Symbol):
    """κ(x) = exp(c·|x|^alpha)"""
    c: float
    alpha: float
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if not (np.isfinite(self.c) and np.isfinite(self.alpha)):
            raise ValidationError(f"ExpPower parameters must be finite, got c={self.c}, alpha={self.alpha}")

    def log_abs(self, x: np.ndarray) -> np.ndarray:
        """c·|x|^alpha, the logarithm of κ"""
        if self.c == 0:
            return np.zeros_like(x, dtype=float)
        with np.errstate(divide='ignore'):
            return self.c * np.abs(x) ** self.alpha

    def _evaluate(self, x: np.ndarray) -> np.ndarray:
        with np.errstate(over='ignore'):
            return np.exp(self.log_abs(x)).astype(complex)

    def is_real(self) -> bool:
        return True

    def tail(self, side: int) -> TailGrowth:
        if self.c == 0 or self.alpha < 1:
            return SUBEXPONENTIAL
        if self.alpha == 1:
            return TailGrowth(self.c, self.c)
        return TailGrowth(INF, None) if self.c > 0 else TailGrowth(None, -INF)

    def breakpoints(self) -> List[float]:
        # singular (alpha < 0) or not differentiable (0 < alpha < 1) at the origin
        return [0.0] if self.alpha < 1 and self.alpha != 0 and self.c != 0 else []

    def describe(self) -> str:
        return self.label or f"exppower:{self.c:g},{self.alpha:g}"


@dataclass(frozen=True)
class ConstantSymbol(Symbol):
    value: complex
    label: Optional[str] = field(default=None, compare=False)

    def _evaluate(self, x: np.ndarray) -> np.ndarray:
        return np.full(x.shape, complex(self.value))

    def is_real(self) -> bool:
        return complex(self.value).imag == 0

    def tail(self, side: int) -> TailGrowth:
        return EVENTUALLY_ZERO if self.value == 0 else SUBEXPONENTIAL

    def describe(self) -> str:
        return self.label or f"constant:{self.value}"


@dataclass(frozen=True)
class TanhSymbol(Symbol):
    """κ(x) = sign·tanh(x)"""
    sign: float = -1.0
    label: Optional[str] = field(default=None, compare=False)

    def _evaluate(self, x: np.ndarray) -> np.ndarray:
        return (self.sign * np.tanh(x)).astype(complex)

    def is_real(self) -> bool:
        return True

    def tail(self, side: int) -> TailGrowth:
        return SUBEXPONENTIAL if self.sign != 0 else EVENTUALLY_ZERO

    def describe(self) -> str:
        return self.label or f"tanh:{self.sign:g}"


@dataclass(frozen=True)
class ScaledSymbol(Symbol):
    factor: complex
    inner: Symbol
    label: Optional[str] = field(default=None, compare=False)

    def _evaluate(self, x: np.ndarray) -> np.ndarray:
        return complex(self.factor) * self.inner._evaluate(x)

    def is_real(self) -> bool:
        return complex(self.factor).imag == 0 and self.inner.is_real()

    def tail(self, side: int) -> TailGrowth:
        return EVENTUALLY_ZERO if self.factor == 0 else self.inner.tail(side)

    def breakpoints(self) -> List[float]:
        return self.inner.breakpoints()

    def describe(self) -> str:
        return self.label or f"({self.factor})*{self.inner.describe()}"


@dataclass(frozen=True)
class SumSymbol(Symbol):
    terms: Tuple[Symbol, ...]
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if not self.terms:
            raise ValidationError("SumSymbol needs at least one term")
        object.__setattr__(self, 'terms', tuple(self.terms))

    def _evaluate(self, x: np.ndarray) -> np.ndarray:
        total = np.zeros(x.shape, dtype=complex)
        for term in self.terms:
            total = total + term._evaluate(x)
        return total

    def is_real(self) -> bool:
        return all(t.is_real() for t in self.terms)

    def tail(self, side: int) -> TailGrowth:
        result = self.terms[0].tail(side)
        for term in self.terms[1:]:
            result = tail_sum(result, term.tail(side))
        return result

    def breakpoints(self) -> List[float]:
        return sorted({p for t in self.terms for p in t.breakpoints()})

    def describe(self) -> str:
        return self.label or ' + '.join(t.describe() for t in self.terms)


@dataclass(frozen=True)
class ProductSymbol(Symbol):
    factors: Tuple[Symbol, ...]
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if not self.factors:
            raise ValidationError("ProductSymbol needs at least one factor")
        object.__setattr__(self, 'factors', tuple(self.factors))

    def _evaluate(self, x: np.ndarray) -> np.ndarray:
        total = np.ones(x.shape, dtype=complex)
        for factor in self.factors:
            total = total * factor._evaluate(x)
        return total

    def is_real(self) -> bool:
        return all(f.is_real() for f in self.factors)

    def tail(self, side: int) -> TailGrowth:
        result = self.factors[0].tail(side)
        for factor in self.factors[1:]:
            result = tail_product(result, factor.tail(side))
        return result

    def breakpoints(self) -> List[float]:
        return sorted({p for f in self.factors for p in f.breakpoints()})

    def describe(self) -> str:
        return self.label or ' * '.join(f"({f.describe()})" for f in self.factors)


@dataclass(frozen=True)
class TabulatedSymbol(Symbol):
    """Piecewise-linear interpolation of sampled values, constant beyond the table"""
    grid: Tuple[float, ...]
    values: Tuple[complex, ...]
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        if len(grid) != len(self.values):
            raise ValidationError("Tabulated grid and values differ in length")
        if len(grid) < 2:
            raise ValidationError("Tabulated symbol needs at least two samples")
        if np.any(~np.isfinite(grid)) or np.any(np.diff(grid) <= 0):
            raise ValidationError("Tabulated grid must be finite and strictly increasing")
        if not np.all(np.isfinite(np.asarray(self.values, dtype=complex))):
            raise ValidationError("Tabulated values must be finite")
        object.__setattr__(self, 'grid', tuple(float(v) for v in grid))
        object.__setattr__(self, 'values', tuple(complex(v) for v in self.values))

    def _evaluate(self, x: np.ndarray) -> np.ndarray:
        grid = np.asarray(self.grid)
        values = np.asarray(self.values)
        return np.interp(x, grid, values.real) + 1j * np.interp(x, grid, values.imag)

    def is_real(self) -> bool:
        return all(v.imag == 0 for v in self.values)

    def tail(self, side: int) -> TailGrowth:
        return UNKNOWN_TAIL

    def describe(self) -> str:
        return self.label or f"table[{len(self.grid)} points]"


def lalescu_symbol() -> RationalSymbol:
    """2/(1+x²), the symbol of convolution with exp(-|x|)"""
    return RationalSymbol(Polynomial((2.0,)), Polynomial((1.0, 0.0, 1.0)), label='builtin:lalescu')


def minus_tanh_symbol() -> TanhSymbol:
    return TanhSymbol(-1.0, label='builtin:minus_tanh')


def minus_sgn_symbol() -> SumSymbol:
    return SumSymbol((
        IndicatorSymbol(((-INF, 0.0),)),
        ScaledSymbol(-1.0, IndicatorSymbol(((0.0, INF),))),
    ), label='builtin:minus_sgn')


def exp_symbol() -> SumSymbol:
    """One-sided exponential e^x as exp(|x|) on [0, inf) plus exp(-|x|) on (-inf, 0]"""
    return SumSymbol((
        ProductSymbol((IndicatorSymbol(((0.0, INF),)), ExpPowerSymbol(1.0, 1.0))),
        ProductSymbol((IndicatorSymbol(((-INF, 0.0),)), ExpPowerSymbol(-1.0, 1.0))),
    ), label='builtin:exp')


def abs_symbol() -> ProductSymbol:
    return ProductSymbol((
        RationalSymbol(Polynomial((0.0, 1.0)), Polynomial((1.0,))),
        SumSymbol((
            IndicatorSymbol(((0.0, INF),)),
            ScaledSymbol(-1.0, IndicatorSymbol(((-INF, 0.0),))),
        )),
    ), label='builtin:abs')


BUILTIN_SYMBOLS = {
    'lalescu': lalescu_symbol,
    'minus_tanh': minus_tanh_symbol,
    'minus_sgn': minus_sgn_symbol,
    'exp': exp_symbol,
    'abs': abs_symbol,
}
