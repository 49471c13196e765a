import logging
import warnings
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate

from ..config import DEFAULT_CONFIG
from .symbol import (
    ExpPowerSymbol, ProductSymbol, RationalSymbol, ScaledSymbol, SumSymbol, Symbol, TabulatedSymbol
)

PROPER = 'Proper'
NOT_PROPER = 'NotProper'
INCONCLUSIVE = 'Inconclusive'


def log_value(symbol: Symbol, x: float) -> complex:
    """
    Complex logarithm of κ(x), built factor by factor

    Exp-power factors contribute c|x|^alpha directly, so products and sums
    containing them stay finite where κ itself overflows. A zero value
    gives -inf.
    """
    if isinstance(symbol, ExpPowerSymbol):
        return complex(symbol.log_abs(np.asarray(float(x))))
    if isinstance(symbol, ScaledSymbol):
        if symbol.factor == 0:
            return complex(-np.inf)
        return complex(np.log(complex(symbol.factor))) + log_value(symbol.inner, x)
    if isinstance(symbol, ProductSymbol):
        logs = [log_value(f, x) for f in symbol.factors]
        if any(v.real == -np.inf for v in logs):
            return complex(-np.inf)
        return complex(sum(logs))
    if isinstance(symbol, SumSymbol):
        logs = np.array([log_value(t, x) for t in symbol.terms])
        peak = np.max(logs.real)
        if peak == -np.inf:
            return complex(-np.inf)
        with np.errstate(divide='ignore'):
            return complex(peak + np.log(np.sum(np.exp(logs - peak))))
    with np.errstate(divide='ignore'):
        return complex(np.log(np.complex128(symbol.evaluate(x))))


def log1p_abs(symbol: Symbol, x: float) -> float:
    """ln(1 + |κ(x)|) without overflow"""
    return float(np.logaddexp(0.0, log_value(symbol, x).real))


@dataclass
class PropernessVerdict:
    """Outcome of the integrability test for ln(1+|κ|)/(1+x²)"""
    verdict: str
    integral_estimate: float
    error_estimate: float
    certified: bool = False
    refinement_delta: Optional[float] = None
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


class PropernessTester:
    """Decides whether a symbol is proper, i.e. whether ln(1+|κ|)/(1+x²) is integrable"""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = dict(DEFAULT_CONFIG['quadrature'])
        if config:
            self.config.update(config)
        self.logger = logging.getLogger(__name__)

    def test(self, symbol: Symbol) -> PropernessVerdict:
        """
        Classify a symbol as Proper, NotProper or Inconclusive

        NotProper is returned only with an analytic divergence certificate.
        Quadrature alone can at most report Proper.

        Args:
            symbol: Symbol to test

        Returns:
            PropernessVerdict
        """
        factor, core = self._unwrap_scaled(symbol)
        if factor == 0:
            return PropernessVerdict(PROPER, 0.0, 0.0, certified=True, notes=["zero symbol"])

        if isinstance(core, RationalSymbol):
            return self._test_rational(symbol, core)
        if isinstance(core, ExpPowerSymbol):
            return self._test_exp_power(abs(factor), core)
        if isinstance(core, TabulatedSymbol):
            return self._test_tabulated(symbol, core)
        return self._test_composite(symbol)

    @staticmethod
    def _unwrap_scaled(symbol: Symbol) -> Tuple[complex, Symbol]:
        factor = 1 + 0j
        while isinstance(symbol, ScaledSymbol):
            factor *= complex(symbol.factor)
            symbol = symbol.inner
        return factor, symbol

    def _quad(self, func: Callable[[float], float], a: float, b: float,
              points: Optional[Sequence[float]] = None, scale: float = 1.0) -> Tuple[float, float, bool]:
        kwargs = {
            'epsabs': self.config['epsabs'] * scale,
            'epsrel': self.config['epsrel'] * scale,
            'limit': int(self.config['limit']) * (2 if scale < 1 else 1),
        }
        inner = [p for p in (points or []) if a < p < b]
        if inner:
            kwargs['points'] = inner
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always', integrate.IntegrationWarning)
            value, error = integrate.quad(func, a, b, **kwargs)
        converged = not any(issubclass(w.category, integrate.IntegrationWarning) for w in caught)
        return float(value), float(error), converged and np.isfinite(value)

    def _line_integral(self, log_term: Callable[[float], float],
                       points: Sequence[float], scale: float = 1.0) -> Tuple[float, float, bool]:
        """∫ log_term(x)/(1+x²) over the real line, tails mapped by x = ±1/u"""
        finite = [p for p in points if np.isfinite(p)]
        R = max(self.config['core_extent'], max((abs(p) for p in finite), default=0.0) + 1.0)

        center = self._quad(lambda x: log_term(x) / (1.0 + x * x), -R, R, finite, scale)
        right = self._quad(lambda u: log_term(1.0 / u) / (1.0 + u * u), 0.0, 1.0 / R, None, scale)
        left = self._quad(lambda u: log_term(-1.0 / u) / (1.0 + u * u), 0.0, 1.0 / R, None, scale)

        value = center[0] + right[0] + left[0]
        error = center[1] + right[1] + left[1]
        return value, error, center[2] and right[2] and left[2]

    def _refined(self, compute: Callable[[float], Tuple[float, float, bool]]
                 ) -> Tuple[float, float, bool, float]:
        value, error, converged = compute(1.0)
        fine_value, _, _ = compute(1e-1)
        delta = abs(fine_value - value)
        return value, error, converged, delta

    def _test_rational(self, symbol: Symbol, core: RationalSymbol) -> PropernessVerdict:
        def log_term(x: float) -> float:
            return float(np.log1p(abs(symbol.evaluate(x))))

        value, error, converged, delta = self._refined(
            lambda scale: self._line_integral(log_term, core.real_poles(), scale)
        )
        notes = ["rational symbols are proper"]
        if not converged:
            notes.append("quadrature reported slow convergence for the estimate")
        return PropernessVerdict(PROPER, value, error, certified=True,
                                 refinement_delta=delta, notes=notes)

    def _test_exp_power(self, factor: float, core: ExpPowerSymbol) -> PropernessVerdict:
        c, alpha = core.c, core.alpha
        if c > 0 and alpha >= 1:
            note = f"ln(1+|κ|) grows at least like {c:g}|x|, so the integral diverges"
            self.logger.info(note)
            return PropernessVerdict(NOT_PROPER, np.inf, 0.0, certified=True, notes=[note])
        if c > 0 and alpha <= -1:
            note = f"ln(1+|κ|) >= {c:g}|x|^{alpha:g} is not integrable at 0"
            self.logger.info(note)
            return PropernessVerdict(NOT_PROPER, np.inf, 0.0, certified=True, notes=[note])

        log_factor = np.log(factor)

        def h(x: float) -> float:
            # ln(1 + factor·exp(c|x|^alpha)) without overflow
            return float(np.logaddexp(0.0, log_factor + core.log_abs(np.asarray(x))))

        value, error, converged, delta = self._refined(lambda scale: self._half_line_exp(h, alpha, c, scale))
        notes = [] if converged else ["quadrature reported slow convergence for the estimate"]
        return PropernessVerdict(PROPER, value, error, certified=True,
                                 refinement_delta=delta, notes=notes)

    def _half_line_exp(self, h: Callable[[float], float], alpha: float, c: float,
                       scale: float) -> Tuple[float, float, bool]:
        """2∫_0^∞ h(x)/(1+x²) dx with power substitutions at 0 and at ∞"""
        if c > 0 and alpha < 0:
            p = 1.0 / (1.0 + alpha)
        else:
            p = 1.0
        near = self._quad(lambda t: h(t ** p) / (1.0 + t ** (2 * p)) * p * t ** (p - 1.0),
                          0.0, 1.0, None, scale)

        # x = 1/u on [1, ∞), then u = t^q removes the u^(-alpha) singularity
        q = 1.0 / (1.0 - alpha) if (c > 0 and 0 < alpha < 1) else 1.0
        far = self._quad(lambda t: h(1.0 / t ** q) / (1.0 + t ** (2 * q)) * q * t ** (q - 1.0),
                         0.0, 1.0, None, scale)
        return 2 * (near[0] + far[0]), 2 * (near[1] + far[1]), near[2] and far[2]

    def _test_tabulated(self, symbol: Symbol, core: TabulatedSymbol) -> PropernessVerdict:
        extent = self.config['table_min_extent']
        grid = np.asarray(core.grid)
        if grid[0] > -extent or grid[-1] < extent:
            note = (f"table covers [{grid[0]:g}, {grid[-1]:g}], "
                    f"needs [-{extent:g}, {extent:g}]")
            self.logger.warning(f"Properness inconclusive: {note}")
            return PropernessVerdict(INCONCLUSIVE, np.nan, np.nan, notes=[note])

        values = np.abs(symbol.evaluate(grid))
        core_integral = float(integrate.trapezoid(np.log1p(values) / (1.0 + grid ** 2), grid))
        tail_right = np.log1p(values[-1]) * (np.pi / 2 - np.arctan(grid[-1]))
        tail_left = np.log1p(values[0]) * (np.pi / 2 + np.arctan(grid[0]))
        refined_grid = np.linspace(grid[0], grid[-1], 2 * len(grid) - 1)
        refined = float(integrate.trapezoid(
            np.log1p(np.abs(symbol.evaluate(refined_grid))) / (1.0 + refined_grid ** 2), refined_grid
        ))
        value = core_integral + tail_right + tail_left
        return PropernessVerdict(PROPER, value, abs(refined - core_integral),
                                 refinement_delta=abs(refined - core_integral),
                                 notes=["tail estimated from the end values of the table"])

    def _test_composite(self, symbol: Symbol) -> PropernessVerdict:
        for side, name in ((1, '+inf'), (-1, '-inf')):
            growth = symbol.tail(side)
            if growth.exponential_growth:
                note = (f"|κ| >= c·exp({growth.lower:g}|x|) towards {name}, "
                        f"so the integral diverges")
                self.logger.info(note)
                return PropernessVerdict(NOT_PROPER, np.inf, 0.0, certified=True, notes=[note])

        value, error, converged, delta = self._refined(
            lambda scale: self._line_integral(lambda x: log1p_abs(symbol, x), symbol.breakpoints(), scale)
        )
        if np.isfinite(value) and error <= max(1e-6, 1e-6 * abs(value)):
            if not converged:
                self.logger.debug(f"quadrature warnings for {symbol.describe()}, error estimate {error:.2e}")
            return PropernessVerdict(PROPER, value, error, refinement_delta=delta,
                                     notes=["quadrature converged; no divergence certificate needed"])

        note = "quadrature did not converge and no analytic divergence certificate applies"
        self.logger.warning(f"Properness inconclusive: {note}")
        return PropernessVerdict(INCONCLUSIVE, value, error, refinement_delta=delta, notes=[note])


def properness_test(symbol: Symbol, config: Optional[Dict[str, Any]] = None) -> PropernessVerdict:
    """Properness verdict for `symbol` using the quadrature section of the config"""
    return PropernessTester(config).test(symbol)
