import logging
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
from scipy import optimize

from ..polycore import find_roots
from ..utils.exceptions import PoleError, UnboundedSymbolError, ValidationError
from .symbol import (
    ConstantSymbol, ExpPowerSymbol, IndicatorSymbol, ProductSymbol, RationalSymbol, ScaledSymbol,
    SumSymbol, Symbol, TanhSymbol
)

logger = logging.getLogger(__name__)

INF = float('inf')


@dataclass
class RangeMembership:
    """Distance from λ to the closure of κ(ℝ)"""
    member: bool
    distance: float
    borderline: bool = False
    warnings: List[str] = field(default_factory=list)


def _angle_grid(samples: int) -> np.ndarray:
    # open interval (-π/2, π/2); x = tan θ covers the line
    k = np.arange(samples)
    return -np.pi / 2 + (k + 0.5) * np.pi / samples


def _safe_values(symbol: Symbol, x: np.ndarray) -> np.ndarray:
    try:
        return symbol.evaluate(x)
    except PoleError:
        values = np.empty(x.shape, dtype=complex)
        for i, xi in enumerate(x):
            try:
                values[i] = symbol.evaluate(float(xi))
            except PoleError:
                values[i] = np.nan
        return values


def essential_range_membership(symbol: Symbol, lam: complex, tol: float = 1e-6,
                               samples: int = 4001) -> RangeMembership:
    """
    Decide whether λ lies in the closure of κ(ℝ)

    Dense sampling on x = tan θ, refinement of |κ(x) − λ| around each sampled
    local minimum, and for rational symbols the limit value at ±∞ when it
    exists.

    Args:
        symbol: Symbol (rational symbols get the exact limit at infinity)
        lam: Candidate λ
        tol: Membership tolerance
        samples: Number of θ samples

    Returns:
        RangeMembership
    """
    lam = complex(lam)
    if not np.isfinite(lam):
        raise ValidationError(f"λ must be finite, got {lam}")

    theta = _angle_grid(int(samples))
    values = _safe_values(symbol, np.tan(theta))
    dist = np.abs(values - lam)
    dist[~np.isfinite(dist)] = INF
    best = float(np.min(dist))

    def objective(th: float) -> float:
        try:
            return float(abs(symbol.evaluate(np.tan(th)) - lam))
        except PoleError:
            return INF

    interior = np.arange(1, len(dist) - 1)
    minima = interior[(dist[interior] <= dist[interior - 1]) & (dist[interior] <= dist[interior + 1])]
    for i in minima:
        if best == 0.0:
            break
        result = optimize.minimize_scalar(
            objective, bounds=(theta[i - 1], theta[i + 1]), method='bounded',
            options={'xatol': 1e-14}
        )
        if np.isfinite(result.fun):
            best = min(best, float(result.fun))

    if isinstance(symbol, RationalSymbol):
        limit = symbol.limit_at_infinity()
        if limit is not None:
            best = min(best, abs(limit - lam))

    result = RangeMembership(member=best <= tol, distance=best)
    if tol < best <= 2 * tol:
        message = f"λ = {lam} is borderline: distance {best:.3e} to the range, tolerance {tol:.1e}"
        logger.warning(message)
        result.borderline = True
        result.warnings.append(message)
    return result


def _rational_bounds(symbol: RationalSymbol) -> Tuple[float, float]:
    P, Q = symbol.P, symbol.Q
    lead = Q.leading
    P, Q = P * (1 / lead), Q * (1 / lead)
    if P.is_zero:
        return 0.0, 0.0

    values: List[float] = []
    derivative = P.derivative() * Q - P * Q.derivative()
    poles = symbol.real_poles()
    if derivative.is_zero:
        return float(P(0.0).real / Q(0.0).real), float(P(0.0).real / Q(0.0).real)

    if derivative.degree >= 1:
        for z, _ in find_roots(derivative):
            if abs(z.imag) > 1e-7 * max(1.0, abs(z)):
                continue
            if any(abs(z.real - p) <= 1e-9 * max(1.0, abs(p)) for p in poles):
                continue
            values.append(float(symbol.evaluate(z.real).real))

    limit = symbol.limit_at_infinity()
    if limit is not None:
        values.append(float(limit.real))
    else:
        diff = int(P.degree - Q.degree)
        ratio = (P.leading / Q.leading).real
        values.append(INF if ratio > 0 else -INF)
        values.append(INF if ratio * (-1) ** diff > 0 else -INF)

    for pole in poles:
        delta = 1e-6 * max(1.0, abs(pole))
        for x in (pole - delta, pole + delta):
            values.append(INF if symbol.evaluate(x).real > 0 else -INF)

    return min(values), max(values)


def essential_bounds(symbol: Symbol, samples: int = 4001) -> Tuple[float, float]:
    """
    Essential infimum and supremum of a real symbol

    Rational, exp-power, indicator, tanh and constant symbols (and real
    multiples of them) are handled analytically. Other symbols fall back to a
    scan on x = tan θ, with infinite bounds where the tail analysis certifies
    exponential growth.

    Args:
        symbol: Real-valued symbol
        samples: Scan size for the fallback

    Returns:
        (lower, upper), possibly infinite
    """
    if not symbol.is_real():
        raise ValidationError(f"Essential bounds need a real symbol, got {symbol.describe()}")

    if isinstance(symbol, ScaledSymbol):
        factor = complex(symbol.factor).real
        lower, upper = essential_bounds(symbol.inner, samples)
        if factor == 0:
            return 0.0, 0.0
        if factor > 0:
            return factor * lower, factor * upper
        return factor * upper, factor * lower
    if isinstance(symbol, RationalSymbol):
        return _rational_bounds(symbol)
    if isinstance(symbol, ConstantSymbol):
        value = complex(symbol.value).real
        return value, value
    if isinstance(symbol, TanhSymbol):
        return -abs(symbol.sign), abs(symbol.sign)
    if isinstance(symbol, IndicatorSymbol):
        if not symbol.intervals:
            return 0.0, 0.0
        covered = (symbol.intervals[0][0] == -INF and symbol.intervals[-1][1] == INF
                   and all(b0 >= a1 for (_, b0), (a1, _) in zip(symbol.intervals, symbol.intervals[1:])))
        return (1.0, 1.0) if covered else (0.0, 1.0)
    if isinstance(symbol, ExpPowerSymbol):
        c, alpha = symbol.c, symbol.alpha
        if c == 0 or alpha == 0:
            value = float(np.exp(c)) if alpha == 0 else 1.0
            return value, value
        if c > 0:
            return 1.0, INF
        return 0.0, 1.0

    theta = _angle_grid(int(samples))
    values = _safe_values(symbol, np.tan(theta)).real
    values = values[np.isfinite(values)]
    if values.size == 0:
        raise UnboundedSymbolError(f"No finite samples of {symbol.describe()}")
    lower, upper = float(np.min(values)), float(np.max(values))
    for side, x in ((1, 1e6), (-1, -1e6)):
        if symbol.tail(side).exponential_growth:
            if _safe_values(symbol, np.array([x]))[0].real > 0:
                upper = INF
            else:
                lower = -INF
    return lower, upper


def is_bounded(symbol: Symbol) -> bool:
    """Structural boundedness test; composites are bounded when every part is"""
    if isinstance(symbol, RationalSymbol):
        return symbol.limit_at_infinity() is not None and not symbol.real_poles()
    if isinstance(symbol, ExpPowerSymbol):
        return symbol.c <= 0 or symbol.alpha == 0
    if isinstance(symbol, ScaledSymbol):
        return is_bounded(symbol.inner)
    if isinstance(symbol, SumSymbol):
        return all(is_bounded(t) for t in symbol.terms)
    if isinstance(symbol, ProductSymbol):
        return all(is_bounded(f) for f in symbol.factors)
    return True
