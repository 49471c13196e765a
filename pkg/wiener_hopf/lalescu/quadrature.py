import logging
import warnings
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate

from ..config import DEFAULT_CONFIG
from ..utils.exceptions import NumericalFailureError, ValidationError
from .laguerre import gamma_factor

logger = logging.getLogger(__name__)

MAX_MOMENT = 50


@dataclass
class QuadratureRule:
    """Nodes and weights of a composite rule"""
    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, values: np.ndarray):
        return np.sum(values * self.weights, axis=-1)

    def inner(self, f: np.ndarray, g: np.ndarray) -> complex:
        return complex(np.sum(np.conj(f) * g * self.weights))

    def norm(self, f: np.ndarray) -> float:
        return float(np.sqrt(np.sum(np.abs(f) ** 2 * self.weights)))

    def gram(self, values: np.ndarray) -> np.ndarray:
        """Gram matrix of the rows of `values`"""
        return (np.conj(values) * self.weights) @ values.T


def panel_rule(a: float, b: float, panels: int = 64, order: int = 16) -> QuadratureRule:
    """Composite Gauss-Legendre rule on [a, b] with equal panels"""
    if not b > a:
        raise ValidationError(f"Empty interval [{a}, {b}]")
    t, w = leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    half = np.diff(edges)[:, None] / 2
    centers = (edges[:-1] + edges[1:])[:, None] / 2
    return QuadratureRule((centers + half * t).ravel(), (half * w).ravel())


def half_line_rule(panels: int = 64, order: int = 16) -> QuadratureRule:
    """
    Rule for ∫_0^∞ through x = t/(1−t)

    Integrands decaying like x^{−2} or faster map to bounded integrands on
    [0, 1].
    """
    base = panel_rule(0.0, 1.0, panels, order)
    t = base.nodes
    return QuadratureRule(t / (1 - t), base.weights / (1 - t) ** 2)


def _moment_integrand(k: int, conjugate: bool):
    def integrand(theta: float) -> complex:
        x = np.tan(theta)
        amplitude = (x + 1j) / (1 + 2j * x)
        if conjugate:
            amplitude = np.conj(amplitude)
        return complex(amplitude ** 2 * gamma_factor(x) ** k)
    return integrand


def _quad_complex(func, a: float, b: float, config: Dict[str, Any]) -> complex:
    kwargs = {'epsabs': config['epsabs'], 'epsrel': config['epsrel'], 'limit': int(config['limit'])}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always', integrate.IntegrationWarning)
        real, _ = integrate.quad(lambda t: func(t).real, a, b, **kwargs)
        imag, _ = integrate.quad(lambda t: func(t).imag, a, b, **kwargs)
    if any(issubclass(w.category, integrate.IntegrationWarning) for w in caught):
        logger.warning(f"quad reported an integration warning: {caught[0].message}")
    value = complex(real, imag)
    if not np.isfinite(value):
        raise NumericalFailureError("Moment quadrature returned a non-finite value")
    return value


def _check_moment(k: int):
    if int(k) != k or abs(k) > MAX_MOMENT:
        raise ValidationError(f"Moment index must be an integer with |k| ≤ {MAX_MOMENT}, got {k}")


def moment_integral(k: int, conjugate: bool = False, config: Optional[Dict[str, Any]] = None) -> complex:
    """
    ∫_ℝ (1+x²)⁻¹·((x+i)/(1+2ix))²·γ(x)^k dx

    With x = tan θ the weight (1+x²)⁻¹dx becomes dθ and the integrand stays
    bounded on (−π/2, π/2). `conjugate` uses ((x−i)/(1−2ix))² instead.
    """
    _check_moment(k)
    config = dict(DEFAULT_CONFIG['quadrature'], **(config or {}))
    return _quad_complex(_moment_integrand(int(k), conjugate), -np.pi / 2, np.pi / 2, config)


def moment_zero_check(k: int, config: Optional[Dict[str, Any]] = None) -> float:
    """
    Size of the moment that vanishes at index k

    For k ≥ 0 the moment itself vanishes. For k < 0 it does not (it is
    π/6 at k = −1), and its conjugate partner is the vanishing one.
    """
    return abs(moment_integral(k, conjugate=k < 0, config=config))
