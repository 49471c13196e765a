import logging
from dataclasses import dataclass, field
from typing import Any, Dict

import numpy as np
from scipy.special import eval_laguerre

from ..utils.exceptions import ValidationError
from .chebyshev import q_values

logger = logging.getLogger(__name__)

MAX_ORDER = 200


def _check_order(n: int):
    if int(n) != n or n < 0 or n > MAX_ORDER:
        raise ValidationError(f"Order must be an integer in [0, {MAX_ORDER}], got {n}")


def _half_line(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or np.any(np.isnan(x)):
        raise ValidationError("Laguerre functions are defined for x ≥ 0")
    return x


def laguerre_functions(n_max: int, x) -> np.ndarray:
    """
    l_0..l_{n_max} with l_k(x) = e^{−x/2}L_k(x), shape (n_max + 1,) + x.shape

    The three-term recurrence runs on l_k directly; |l_k| ≤ 1 on x ≥ 0.
    """
    _check_order(n_max)
    x = _half_line(x)
    values = np.empty((n_max + 1,) + x.shape)
    values[0] = np.exp(-x / 2)
    if n_max >= 1:
        values[1] = (1.0 - x) * values[0]
    for k in range(1, n_max):
        values[k + 1] = ((2 * k + 1 - x) * values[k] - k * values[k - 1]) / (k + 1)
    return values


def laguerre_l(n: int, x):
    values = laguerre_functions(n, x)[n]
    return float(values) if np.ndim(x) == 0 else values


def generating_function(q: float, x) -> np.ndarray:
    """Σ qⁿl_n(x) = (1−q)⁻¹·exp(−(1+q)x/(2(1−q)))"""
    x = np.asarray(x, dtype=float)
    return np.exp(-(1 + q) * x / (2 * (1 - q))) / (1 - q)


def printed_generating_function(q: float, x) -> np.ndarray:
    """(1−q)⁻¹·exp(−(1+q)x/2), the form without (1−q) in the exponent"""
    x = np.asarray(x, dtype=float)
    return np.exp(-(1 + q) * x / 2) / (1 - q)


@dataclass
class GeneratingFunctionCheck:
    q: float
    terms: int
    residual: float
    printed_discrepancy: float
    notes: list = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'q': self.q,
            'terms': self.terms,
            'residual': self.residual,
            'printed_discrepancy': self.printed_discrepancy,
            'notes': list(self.notes),
        }


def generating_function_check(q: float = 0.5, x=None, terms: int = MAX_ORDER) -> GeneratingFunctionCheck:
    """
    Sum the Laguerre series at q and compare both closed forms

    Args:
        q: Series parameter, |q| < 1
        x: Sample points on ℝ₊; 41 points on [0, 20] by default
        terms: Number of series terms

    Returns:
        GeneratingFunctionCheck with the max deviation from each form
    """
    if not abs(q) < 1:
        raise ValidationError(f"Generating function needs |q| < 1, got {q}")
    x = np.linspace(0.0, 20.0, 41) if x is None else _half_line(x)
    values = laguerre_functions(terms - 1, x)
    series = np.sum(values * (q ** np.arange(terms))[:, None], axis=0)
    residual = float(np.max(np.abs(series - generating_function(q, x))))
    printed = float(np.max(np.abs(series - printed_generating_function(q, x))))
    check = GeneratingFunctionCheck(float(q), int(terms), residual, printed)
    if printed > 1e-6:
        check.notes.append(f"(1−q)⁻¹exp(−(1+q)x/2) deviates from the series by {printed:.3e}; "
                           f"the series matches (1−q)⁻¹exp(−(1+q)x/(2(1−q))) to {residual:.1e}")
    return check


def gamma_factor(x) -> np.ndarray:
    """γ(x) = (−1+2ix)/(1+2ix), unimodular on the real line"""
    x = np.asarray(x, dtype=float)
    return (-1 + 2j * x) / (1 + 2j * x)


def _amplitude(x: np.ndarray) -> np.ndarray:
    return (x + 1j) / (1 + 2j * x)


def lambda_fn(n: int, x) -> np.ndarray:
    """
    λ_n = U l_n in closed form

    λ_n(x) = √(2/π)(1+x²)^{−1/2}·((x+i)/(1+2ix)·γⁿ + (x−i)/(1−2ix)·γ^{−n})
    """
    _check_order(n)
    x = _half_line(x)
    gamma = gamma_factor(x)
    ahead = _amplitude(x) * gamma ** n
    behind = (x - 1j) / (1 - 2j * x) * gamma ** (-n)
    return np.sqrt(2 / np.pi) / np.sqrt(1 + x ** 2) * (ahead + behind)


def lambda_functions(n_max: int, x) -> np.ndarray:
    """Real λ_0..λ_{n_max} on x, shape (n_max + 1,) + x.shape"""
    _check_order(n_max)
    x = _half_line(x)
    gamma = gamma_factor(x)
    prefactor = 2 * np.sqrt(2 / np.pi) / np.sqrt(1 + x ** 2)
    current = _amplitude(x)
    values = np.empty((n_max + 1,) + x.shape)
    for k in range(n_max + 1):
        values[k] = prefactor * current.real
        current = current * gamma
    return values


def lambda_chebyshev_form(n: int, x) -> np.ndarray:
    """
    λ_n = 3·(2π(1+x²))^{−1/2}·sin φ·Q_n(cos φ) where e^{iφ} = γ(x)

    cos φ = (4x²−1)/(4x²+1) and sin φ = 4x/(4x²+1).
    """
    _check_order(n)
    x = _half_line(x)
    xi = (4 * x ** 2 - 1) / (4 * x ** 2 + 1)
    sin_phi = 4 * x / (4 * x ** 2 + 1)
    return 3.0 / np.sqrt(2 * np.pi * (1 + x ** 2)) * sin_phi * q_values(n, xi)[n]


def lambda_closed_form_residual(n_max: int, x) -> float:
    """max |λ_n − Chebyshev form| over n ≤ n_max; also checks that λ_n is real"""
    worst = 0.0
    for n in range(n_max + 1):
        closed = lambda_fn(n, x)
        worst = max(worst, float(np.max(np.abs(closed - lambda_chebyshev_form(n, x)))))
    return worst


def laguerre_reference_residual(n_max: int, x) -> float:
    """max |l_n − e^{−x/2}·L_n| against scipy.special.eval_laguerre"""
    x = _half_line(x)
    values = laguerre_functions(n_max, x)
    expected = np.array([np.exp(-x / 2) * eval_laguerre(n, x) for n in range(n_max + 1)])
    return float(np.max(np.abs(values - expected)))
