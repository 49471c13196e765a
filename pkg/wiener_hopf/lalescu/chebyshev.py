import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.special import roots_chebyu

from ..utils.exceptions import ValidationError

logger = logging.getLogger(__name__)

MAX_DEGREE = 200


@dataclass(frozen=True)
class ChebCombo:
    """Q_n = U_n − U_{n−1}/3 as ascending monomial coefficients"""
    n: int
    coeffs: Tuple[float, ...]

    def __call__(self, xi):
        return npoly.polyval(xi, np.asarray(self.coeffs))


def _check_degree(n: int):
    if int(n) != n or n < 0 or n > MAX_DEGREE:
        raise ValidationError(f"Degree must be an integer in [0, {MAX_DEGREE}], got {n}")


@lru_cache(maxsize=None)
def cheb_Q(n: int) -> ChebCombo:
    """
    Q_0 = 1, Q_1 = 2ξ − 1/3, Q_{n+1} = 2ξQ_n − Q_{n−1} on monomial coefficients

    Monomial coefficients grow like 2ⁿ; evaluate high degrees with q_values.
    """
    _check_degree(n)
    if n == 0:
        return ChebCombo(0, (1.0,))
    previous, current = np.array([1.0]), np.array([-1.0 / 3.0, 2.0])
    for _ in range(1, n):
        previous, current = current, npoly.polysub(2 * npoly.polymulx(current), previous)
    return ChebCombo(int(n), tuple(float(c) for c in current))


def q_values(n_max: int, xi) -> np.ndarray:
    """Q_0..Q_{n_max} at ξ by the value recurrence, shape (n_max + 1,) + ξ.shape"""
    _check_degree(n_max)
    xi = np.asarray(xi, dtype=float)
    values = np.empty((n_max + 1,) + xi.shape)
    values[0] = 1.0
    if n_max >= 1:
        values[1] = 2 * xi - 1.0 / 3.0
    for k in range(1, n_max):
        values[k + 1] = 2 * xi * values[k] - values[k - 1]
    return values


def cheb_weight(xi) -> np.ndarray:
    """w(ξ) = (9/π)·√(1−ξ²)/(5−3ξ), zero outside [−1, 1]"""
    xi = np.asarray(xi, dtype=float)
    return 9.0 / np.pi * np.sqrt(np.clip(1.0 - xi ** 2, 0.0, None)) / (5.0 - 3.0 * xi)


def q_gram(n_max: int, nodes: Optional[int] = None) -> np.ndarray:
    """
    ⟨Q_m, Q_n⟩_w for m, n ≤ n_max by Gauss quadrature for the weight √(1−ξ²)

    The remaining factor (9/π)/(5−3ξ) is analytic on [−1, 1], so the rule
    converges geometrically in the node count.
    """
    nodes = nodes or 2 * n_max + 64
    xi, weights = roots_chebyu(nodes)
    values = q_values(n_max, xi)
    weighted = values * (weights * 9.0 / (np.pi * (5.0 - 3.0 * xi)))
    return weighted @ values.T


def q_orthonormality_residual(n_max: int, nodes: Optional[int] = None) -> float:
    gram = q_gram(n_max, nodes)
    residual = float(np.max(np.abs(gram - np.eye(n_max + 1))))
    logger.debug(f"Q_n orthonormality up to n={n_max}: {residual:.3e}")
    return residual
