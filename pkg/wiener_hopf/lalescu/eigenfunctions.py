"""
Generalized eigenfunctions of the Lalescu operator K f(x) = ∫_0^∞ e^{−|x−y|}f(y) dy

For every s in (0, 2), q_s(x) = n(s)·((τ−i)e^{iτx} + (τ+i)e^{−iτx}) with
τ = (2/s − 1)^{1/2} and n(s) = (4πsτ)^{−1/2} solves K q_s = s·q_s on ℝ₊.
"""
import logging
from dataclasses import dataclass

import numpy as np

from ..utils.exceptions import ValidationError

logger = logging.getLogger(__name__)

# |q_s| ≤ (s(2−s))^{−1/2} holds exactly when τ ≤ π/2
BOUND_MIN_S = 2.0 / (1.0 + np.pi ** 2 / 4)


@dataclass(frozen=True)
class EigenParams:
    s: float
    tau: float
    norm: float

    @classmethod
    def from_s(cls, s: float) -> 'EigenParams':
        if not 0 < s < 2:
            raise ValidationError(f"Spectral parameter s must lie in (0, 2), got {s}")
        tau = float(np.sqrt(2.0 / s - 1.0))
        return cls(float(s), tau, float((4 * np.pi * s * tau) ** -0.5))


def _check_half_line(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValidationError("Eigenfunctions are evaluated on x ≥ 0")
    return x


def eigfun_q(s: float, x, norm_scale: float = 1.0):
    """q_s(x) = 2n(s)·(τ cos τx + sin τx), real-valued"""
    p = EigenParams.from_s(s)
    x = _check_half_line(x)
    values = 2 * norm_scale * p.norm * (p.tau * np.cos(p.tau * x) + np.sin(p.tau * x))
    return float(values) if values.ndim == 0 else values


def eigfun_q_grid(s: np.ndarray, x: np.ndarray, norm_scale: float = 1.0) -> np.ndarray:
    """q(s, x) on the outer product of s and x nodes, shape (len(s), len(x))"""
    s = np.asarray(s, dtype=float)
    if np.any((s <= 0) | (s >= 2)):
        raise ValidationError("Spectral parameter s must lie in (0, 2)")
    x = _check_half_line(x)
    tau = np.sqrt(2.0 / s - 1.0)[:, None]
    norm = (4 * np.pi * s[:, None] * tau) ** -0.5
    phase = tau * x[None, :]
    return 2 * norm_scale * norm * (tau * np.cos(phase) + np.sin(phase))


def _exponential_response(omega: float, x: np.ndarray) -> np.ndarray:
    """∫_0^∞ e^{−|x−y|}e^{iωy} dy = 2e^{iωx}/(1+ω²) − e^{−x}/(1+iω)"""
    return 2 * np.exp(1j * omega * x) / (1 + omega ** 2) - np.exp(-x) / (1 + 1j * omega)


def eigen_residual(s: float, x):
    """|s·q_s(x) − K q_s(x)| with K q_s integrated in closed form"""
    p = EigenParams.from_s(s)
    x = _check_half_line(x)
    applied = p.norm * ((p.tau - 1j) * _exponential_response(p.tau, x)
                        + (p.tau + 1j) * _exponential_response(-p.tau, x))
    residual = np.abs(s * eigfun_q(s, x) - applied)
    return float(residual) if residual.ndim == 0 else residual


def q_bound(s: float) -> float:
    """(s(2−s))^{−1/2}; a bound for |q_s| when s ≥ BOUND_MIN_S"""
    if not 0 < s < 2:
        raise ValidationError(f"Spectral parameter s must lie in (0, 2), got {s}")
    return float((s * (2 - s)) ** -0.5)


def q_sup(s: float) -> float:
    """sup_x |q_s(x)| = 2n(s)·(1+τ²)^{1/2}"""
    p = EigenParams.from_s(s)
    return float(2 * p.norm * np.sqrt(1 + p.tau ** 2))
