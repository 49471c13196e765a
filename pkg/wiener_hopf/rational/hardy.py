import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np

from ..config import EPS_REAL
from ..polycore import split_roots
from ..utils.exceptions import ValidationError
from .calculus import RationalFunction

logger = logging.getLogger(__name__)

PLUS = 'plus'
MINUS = 'minus'


@dataclass
class HardyMembership:
    """Result of checking f ∈ H₊ or f ∈ H₋"""
    side: str
    analytic: bool
    residual: float
    warnings: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.analytic


def _sample_count(grid) -> int:
    n = int(getattr(grid, 'n', grid))
    if n < 8:
        raise ValidationError(f"Hardy membership needs at least 8 samples, got {n}")
    return n


def wrong_side_energy(f: RationalFunction, side: str, n: int) -> float:
    """
    Fraction of the energy of f on the wrong Hardy side

    x = i(1+z)/(1−z) maps the unit circle onto the line and carries
    f to g(z) = f(x)/(1−z), an isometry up to a constant. H₊ becomes the
    Fourier modes k >= 0 and H₋ the modes k <= −1. Samples sit at
    θ_k = 2π(k+½)/n so z = 1 is never hit.
    """
    theta = 2 * np.pi * (np.arange(n) + 0.5) / n
    z = np.exp(1j * theta)
    x = 1j * (1 + z) / (1 - z)
    g = f.evaluate(x.real) / (1 - z)
    modes = np.fft.fft(g) / n
    energy = np.abs(modes) ** 2
    total = float(np.sum(energy))
    if total == 0.0:
        return 0.0
    negative = float(np.sum(energy[n // 2:]))
    wrong = negative if side == PLUS else total - negative
    return wrong / total


def validate_hardy_membership(f: RationalFunction, side: str, grid=4096,
                              eps_real: float = EPS_REAL) -> HardyMembership:
    """
    Check a rational function against H₊ (side='plus') or H₋ (side='minus')

    The analytic check requires deg numerator < deg denominator and all
    poles strictly in the lower (plus) or upper (minus) half-plane. The
    residual is the numerical wrong-side energy fraction.

    Args:
        f: Square-integrable rational function
        side: 'plus' or 'minus'
        grid: Grid object or sample count used for the numerical check

    Returns:
        HardyMembership
    """
    if side not in (PLUS, MINUS):
        raise ValidationError(f"side must be '{PLUS}' or '{MINUS}', got '{side}'")
    f = f.reduced()
    if f.numerator.is_zero:
        return HardyMembership(side, True, 0.0)
    if f.numerator.degree >= f.denominator.degree:
        raise ValidationError(f"{f.to_text()} is not square-integrable (degree does not drop)")

    split = split_roots(f.denominator, eps_real)
    if split.deg_real > 0:
        raise ValidationError(f"{f.to_text()} has real poles and is not square-integrable")

    analytic = split.deg_upper == 0 if side == PLUS else split.deg_lower == 0
    residual = wrong_side_energy(f, side, _sample_count(grid))
    result = HardyMembership(side, analytic, residual, list(split.warnings))
    if analytic and residual > 1e-4:
        message = f"{f.to_text()} passes the pole test for H_{side} but carries wrong-side energy {residual:.2e}"
        logger.warning(message)
        result.warnings.append(message)
    return result
